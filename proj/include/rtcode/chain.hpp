#pragma once

#include <vector>

#include "rtcode/linalg.hpp"
#include "rtcode/rng.hpp"

namespace rtcode {

/// Row-stochastic transition matrix of a DTMC over symbols 1..N.
/// Ergodicity (irreducible + aperiodic on the support graph) is determined
/// at construction; solvers refuse non-ergodic chains.
class TransitionMatrix {
 public:
  /// Validates user input: entries >= 0, row sums within 1e-9 of 1.
  /// Throws ValidationError on violations, NonErgodicError when the chain
  /// is reducible or periodic.
  static TransitionMatrix validate(const Matrix& p);

  /// For matrices the library itself generated: clamps tiny negatives,
  /// renormalizes rows, keeps the ergodicity flag but does not throw on it.
  static TransitionMatrix trusted(Matrix p);

  int n() const { return p_.n(); }
  const Matrix& matrix() const { return p_; }
  double operator()(int i, int j) const { return p_(i, j); }
  std::span<const double> row(int i) const { return p_.row(i); }
  bool ergodic() const { return ergodic_; }

  /// Throws NonErgodicError unless ergodic(). Solver entry points call this.
  void require_ergodic() const;

 private:
  TransitionMatrix(Matrix p, bool ergodic) : p_(std::move(p)), ergodic_(ergodic) {}

  Matrix p_;
  bool ergodic_ = false;
};

/// CTMC generator: non-negative off-diagonal rates, zero row sums.
class GeneratorMatrix {
 public:
  static GeneratorMatrix validate(const Matrix& q);

  int n() const { return q_.n(); }
  const Matrix& matrix() const { return q_; }
  const std::vector<double>& exit_rates() const { return exit_rates_; }

 private:
  explicit GeneratorMatrix(Matrix q);

  Matrix q_;
  std::vector<double> exit_rates_;
};

/// P^l by repeated squaring, l >= 1.
Matrix matrix_power(const TransitionMatrix& p, int exponent);

/// Stationary distribution pi with pi P = pi, sum pi = 1, via the dense
/// solve of pi (P + 11^T - I) = 1^T. Requires an ergodic chain.
std::vector<double> steady_state(const TransitionMatrix& p);

/// Same linear solve on an arbitrary row-stochastic matrix (used for the
/// policy chain over augmented states, which may have transient states).
/// Entries clamped at zero; throws SolverError when the system is singular.
std::vector<double> stationary_of(const Matrix& t);

/// Diagonal alpha, off-diagonal (1-alpha)/(N-1). alpha in (0,1).
TransitionMatrix homogeneous_matrix(int n, double alpha);

/// Rows of iid U(0,1) entries, each row divided by its sum.
TransitionMatrix random_matrix(int n, Rng& rng);

/// Entrywise (1-beta) h + beta r, beta in [0,1].
TransitionMatrix blend(const TransitionMatrix& h, const TransitionMatrix& r, double beta);

/// Per-slot DTMC of the CTMC: matrix exponential of Q*d by scaling and
/// squaring with a truncated Taylor series. d > 0.
TransitionMatrix ctmc_to_dtmc(const GeneratorMatrix& q, double seconds_per_bit);

/// Matrix exponential (exposed for the semigroup checks).
Matrix matrix_exponential(const Matrix& a);

/// The fixed 4x4 random realization used by the beta-sweep experiment.
TransitionMatrix reference_random_matrix();

}  // namespace rtcode
