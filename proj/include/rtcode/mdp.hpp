#pragma once

#include <utility>
#include <vector>

#include "rtcode/chain.hpp"
#include "rtcode/codebook.hpp"

namespace rtcode {

/// MDP state: last transmitted symbol (1..N) and the number of slots its
/// codeword occupied (1..N-1).
struct AugmentedState {
  int symbol;         // 1-based
  int in_flight_len;  // 1..N-1

  auto operator<=>(const AugmentedState&) const = default;
};

/// Index of s in state_space(n): (symbol-1)*(N-1) + (len-1).
inline int state_index(const AugmentedState& s, int n) {
  return (s.symbol - 1) * (n - 1) + (s.in_flight_len - 1);
}

/// All N(N-1) augmented states in index order.
std::vector<AugmentedState> state_space(int n);

/// Total map from augmented states (in state_space order) to complete codes.
struct CodingPolicy {
  int n_symbols = 0;
  std::vector<CompleteCode> actions;

  const CompleteCode& at(const AugmentedState& s) const {
    return actions[state_index(s, n_symbols)];
  }

  bool operator==(const CodingPolicy&) const = default;
};

struct SolveReport {
  CodingPolicy policy;
  double eta = 0.0;                  // long-run average slots per transmission
  std::vector<double> values;        // relative values, V at (1,1) fixed to 0
  std::vector<double> stationary;    // over state_space order
  int iterations = 0;
  std::vector<double> eta_trace;
  bool converged = true;             // false when the iteration cap was hit
};

/// P^l for l = 1..N-1, built once per solve and shared by kernel and cost.
class PowerCache {
 public:
  explicit PowerCache(const TransitionMatrix& p);

  int n() const { return n_; }
  const Matrix& power(int l) const { return powers_[l - 1]; }

 private:
  int n_;
  std::vector<Matrix> powers_;
};

/// Distribution of the next augmented state from s under action u:
/// next symbol n' with probability (P^l)[n][n'], landing in (n', u[n']).
/// Exactly N entries, one per next symbol.
std::vector<std::pair<AugmentedState, double>> transition_kernel(
    const TransitionMatrix& p, const AugmentedState& s, const CompleteCode& u);

/// Expected slots of the next transmission: sum (P^l)[n][n'] * u[n'].
double expected_cost(const TransitionMatrix& p, const AugmentedState& s,
                     const CompleteCode& u);

/// |S| x |S| row-stochastic matrix of the chain induced by the policy.
Matrix policy_transition_matrix(const TransitionMatrix& p, const CodingPolicy& phi);

/// Stationary distribution of a policy chain; throws SolverError for a
/// multichain (singular) policy.
std::vector<double> stationary_distribution(const Matrix& policy_matrix);

/// Stationary-weighted expected cost of the policy.
double long_run_average(const TransitionMatrix& p, const CodingPolicy& phi);

struct ValueSolution {
  double eta = 0.0;
  std::vector<double> values;
};

/// Solves V_s = c(s, phi(s)) - eta + sum T V with V at (1,1) pinned to 0.
ValueSolution value_determination(const TransitionMatrix& p, const CodingPolicy& phi);

/// Greedy one-step improvement against the given values; exhaustive scan of
/// the action space, ties broken toward the lexicographically smallest code.
CodingPolicy policy_improvement(const TransitionMatrix& p, const std::vector<double>& values);

inline constexpr double kDefaultEtaTolerance = 1e-4;
inline constexpr int kDefaultMaxIterations = 30;

/// Policy iteration from phi0. Stops at an exact policy fixed point, or when
/// the average cost moved less than eta_tolerance and the Bellman residual is
/// already small, or at max_iterations (reported as converged = false).
SolveReport policy_iteration(const TransitionMatrix& p, const CodingPolicy& phi0,
                             double eta_tolerance = kDefaultEtaTolerance,
                             int max_iterations = kDefaultMaxIterations);

/// Largest |V_s + eta - min_u {c(s,u) + sum T V}| over states.
double bellman_residual(const TransitionMatrix& p, double eta,
                        const std::vector<double>& values);

}  // namespace rtcode
