#include "rtcode/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "rtcode/errors.hpp"

namespace rtcode {

namespace {

std::vector<std::vector<int>> support_graph(const Matrix& p) {
  const int n = p.n();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p(i, j) > 0.0) adj[i].push_back(j);
  return adj;
}

std::vector<int> bfs_levels(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> level(adj.size(), -1);
  std::queue<int> q;
  level[start] = 0;
  q.push(start);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  return level;
}

bool is_ergodic(const Matrix& p) {
  const int n = p.n();
  const auto adj = support_graph(p);
  std::vector<std::vector<int>> radj(n);
  for (int u = 0; u < n; ++u)
    for (int v : adj[u]) radj[v].push_back(u);

  const auto fwd = bfs_levels(adj, 0);
  const auto bwd = bfs_levels(radj, 0);
  for (int i = 0; i < n; ++i)
    if (fwd[i] < 0 || bwd[i] < 0) return false;  // reducible

  // period = gcd over edges of level(u) + 1 - level(v), valid on a
  // strongly connected graph
  int g = 0;
  for (int u = 0; u < n; ++u)
    for (int v : adj[u]) g = std::gcd(g, std::abs(fwd[u] + 1 - fwd[v]));
  return g == 1;
}

}  // namespace

TransitionMatrix TransitionMatrix::validate(const Matrix& p) {
  const int n = p.n();
  if (n < 2) throw ValidationError("transition matrix needs N >= 2");
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (p(i, j) < 0.0)
        throw ValidationError("negative transition probability at row " +
                              std::to_string(i + 1));
      sum += p(i, j);
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("row " + std::to_string(i + 1) +
                            " sums to " + std::to_string(sum));
  }
  const bool erg = is_ergodic(p);
  if (!erg) throw NonErgodicError("chain is not ergodic (reducible or periodic)");
  return TransitionMatrix(p, true);
}

TransitionMatrix TransitionMatrix::trusted(Matrix p) {
  const int n = p.n();
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (p(i, j) < 0.0) p(i, j) = 0.0;
      sum += p(i, j);
    }
    for (int j = 0; j < n; ++j) p(i, j) /= sum;
  }
  const bool erg = is_ergodic(p);
  return TransitionMatrix(std::move(p), erg);
}

void TransitionMatrix::require_ergodic() const {
  if (!ergodic_) throw NonErgodicError("chain is not ergodic (reducible or periodic)");
}

GeneratorMatrix::GeneratorMatrix(Matrix q) : q_(std::move(q)) {
  exit_rates_.resize(q_.n());
  for (int i = 0; i < q_.n(); ++i) exit_rates_[i] = -q_(i, i);
}

GeneratorMatrix GeneratorMatrix::validate(const Matrix& q) {
  const int n = q.n();
  if (n < 2) throw ValidationError("generator matrix needs N >= 2");
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i != j && q(i, j) < 0.0)
        throw ValidationError("negative off-diagonal rate at row " +
                              std::to_string(i + 1));
      sum += q(i, j);
    }
    if (std::abs(sum) > 1e-9)
      throw ValidationError("generator row " + std::to_string(i + 1) +
                            " does not sum to 0");
  }
  return GeneratorMatrix(q);
}

Matrix matrix_power(const TransitionMatrix& p, int exponent) {
  if (exponent < 1) throw ValidationError("matrix power requires exponent >= 1");
  Matrix base = p.matrix();
  Matrix result = Matrix::identity(p.n());
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<double> stationary_of(const Matrix& t) {
  const int n = t.n();
  // pi (T + 11^T - I) = 1^T  =>  (T + 11^T - I)^T x = 1
  Matrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = t(j, i) + 1.0 - (i == j ? 1.0 : 0.0);
  std::vector<double> pi;
  try {
    pi = solve_dense(std::move(a), std::vector<double>(n, 1.0));
  } catch (const SolverError&) {
    throw SolverError("stationary distribution solve is singular (multichain policy)");
  }
  double sum = 0.0;
  for (double& v : pi) {
    if (v < 0.0) {
      if (v < -1e-9) throw SolverError("stationary distribution has negative mass");
      v = 0.0;
    }
    sum += v;
  }
  for (double& v : pi) v /= sum;
  return pi;
}

std::vector<double> steady_state(const TransitionMatrix& p) {
  p.require_ergodic();
  return stationary_of(p.matrix());
}

TransitionMatrix homogeneous_matrix(int n, double alpha) {
  if (n < 2) throw ValidationError("homogeneous matrix needs N >= 2");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must be in (0, 1)");
  Matrix p(n, (1.0 - alpha) / (n - 1));
  for (int i = 0; i < n; ++i) p(i, i) = alpha;
  return TransitionMatrix::trusted(std::move(p));
}

TransitionMatrix random_matrix(int n, Rng& rng) {
  if (n < 2) throw ValidationError("random matrix needs N >= 2");
  Matrix p(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    while (sum < 1e-12) {
      sum = 0.0;
      for (int j = 0; j < n; ++j) {
        p(i, j) = rng.uniform();
        sum += p(i, j);
      }
    }
    for (int j = 0; j < n; ++j) p(i, j) /= sum;
  }
  return TransitionMatrix::trusted(std::move(p));
}

TransitionMatrix blend(const TransitionMatrix& h, const TransitionMatrix& r, double beta) {
  if (h.n() != r.n()) throw ValidationError("blend: dimension mismatch");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw ValidationError("beta must be in [0, 1]");
  if (beta == 0.0) return h;
  if (beta == 1.0) return r;
  Matrix p(h.n());
  for (int i = 0; i < h.n(); ++i)
    for (int j = 0; j < h.n(); ++j)
      p(i, j) = (1.0 - beta) * h(i, j) + beta * r(i, j);
  return TransitionMatrix::trusted(std::move(p));
}

Matrix matrix_exponential(const Matrix& a) {
  const int n = a.n();
  int squarings = 0;
  double scale = norm_inf(a);
  while (scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix b = (1.0 / std::ldexp(1.0, squarings)) * a;

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = (1.0 / k) * (term * b);
    result = result + term;
    if (norm_inf(term) < 1e-16) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

TransitionMatrix ctmc_to_dtmc(const GeneratorMatrix& q, double seconds_per_bit) {
  if (!(seconds_per_bit > 0.0)) throw ValidationError("slot duration must be positive");
  Matrix p = matrix_exponential(seconds_per_bit * q.matrix());
  for (int i = 0; i < p.n(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < p.n(); ++j) {
      if (p(i, j) < -1e-9)
        throw SolverError("matrix exponential series did not converge");
      sum += p(i, j);
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw SolverError("matrix exponential series did not converge");
  }
  return TransitionMatrix::trusted(std::move(p));
}

TransitionMatrix reference_random_matrix() {
  Matrix r(4);
  const double rows[4][4] = {{0.1426, 0.4996, 0.0409, 0.3169},
                             {0.3542, 0.5398, 0.0858, 0.0202},
                             {0.1732, 0.3522, 0.0946, 0.3800},
                             {0.1124, 0.3401, 0.2936, 0.2540}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = rows[i][j];
  return TransitionMatrix::trusted(std::move(r));
}

}  // namespace rtcode
