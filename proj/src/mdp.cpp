#include "rtcode/mdp.hpp"

#include <cmath>
#include <limits>

#include "rtcode/errors.hpp"

namespace rtcode {

std::vector<AugmentedState> state_space(int n) {
  if (n < 2) throw ValidationError("state space needs N >= 2");
  std::vector<AugmentedState> states;
  states.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int sym = 1; sym <= n; ++sym)
    for (int len = 1; len <= n - 1; ++len) states.push_back({sym, len});
  return states;
}

PowerCache::PowerCache(const TransitionMatrix& p) : n_(p.n()) {
  powers_.reserve(static_cast<std::size_t>(n_ - 1));
  powers_.push_back(p.matrix());
  for (int l = 2; l <= n_ - 1; ++l)
    powers_.push_back(powers_.back() * p.matrix());
}

namespace {

// c(s,u) + sum_{s'} T(s,s',u) V_{s'}, with V empty meaning V == 0
double action_value(const PowerCache& cache, const AugmentedState& s,
                    const CompleteCode& u, const std::vector<double>& values) {
  const int n = cache.n();
  const auto row = cache.power(s.in_flight_len).row(s.symbol - 1);
  double total = 0.0;
  for (int next = 0; next < n; ++next) {
    const int len = u[next];
    double v = len;  // immediate cost
    if (!values.empty())
      v += values[state_index({next + 1, len}, n)];
    total += row[next] * v;
  }
  return total;
}

CodingPolicy improve_with_cache(const PowerCache& cache,
                                const std::vector<double>& values) {
  const int n = cache.n();
  const auto& actions = enumerate_complete_codes(n);
  CodingPolicy phi{n, {}};
  phi.actions.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (const auto& s : state_space(n)) {
    double best = std::numeric_limits<double>::infinity();
    const CompleteCode* best_u = nullptr;
    for (const auto& u : actions) {
      const double v = action_value(cache, s, u, values);
      // strict < keeps the first (lexicographically smallest) minimizer
      if (v < best) {
        best = v;
        best_u = &u;
      }
    }
    phi.actions.push_back(*best_u);
  }
  return phi;
}

ValueSolution determine_values(const PowerCache& cache, const CodingPolicy& phi) {
  const int n = cache.n();
  const int ns = n * (n - 1);
  // unknowns: V_0..V_{ns-1}, eta; equations: ns optimality rows + V_{s0} = 0
  Matrix a(ns + 1);
  std::vector<double> b(static_cast<std::size_t>(ns) + 1, 0.0);
  const auto states = state_space(n);
  for (int i = 0; i < ns; ++i) {
    const auto& s = states[i];
    const auto& u = phi.actions[i];
    const auto row = cache.power(s.in_flight_len).row(s.symbol - 1);
    a(i, i) += 1.0;
    a(i, ns) = 1.0;  // eta
    double cost = 0.0;
    for (int next = 0; next < n; ++next) {
      cost += row[next] * u[next];
      a(i, state_index({next + 1, u[next]}, n)) -= row[next];
    }
    b[i] = cost;
  }
  a(ns, 0) = 1.0;  // V at (1,1) pinned to 0
  std::vector<double> x;
  try {
    x = solve_dense(std::move(a), std::move(b));
  } catch (const SolverError&) {
    throw SolverError("value determination system is singular (multichain policy)");
  }
  ValueSolution sol;
  sol.eta = x[ns];
  sol.values.assign(x.begin(), x.begin() + ns);
  return sol;
}

double residual_with_cache(const PowerCache& cache, double eta,
                           const std::vector<double>& values) {
  const int n = cache.n();
  const auto& actions = enumerate_complete_codes(n);
  double worst = 0.0;
  for (const auto& s : state_space(n)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : actions)
      best = std::min(best, action_value(cache, s, u, values));
    worst = std::max(worst,
                     std::abs(values[state_index(s, n)] + eta - best));
  }
  return worst;
}

}  // namespace

std::vector<std::pair<AugmentedState, double>> transition_kernel(
    const TransitionMatrix& p, const AugmentedState& s, const CompleteCode& u) {
  const PowerCache cache(p);
  const auto row = cache.power(s.in_flight_len).row(s.symbol - 1);
  std::vector<std::pair<AugmentedState, double>> out;
  out.reserve(static_cast<std::size_t>(p.n()));
  for (int next = 0; next < p.n(); ++next)
    out.push_back({{next + 1, u[next]}, row[next]});
  return out;
}

double expected_cost(const TransitionMatrix& p, const AugmentedState& s,
                     const CompleteCode& u) {
  return action_value(PowerCache(p), s, u, {});
}

Matrix policy_transition_matrix(const TransitionMatrix& p, const CodingPolicy& phi) {
  const int n = p.n();
  const int ns = n * (n - 1);
  const PowerCache cache(p);
  Matrix t(ns);
  const auto states = state_space(n);
  for (int i = 0; i < ns; ++i) {
    const auto& s = states[i];
    const auto& u = phi.actions[i];
    const auto row = cache.power(s.in_flight_len).row(s.symbol - 1);
    for (int next = 0; next < n; ++next)
      t(i, state_index({next + 1, u[next]}, n)) += row[next];
  }
  return t;
}

std::vector<double> stationary_distribution(const Matrix& policy_matrix) {
  return stationary_of(policy_matrix);
}

double long_run_average(const TransitionMatrix& p, const CodingPolicy& phi) {
  const auto pi = stationary_distribution(policy_transition_matrix(p, phi));
  const PowerCache cache(p);
  const auto states = state_space(p.n());
  double eta = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    eta += pi[i] * action_value(cache, states[i], phi.actions[i], {});
  return eta;
}

ValueSolution value_determination(const TransitionMatrix& p, const CodingPolicy& phi) {
  return determine_values(PowerCache(p), phi);
}

CodingPolicy policy_improvement(const TransitionMatrix& p,
                                const std::vector<double>& values) {
  return improve_with_cache(PowerCache(p), values);
}

double bellman_residual(const TransitionMatrix& p, double eta,
                        const std::vector<double>& values) {
  return residual_with_cache(PowerCache(p), eta, values);
}

SolveReport policy_iteration(const TransitionMatrix& p, const CodingPolicy& phi0,
                             double eta_tolerance, int max_iterations) {
  p.require_ergodic();
  const PowerCache cache(p);

  SolveReport report;
  CodingPolicy phi = phi0;
  double prev_eta = std::numeric_limits<double>::quiet_NaN();
  ValueSolution sol;
  report.converged = false;
  for (int d = 1; d <= max_iterations; ++d) {
    sol = determine_values(cache, phi);
    report.eta_trace.push_back(sol.eta);
    report.iterations = d;

    CodingPolicy improved = improve_with_cache(cache, sol.values);
    if (improved == phi) {
      report.converged = true;  // exact fixed point of the optimality equation
      break;
    }
    if (!std::isnan(prev_eta) && std::abs(sol.eta - prev_eta) <= eta_tolerance &&
        residual_with_cache(cache, sol.eta, sol.values) <= 1e-8) {
      report.converged = true;
      break;
    }
    if (d == max_iterations) break;  // report the evaluated policy, flagged
    prev_eta = sol.eta;
    phi = std::move(improved);
  }
  report.policy = std::move(phi);
  report.eta = sol.eta;
  report.values = std::move(sol.values);
  report.stationary = stationary_distribution(policy_transition_matrix(p, report.policy));
  return report;
}

}  // namespace rtcode
