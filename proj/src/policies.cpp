#include "rtcode/policies.hpp"

#include "rtcode/errors.hpp"

namespace rtcode {

const char* policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::myopic: return "myopic";
    case PolicyKind::steady_state: return "steady_state";
    case PolicyKind::optimal: return "optimal";
  }
  return "?";
}

CodingPolicy myopic_policy(const TransitionMatrix& p) {
  p.require_ergodic();
  const int n = p.n();
  const PowerCache cache(p);
  CodingPolicy phi{n, {}};
  phi.actions.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (const auto& s : state_space(n))
    phi.actions.push_back(
        huffman_lengths(cache.power(s.in_flight_len).row(s.symbol - 1)));
  return phi;
}

CodingPolicy steady_state_policy(const TransitionMatrix& p) {
  p.require_ergodic();
  const int n = p.n();
  const CompleteCode code = huffman_lengths(steady_state(p));
  CodingPolicy phi{n, std::vector<CompleteCode>(
                          static_cast<std::size_t>(n) * (n - 1), code)};
  return phi;
}

const PolicyOutcome& SolveAllResult::operator[](PolicyKind kind) const {
  switch (kind) {
    case PolicyKind::myopic: return myopic;
    case PolicyKind::steady_state: return steady_state;
    case PolicyKind::optimal: return optimal;
  }
  return optimal;
}

namespace {

// analytic evaluation of a fixed policy, packaged as a SolveReport
PolicyOutcome evaluate_fixed(const TransitionMatrix& p, CodingPolicy phi) {
  PolicyOutcome out;
  try {
    SolveReport report;
    const auto sol = value_determination(p, phi);
    report.eta = sol.eta;
    report.values = sol.values;
    report.stationary = stationary_distribution(policy_transition_matrix(p, phi));
    report.eta_trace = {sol.eta};
    report.iterations = 0;
    report.policy = std::move(phi);
    out.report = std::move(report);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

SolveAllResult solve_all(const TransitionMatrix& p, double eta_tolerance,
                         int max_iterations) {
  p.require_ergodic();
  if (p.n() > kMaxAlphabet)
    throw UnsupportedAlphabetError("alphabet size must be in [2, 8]");

  SolveAllResult result;
  std::optional<CodingPolicy> myopic;
  try {
    myopic = myopic_policy(p);
    result.myopic = evaluate_fixed(p, *myopic);
  } catch (const std::exception& e) {
    result.myopic.error = e.what();
  }
  try {
    result.steady_state = evaluate_fixed(p, steady_state_policy(p));
  } catch (const std::exception& e) {
    result.steady_state.error = e.what();
  }
  try {
    if (!myopic) myopic = myopic_policy(p);
    result.optimal.report =
        policy_iteration(p, *myopic, eta_tolerance, max_iterations);
  } catch (const std::exception& e) {
    result.optimal.error = e.what();
  }
  return result;
}

}  // namespace rtcode
