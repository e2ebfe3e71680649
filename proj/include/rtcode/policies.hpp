#pragma once

#include <optional>
#include <string>

#include "rtcode/mdp.hpp"

namespace rtcode {

enum class PolicyKind { myopic, steady_state, optimal };

const char* policy_kind_name(PolicyKind kind);

/// Huffman code on row n of P^l at every state (n, l).
CodingPolicy myopic_policy(const TransitionMatrix& p);

/// One static Huffman code built from the symbol chain's stationary
/// distribution, used at every state.
CodingPolicy steady_state_policy(const TransitionMatrix& p);

/// Report or a per-kind error message; solve_all never lets one policy's
/// failure abort the others.
struct PolicyOutcome {
  std::optional<SolveReport> report;
  std::string error;

  bool ok() const { return report.has_value(); }
};

struct SolveAllResult {
  PolicyOutcome myopic;
  PolicyOutcome steady_state;
  PolicyOutcome optimal;

  const PolicyOutcome& operator[](PolicyKind kind) const;
};

/// Evaluates both benchmarks analytically and runs policy iteration seeded
/// with the myopic policy.
SolveAllResult solve_all(const TransitionMatrix& p,
                         double eta_tolerance = kDefaultEtaTolerance,
                         int max_iterations = kDefaultMaxIterations);

}  // namespace rtcode
