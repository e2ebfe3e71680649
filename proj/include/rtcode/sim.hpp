#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rtcode/mdp.hpp"
#include "rtcode/rng.hpp"

namespace rtcode {

struct SimResult {
  std::uint64_t transmissions = 0;
  std::uint64_t total_slots = 0;
  double empirical_average = 0.0;  // total_slots / transmissions
  std::vector<std::uint64_t> per_state_visit_counts;  // state_space order
  std::uint64_t seed = 0;
};

/// Inverse-CDF draw: returns a 0-based symbol index with probability
/// row[index]. The last bucket absorbs residual float mass.
int sample_next(std::span<const double> row, Rng& rng);

/// Simulates the embedded transmission process from state (1,1): at state
/// (n,l) the next symbol is drawn from row n of P^l, charged phi(s)[n'] slots,
/// and the chain moves to (n', phi(s)[n']). Deterministic per seed.
SimResult simulate(const TransitionMatrix& p, const CodingPolicy& phi,
                   std::uint64_t n_transmissions, std::uint64_t seed);

}  // namespace rtcode
