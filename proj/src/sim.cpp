#include "rtcode/sim.hpp"

#include "rtcode/errors.hpp"

namespace rtcode {

int sample_next(std::span<const double> row, Rng& rng) {
  const double x = rng.uniform();
  double cum = 0.0;
  const int n = static_cast<int>(row.size());
  for (int i = 0; i < n - 1; ++i) {
    cum += row[i];
    if (x < cum) return i;
  }
  return n - 1;
}

SimResult simulate(const TransitionMatrix& p, const CodingPolicy& phi,
                   std::uint64_t n_transmissions, std::uint64_t seed) {
  p.require_ergodic();
  if (n_transmissions < 1) throw ValidationError("need at least 1 transmission");
  const int n = p.n();
  const int ns = n * (n - 1);
  const PowerCache cache(p);

  // per-state cumulative row of P^l and the codeword lengths in play
  std::vector<std::vector<double>> cdf(static_cast<std::size_t>(ns));
  const auto states = state_space(n);
  for (int i = 0; i < ns; ++i) {
    const auto row = cache.power(states[i].in_flight_len).row(states[i].symbol - 1);
    auto& c = cdf[i];
    c.resize(static_cast<std::size_t>(n));
    double cum = 0.0;
    for (int j = 0; j < n; ++j) {
      cum += row[j];
      c[j] = cum;
    }
  }

  SimResult result;
  result.seed = seed;
  result.per_state_visit_counts.assign(static_cast<std::size_t>(ns), 0);
  Rng rng(seed);

  int state = state_index({1, 1}, n);
  for (std::uint64_t t = 0; t < n_transmissions; ++t) {
    ++result.per_state_visit_counts[state];
    const auto& c = cdf[state];
    const double x = rng.uniform();
    int next = n - 1;
    for (int j = 0; j < n - 1; ++j)
      if (x < c[j]) {
        next = j;
        break;
      }
    const int len = phi.actions[state][next];
    result.total_slots += static_cast<std::uint64_t>(len);
    state = state_index({next + 1, len}, n);
  }
  result.transmissions = n_transmissions;
  result.empirical_average =
      static_cast<double>(result.total_slots) / static_cast<double>(n_transmissions);
  return result;
}

}  // namespace rtcode
