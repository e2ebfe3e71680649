// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rtcode/chain.hpp"
#include "rtcode/codebook.hpp"
#include "rtcode/mdp.hpp"
#include "rtcode/policies.hpp"
#include "rtcode/sim.hpp"

using namespace rtcode;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

Outcome criterion_counts() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<std::size_t> expected{3, 13, 75, 525, 4347, 41245};
  for (int n = 3; n <= 8; ++n) {
    const auto size = enumerate_complete_codes(n).size();
    require(o, size == expected[static_cast<std::size_t>(n - 3)],
            "N=" + std::to_string(n) + " count " + std::to_string(size));
  }
  const double elapsed = seconds_since(start);
  require(o, elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s");
  o.detail = o.pass ? "sizes 3,13,75,525,4347,41245" : o.detail;
  return o;
}

Outcome criterion_depth_bound() {
  Outcome o;
  for (int n = 2; n <= 8; ++n) {
    bool attained = false;
    for (const auto& code : enumerate_complete_codes(n)) {
      require(o, is_complete(code.lengths), "Kraft violation at N=" + std::to_string(n));
      int max_len = 0;
      for (int l : code.lengths) max_len = std::max(max_len, l);
      require(o, max_len <= n - 1, "depth bound violated at N=" + std::to_string(n));
      if (max_len == n - 1) attained = true;
    }
    if (n >= 3)
      require(o, attained, "no depth-(N-1) code at N=" + std::to_string(n));
  }
  return o;
}

TransitionMatrix three_state_chain() {
  Matrix p(3);
  const double rows[3][3] = {{0.70, 0.25, 0.05}, {0.05, 0.90, 0.05}, {0.10, 0.30, 0.60}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) = rows[i][j];
  return TransitionMatrix::validate(p);
}

Outcome criterion_worked_example() {
  Outcome o;
  const auto p = three_state_chain();
  const auto p2 = matrix_power(p, 2);
  const double expected_row[3] = {0.5075, 0.4150, 0.0775};
  for (int j = 0; j < 3; ++j)
    require(o, std::abs(p2(0, j) - expected_row[j]) <= 1e-12, "P^2 row 1 mismatch");

  const auto dist = transition_kernel(p, {1, 2}, CompleteCode{{1, 2, 2}});
  require(o, dist.size() == 3, "kernel support size");
  const AugmentedState expect_states[3] = {{1, 1}, {2, 2}, {3, 2}};
  for (int j = 0; j < 3; ++j) {
    require(o, dist[static_cast<std::size_t>(j)].first == expect_states[j],
            "kernel state mismatch");
    require(o, dist[static_cast<std::size_t>(j)].second == p2(0, j),
            "kernel probability not taken from the row");
  }
  return o;
}

Outcome criterion_homogeneous_baseline() {
  Outcome o;
  const auto res4 = solve_all(homogeneous_matrix(4, 0.5));
  require(o, res4.steady_state.ok() && res4.myopic.ok() && res4.optimal.ok(),
          "N=4 solve failed");
  if (o.pass) {
    require(o, std::abs(res4.steady_state.report->eta - 2.0) <= 1e-9, "L_st != 2");
    require(o, std::abs(res4.myopic.report->eta - 2.0) <= 1e-9, "L_m != 2");
    require(o, std::abs(res4.optimal.report->eta - 2.0) <= 1e-9, "L_star != 2");
  }
  const auto res5 = solve_all(homogeneous_matrix(5, 0.5));
  require(o, res5.steady_state.ok() && res5.optimal.ok(), "N=5 solve failed");
  if (o.pass) {
    const double margin = res5.steady_state.report->eta - res5.optimal.report->eta;
    require(o, margin > 1e-6, "N=5 margin " + std::to_string(margin));
    std::ostringstream d;
    d << "N=4 all 2.0; N=5 L_st-L_star=" << margin;
    o.detail = d.str();
  }
  return o;
}

Outcome criterion_beta_sweep() {
  Outcome o;
  const auto start = Clock::now();
  const auto h = homogeneous_matrix(4, 0.5);
  const auto r0 = reference_random_matrix();
  const std::uint64_t transmissions = 1000000;
  for (int i = 0; i <= 10; ++i) {
    const double beta = 0.1 * i;
    const auto p = blend(h, r0, beta);
    const auto res = solve_all(p);
    require(o, res.steady_state.ok() && res.myopic.ok() && res.optimal.ok(),
            "solve failed at beta " + std::to_string(beta));
    if (!o.pass) break;
    const double l_st = res.steady_state.report->eta;
    const double l_m = res.myopic.report->eta;
    const double l_star = res.optimal.report->eta;
    require(o, l_star <= std::min(l_m, l_st) + 1e-9,
            "dominance violated at beta " + std::to_string(beta));
    const PolicyOutcome* outcomes[3] = {&res.steady_state, &res.myopic, &res.optimal};
    for (int k = 0; k < 3; ++k) {
      const auto sim = simulate(p, outcomes[k]->report->policy, transmissions,
                                derive_seed(0xB5, static_cast<std::uint64_t>(3 * i + k)));
      const double gap = std::abs(sim.empirical_average - outcomes[k]->report->eta);
      require(o, gap <= 5e-3,
              "sim gap " + std::to_string(gap) + " at beta " + std::to_string(beta));
    }
  }
  const double elapsed = seconds_since(start);
  require(o, elapsed < 300.0, "runtime " + std::to_string(elapsed) + "s");
  return o;
}

struct EnsembleStats {
  std::vector<double> l_st, l_m, l_star;
};

EnsembleStats run_ensemble(int n, int count, std::uint64_t master_seed) {
  EnsembleStats stats;
  std::uint64_t counter = 0;
  while (static_cast<int>(stats.l_star.size()) < count) {
    Rng rng(derive_seed(master_seed, counter++));
    const auto p = random_matrix(n, rng);
    if (!p.ergodic()) continue;
    const auto res = solve_all(p);
    stats.l_st.push_back(res.steady_state.report->eta);
    stats.l_m.push_back(res.myopic.report->eta);
    stats.l_star.push_back(res.optimal.report->eta);
  }
  return stats;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// shared between criteria 6 and 7
const EnsembleStats& ensemble_n4() {
  static const EnsembleStats stats = run_ensemble(4, 2000, 0xA4);
  return stats;
}

Outcome criterion_ensemble_table() {
  Outcome o;
  const auto start = Clock::now();
  const auto s3 = run_ensemble(3, 2000, 0xA3);
  const double e_st = mean(s3.l_st), e_m = mean(s3.l_m), e_star = mean(s3.l_star);
  require(o, std::abs(e_st - 1.5629) <= 0.02, "N=3 E[L_st] " + std::to_string(e_st));
  require(o, std::abs(e_m - 1.5152) <= 0.02, "N=3 E[L_m] " + std::to_string(e_m));
  require(o, std::abs(e_star - 1.5122) <= 0.02, "N=3 E[L_star] " + std::to_string(e_star));

  const auto& s4 = ensemble_n4();
  std::vector<double> gap_st, gap_m;
  for (std::size_t i = 0; i < s4.l_star.size(); ++i) {
    gap_st.push_back(s4.l_st[i] - s4.l_star[i]);
    gap_m.push_back(s4.l_m[i] - s4.l_star[i]);
  }
  const double e_gap_st = mean(gap_st), e_gap_m = mean(gap_m);
  require(o, std::abs(e_gap_st - 0.0361) <= 0.01,
          "N=4 E[L_st-L_star] " + std::to_string(e_gap_st));
  require(o, std::abs(e_gap_m - 0.0126) <= 0.01,
          "N=4 E[L_m-L_star] " + std::to_string(e_gap_m));
  const double elapsed = seconds_since(start);
  require(o, elapsed < 900.0, "runtime " + std::to_string(elapsed) + "s");
  if (o.pass) {
    std::ostringstream d;
    d << "N=3: " << e_st << ", " << e_m << ", " << e_star
      << "; N=4 gaps: " << e_gap_st << ", " << e_gap_m;
    o.detail = d.str();
  }
  return o;
}

Outcome criterion_gain_cdf() {
  Outcome o;
  const auto& s4 = ensemble_n4();
  int near_optimal = 0, within_grid_step = 0;
  for (std::size_t i = 0; i < s4.l_star.size(); ++i) {
    const double gap = s4.l_m[i] - s4.l_star[i];
    if (gap <= 1e-6) ++near_optimal;
    if (gap <= 5e-3) ++within_grid_step;
  }
  const double count = static_cast<double>(s4.l_star.size());
  const double frac = static_cast<double>(near_optimal) / count;
  require(o, frac >= 0.45 && frac <= 0.60, "fraction " + std::to_string(frac));
  {
    std::ostringstream d;
    d << (o.detail.empty() ? "" : o.detail + "; ")
      << "gap<=1e-6 fraction " << frac << ", gap<=5e-3 fraction "
      << static_cast<double>(within_grid_step) / count;
    o.detail = d.str();
  }
  return o;
}

Outcome criterion_brute_force() {
  Outcome o;
  const auto& actions = enumerate_complete_codes(3);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(0xB3, static_cast<std::uint64_t>(trial)));
    const auto p = random_matrix(3, rng);
    const auto rep = policy_iteration(p, myopic_policy(p));

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(6, 0);
    while (true) {
      CodingPolicy phi{3, {}};
      for (int i = 0; i < 6; ++i)
        phi.actions.push_back(actions[pick[static_cast<std::size_t>(i)]]);
      best = std::min(best, long_run_average(p, phi));
      int i = 0;
      for (; i < 6; ++i) {
        if (++pick[static_cast<std::size_t>(i)] < actions.size()) break;
        pick[static_cast<std::size_t>(i)] = 0;
      }
      if (i == 6) break;
    }
    require(o, std::abs(rep.eta - best) <= 1e-8,
            "trial " + std::to_string(trial) + " gap " + std::to_string(rep.eta - best));
  }
  return o;
}

Outcome criterion_consistency() {
  Outcome o;
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      Rng rng(derive_seed(0xC0 + static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(trial)));
      const auto p = random_matrix(n, rng);
      const auto rep = policy_iteration(p, myopic_policy(p));
      require(o, bellman_residual(p, rep.eta, rep.values) <= 1e-8,
              "Bellman residual, N=" + std::to_string(n));
      for (std::size_t i = 1; i < rep.eta_trace.size(); ++i)
        require(o, rep.eta_trace[i] <= rep.eta_trace[i - 1] + 1e-10,
                "trace not monotone, N=" + std::to_string(n));
      const auto sol = value_determination(p, rep.policy);
      require(o, std::abs(sol.eta - long_run_average(p, rep.policy)) <= 1e-8,
              "evaluation paths disagree, N=" + std::to_string(n));
      if (!o.pass) return o;
    }
  }
  return o;
}

Outcome criterion_ctmc() {
  Outcome o;
  Matrix q(2);
  q(0, 0) = -1.0;
  q(0, 1) = 1.0;
  q(1, 0) = 1.0;
  q(1, 1) = -1.0;
  const auto gen = GeneratorMatrix::validate(q);
  for (double d : {0.2, 1.0, 3.0}) {
    const auto p = ctmc_to_dtmc(gen, d);
    const double diag = (1.0 + std::exp(-2.0 * d)) / 2.0;
    require(o, std::abs(p(0, 0) - diag) <= 1e-10, "closed form at d=" + std::to_string(d));
    require(o, std::abs(p(0, 1) - (1.0 - diag)) <= 1e-10,
            "closed form at d=" + std::to_string(d));
  }

  Matrix q3(3);
  q3(0, 0) = -1.2; q3(0, 1) = 0.7; q3(0, 2) = 0.5;
  q3(1, 0) = 0.4;  q3(1, 1) = -0.9; q3(1, 2) = 0.5;
  q3(2, 0) = 0.8;  q3(2, 1) = 1.2; q3(2, 2) = -2.0;
  const auto g3 = GeneratorMatrix::validate(q3);
  const double d1 = 0.6, d2 = 1.1;
  const auto lhs = ctmc_to_dtmc(g3, d1 + d2).matrix();
  const auto rhs = ctmc_to_dtmc(g3, d1).matrix() * ctmc_to_dtmc(g3, d2).matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      require(o, std::abs(lhs(i, j) - rhs(i, j)) <= 1e-8, "semigroup violated");

  // induced-DTMC solve end to end
  const auto p3 = ctmc_to_dtmc(g3, 0.8);
  const auto res = solve_all(p3);
  require(o, res.steady_state.ok() && res.myopic.ok() && res.optimal.ok(),
          "induced solve failed");
  if (o.pass)
    require(o, res.optimal.report->eta <=
                   std::min(res.myopic.report->eta, res.steady_state.report->eta) + 1e-9,
            "induced dominance violated");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"1 complete-code counts", criterion_counts},
      {"2 depth bound and Kraft equality", criterion_depth_bound},
      {"3 worked 3-state example", criterion_worked_example},
      {"4 homogeneous baseline", criterion_homogeneous_baseline},
      {"5 beta sweep vs simulation", criterion_beta_sweep},
      {"6 ensemble table", criterion_ensemble_table},
      {"7 gain CDF sanity", criterion_gain_cdf},
      {"8 brute-force oracle equivalence", criterion_brute_force},
      {"9 solver internal consistency", criterion_consistency},
      {"10 CTMC path", criterion_ctmc},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const auto start = Clock::now();
    const Outcome o = e.fn();
    const double elapsed = seconds_since(start);
    std::printf("[%s] criterion %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", e.name,
                elapsed, o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
