// Experiment CLI: solve user-supplied chains, enumerate complete codes, and
// reproduce the beta-sweep / ensemble / gain-CDF experiments as CSV.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rtcode/chain.hpp"
#include "rtcode/codebook.hpp"
#include "rtcode/errors.hpp"
#include "rtcode/io.hpp"
#include "rtcode/mdp.hpp"
#include "rtcode/policies.hpp"
#include "rtcode/sim.hpp"

namespace {

using namespace rtcode;

constexpr int kExitValidation = 2;
constexpr int kExitAlphabet = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    grid.push_back(std::stod(tok));
  }
  if (grid.empty()) throw ValidationError("empty grid");
  for (double v : grid)
    if (v < 0.0 || v > 1.0) throw ValidationError("grid values must lie in [0, 1]");
  return grid;
}

TransitionMatrix load_transition(const std::string& path) {
  const Matrix m = read_matrix_file(path);
  if (m.n() < kMinAlphabet || m.n() > kMaxAlphabet)
    throw UnsupportedAlphabetError("alphabet size must be in [2, 8], got " +
                                   std::to_string(m.n()));
  return TransitionMatrix::validate(m);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

double eta_of(const PolicyOutcome& outcome) {
  if (!outcome.ok()) throw SolverError(outcome.error);
  return outcome.report->eta;
}

nlohmann::json solve_result_json(const SolveAllResult& result, const std::string& hash) {
  nlohmann::json j;
  for (PolicyKind kind :
       {PolicyKind::myopic, PolicyKind::steady_state, PolicyKind::optimal}) {
    const auto& outcome = result[kind];
    if (outcome.ok())
      j[policy_kind_name(kind)] = report_to_json(*outcome.report, hash);
    else
      j[policy_kind_name(kind)] = {{"error", outcome.error}};
  }
  return j;
}

int cmd_solve(const std::string& matrix_path, const std::string& out_path) {
  const auto p = load_transition(matrix_path);
  const auto result = solve_all(p);
  const std::string hash = matrix_hash(p.matrix());
  std::cout << "L_st=" << format_csv(eta_of(result.steady_state))
            << " L_m=" << format_csv(eta_of(result.myopic))
            << " L_star=" << format_csv(eta_of(result.optimal)) << '\n';
  if (!out_path.empty())
    write_json_file(out_path, solve_result_json(result, hash));
  return 0;
}

int cmd_enumerate(int n, bool full, bool words) {
  const auto& codes = enumerate_complete_codes(n);
  std::cout << "N=" << n << " complete codes: " << codes.size() << '\n';
  if (full || words) {
    for (const auto& code : codes) {
      std::cout << '[';
      for (int i = 0; i < code.n(); ++i)
        std::cout << (i ? "," : "") << code[i];
      std::cout << ']';
      if (words) {
        const auto book = assign_codewords(code);
        std::cout << " ->";
        for (const auto& w : book.words) std::cout << ' ' << w;
      }
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_beta_sweep(int n, double alpha, const std::string& grid_csv,
                   bool random_r, std::uint64_t seed, bool simulate_flag,
                   std::uint64_t transmissions, const std::string& out_path) {
  const auto grid = parse_grid(grid_csv);
  const auto h = homogeneous_matrix(n, alpha);
  TransitionMatrix r = [&] {
    if (!random_r) {
      if (n != 4)
        throw ValidationError("the built-in R realization is 4x4; use --random-r for other N");
      return reference_random_matrix();
    }
    Rng rng(seed);
    return random_matrix(n, rng);
  }();

  auto out = open_out(out_path);
  out << "beta,L_st,L_m,L_star";
  if (simulate_flag) out << ",sim_st,sim_m,sim_star";
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double beta = grid[i];
    out << format_csv(beta);
    try {
      const auto p = blend(h, r, beta);
      const auto result = solve_all(p);
      const double l_st = eta_of(result.steady_state);
      const double l_m = eta_of(result.myopic);
      const double l_star = eta_of(result.optimal);
      out << ',' << format_csv(l_st) << ',' << format_csv(l_m) << ','
          << format_csv(l_star);
      if (simulate_flag) {
        const auto sim_one = [&](const SolveReport& rep, std::uint64_t stream) {
          return simulate(p, rep.policy, transmissions, derive_seed(seed, stream))
              .empirical_average;
        };
        out << ',' << format_csv(sim_one(*result.steady_state.report, 3 * i))
            << ',' << format_csv(sim_one(*result.myopic.report, 3 * i + 1))
            << ',' << format_csv(sim_one(*result.optimal.report, 3 * i + 2));
      }
      out << '\n';
    } catch (const std::exception& e) {
      // annotate the row, keep sweeping
      out << ",error: " << e.what() << '\n';
    }
  }
  return 0;
}

struct EnsembleRow {
  std::uint64_t seed;
  double l_st, l_m, l_star;
};

std::vector<EnsembleRow> run_ensemble(int n, int n_matrices, std::uint64_t master_seed,
                                      std::ostream* log) {
  std::vector<EnsembleRow> rows;
  rows.reserve(static_cast<std::size_t>(n_matrices));
  std::uint64_t counter = 0;
  while (static_cast<int>(rows.size()) < n_matrices) {
    const std::uint64_t seed = derive_seed(master_seed, counter++);
    Rng rng(seed);
    const auto p = random_matrix(n, rng);
    if (!p.ergodic()) {
      if (log) *log << "# non-ergodic draw, seed " << seed << " redrawn\n";
      continue;
    }
    const auto result = solve_all(p);
    rows.push_back({seed, eta_of(result.steady_state), eta_of(result.myopic),
                    eta_of(result.optimal)});
  }
  return rows;
}

int cmd_ensemble(int n, int n_matrices, std::uint64_t master_seed,
                 const std::string& out_path) {
  const auto rows = run_ensemble(n, n_matrices, master_seed, &std::cerr);
  auto out = open_out(out_path);
  out << "index,seed,L_st,L_m,L_star\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << i << ',' << rows[i].seed << ',' << format_csv(rows[i].l_st) << ','
        << format_csv(rows[i].l_m) << ',' << format_csv(rows[i].l_star) << '\n';

  double st = 0, m = 0, star = 0;
  for (const auto& r : rows) {
    st += r.l_st;
    m += r.l_m;
    star += r.l_star;
  }
  const double k = static_cast<double>(rows.size());
  std::cout << "matrices=" << rows.size() << '\n'
            << "E[L_st]=" << format_csv(st / k) << '\n'
            << "E[L_m]=" << format_csv(m / k) << '\n'
            << "E[L_star]=" << format_csv(star / k) << '\n'
            << "E[L_st-L_star]=" << format_csv((st - star) / k) << '\n'
            << "E[L_m-L_star]=" << format_csv((m - star) / k) << '\n';
  return 0;
}

int cmd_gain_cdf(int n, int n_matrices, std::uint64_t master_seed,
                 const std::string& tau_grid_csv, const std::string& out_path) {
  std::vector<double> taus;
  if (tau_grid_csv.empty()) {
    for (int i = 0; i <= 60; ++i) taus.push_back(0.005 * i);  // [0, 0.3]
  } else {
    taus = parse_grid(tau_grid_csv);
  }
  const auto rows = run_ensemble(n, n_matrices, master_seed, &std::cerr);
  auto out = open_out(out_path);
  out << "tau,frac_myopic_gain_gt_tau,frac_steady_gain_gt_tau\n";
  for (double tau : taus) {
    int gm = 0, gst = 0;
    for (const auto& r : rows) {
      if (r.l_m - r.l_star > tau) ++gm;
      if (r.l_st - r.l_star > tau) ++gst;
    }
    const double k = static_cast<double>(rows.size());
    out << format_csv(tau) << ',' << format_csv(gm / k) << ','
        << format_csv(gst / k) << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& matrix_path, const std::string& kind_name,
                 std::uint64_t transmissions, std::uint64_t seed,
                 const std::string& out_path) {
  const auto p = load_transition(matrix_path);
  const auto result = solve_all(p);
  PolicyKind kind;
  if (kind_name == "myopic") kind = PolicyKind::myopic;
  else if (kind_name == "steady") kind = PolicyKind::steady_state;
  else if (kind_name == "optimal") kind = PolicyKind::optimal;
  else throw ValidationError("unknown policy kind: " + kind_name);
  const auto& outcome = result[kind];
  if (!outcome.ok()) throw SolverError(outcome.error);
  const auto sim = simulate(p, outcome.report->policy, transmissions, seed);
  const std::string row = sim_result_csv_row(sim, kind, outcome.report->eta);
  const std::string header = "seed,policy,n_transmissions,empirical_average,analytic_eta,abs_gap";
  std::cout << header << '\n' << row << '\n';
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << header << '\n' << row << '\n';
  }
  return 0;
}

int cmd_ctmc(const std::string& generator_path, double d, const std::string& out_path) {
  const Matrix raw = read_matrix_file(generator_path);
  if (raw.n() < kMinAlphabet || raw.n() > kMaxAlphabet)
    throw UnsupportedAlphabetError("alphabet size must be in [2, 8], got " +
                                   std::to_string(raw.n()));
  const auto q = GeneratorMatrix::validate(raw);
  const auto p = ctmc_to_dtmc(q, d);
  p.require_ergodic();
  const auto result = solve_all(p);
  std::cout << "L_st=" << format_csv(eta_of(result.steady_state))
            << " L_m=" << format_csv(eta_of(result.myopic))
            << " L_star=" << format_csv(eta_of(result.optimal)) << '\n';
  if (!out_path.empty()) {
    nlohmann::json j = solve_result_json(result, matrix_hash(p.matrix()));
    j["d"] = d;
    j["generator"] = matrix_to_json(q.matrix());
    j["transition"] = matrix_to_json(p.matrix());
    write_json_file(out_path, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal variable-length coding policies for real-time Markov sources"};
  app.require_subcommand(1);

  std::string matrix_path, out_path, grid_csv, tau_grid_csv, kind_name = "optimal";
  int n = 4, n_matrices = 1000;
  double alpha = 0.5, d = 1.0;
  std::uint64_t seed = 1, transmissions = 1000000;
  bool full = false, words = false, simulate_flag = false, random_r = false;

  auto* solve = app.add_subcommand("solve", "Solve all three policies for a matrix file");
  solve->add_option("matrix", matrix_path, "transition matrix JSON")->required();
  solve->add_option("--out", out_path, "report JSON path");

  auto* enumerate = app.add_subcommand("enumerate", "List complete codes");
  enumerate->add_option("--n", n, "alphabet size")->required();
  enumerate->add_flag("--full", full, "print every length vector");
  enumerate->add_flag("--words", words, "print canonical codewords");

  auto* sweep = app.add_subcommand("beta-sweep", "Blend sweep against the built-in R");
  sweep->add_option("--n", n, "alphabet size (default 4)");
  sweep->add_option("--alpha", alpha, "homogeneous self-transition (default 0.5)");
  sweep->add_option("--beta-grid", grid_csv, "comma list of beta values")
      ->default_val("0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1");
  sweep->add_flag("--random-r", random_r, "draw R from --seed instead of the built-in");
  sweep->add_option("--seed", seed, "master seed");
  sweep->add_flag("--simulate", simulate_flag, "add simulated columns");
  sweep->add_option("--transmissions", transmissions, "simulation length");
  sweep->add_option("--out", out_path, "CSV path")->required();

  auto* ensemble = app.add_subcommand("ensemble", "Random-matrix ensemble averages");
  ensemble->add_option("--n", n, "alphabet size")->required();
  ensemble->add_option("--matrices", n_matrices, "ensemble size");
  ensemble->add_option("--seed", seed, "master seed");
  ensemble->add_option("--out", out_path, "CSV path")->required();

  auto* gain = app.add_subcommand("gain-cdf", "Tail probabilities of the optimality gain");
  gain->add_option("--n", n, "alphabet size")->required();
  gain->add_option("--matrices", n_matrices, "ensemble size");
  gain->add_option("--seed", seed, "master seed");
  gain->add_option("--tau-grid", tau_grid_csv, "comma list of thresholds");
  gain->add_option("--out", out_path, "CSV path")->required();

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo check of one policy");
  sim->add_option("matrix", matrix_path, "transition matrix JSON")->required();
  sim->add_option("--policy", kind_name, "myopic | steady | optimal");
  sim->add_option("--transmissions", transmissions, "number of transmissions");
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--out", out_path, "CSV path");

  auto* ctmc = app.add_subcommand("ctmc", "Solve a CTMC generator at slot duration d");
  ctmc->add_option("generator", matrix_path, "generator matrix JSON")->required();
  ctmc->add_option("--d", d, "seconds per bit")->required();
  ctmc->add_option("--out", out_path, "report JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(matrix_path, out_path);
    if (enumerate->parsed()) return cmd_enumerate(n, full, words);
    if (sweep->parsed())
      return cmd_beta_sweep(n, alpha, grid_csv, random_r, seed, simulate_flag,
                            transmissions, out_path);
    if (ensemble->parsed()) return cmd_ensemble(n, n_matrices, seed, out_path);
    if (gain->parsed())
      return cmd_gain_cdf(n, n_matrices, seed, tau_grid_csv, out_path);
    if (sim->parsed())
      return cmd_simulate(matrix_path, kind_name, transmissions, seed, out_path);
    if (ctmc->parsed()) return cmd_ctmc(matrix_path, d, out_path);
  } catch (const UnsupportedAlphabetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAlphabet;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
