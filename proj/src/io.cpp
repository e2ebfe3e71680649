#include "rtcode/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rtcode/errors.hpp"

namespace rtcode {

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw IoError("matrix JSON must be an object with \"n\" and \"rows\"");
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("rows");
  if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n)
    throw IoError("matrix JSON: \"rows\" must hold n rows");
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw IoError("matrix JSON: row " + std::to_string(i + 1) +
                    " must hold n entries");
    for (int k = 0; k < n; ++k)
      m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return {{"n", m.n()}, {"rows", std::move(rows)}};
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
  try {
    return matrix_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("schema error in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::string matrix_hash(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const int n = m.n();
  mix(&n, sizeof(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = m(i, j);
      mix(&v, sizeof(v));
    }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json policy_to_json(const CodingPolicy& phi, const std::string& hash,
                              double eta) {
  nlohmann::json actions = nlohmann::json::object();
  for (const auto& s : state_space(phi.n_symbols)) {
    const std::string key =
        std::to_string(s.symbol) + "," + std::to_string(s.in_flight_len);
    actions[key] = phi.at(s).lengths;
  }
  return {{"header",
           {{"n_states", phi.n_symbols}, {"matrix_hash", hash}, {"eta", eta}}},
          {"actions", std::move(actions)}};
}

CodingPolicy policy_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("header").at("n_states").get<int>();
    CodingPolicy phi{n, std::vector<CompleteCode>(
                            static_cast<std::size_t>(n) * (n - 1))};
    const auto& actions = j.at("actions");
    for (const auto& s : state_space(n)) {
      const std::string key =
          std::to_string(s.symbol) + "," + std::to_string(s.in_flight_len);
      phi.actions[static_cast<std::size_t>(state_index(s, n))] =
          CompleteCode{actions.at(key).get<std::vector<int>>()};
    }
    return phi;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("policy JSON schema error: ") + e.what());
  }
}

nlohmann::json report_to_json(const SolveReport& report, const std::string& hash) {
  return {{"eta", report.eta},
          {"iterations", report.iterations},
          {"converged", report.converged},
          {"eta_trace", report.eta_trace},
          {"values", report.values},
          {"stationary", report.stationary},
          {"policy", policy_to_json(report.policy, hash, report.eta)}};
}

std::string format_csv(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string sim_result_csv_row(const SimResult& r, PolicyKind kind,
                               double analytic_eta) {
  std::ostringstream out;
  out << r.seed << ',' << policy_kind_name(kind) << ',' << r.transmissions << ','
      << format_csv(r.empirical_average) << ',' << format_csv(analytic_eta) << ','
      << format_csv(std::abs(r.empirical_average - analytic_eta));
  return out.str();
}

}  // namespace rtcode
