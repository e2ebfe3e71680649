#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rtcode/chain.hpp"
#include "rtcode/policies.hpp"
#include "rtcode/sim.hpp"

namespace rtcode {

/// Matrix file schema: {"n": N, "rows": [[...], ...]}. Used for both
/// transition and generator matrices.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

/// Reads and parses a matrix file; throws IoError on file or parse trouble.
Matrix read_matrix_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// FNV-1a over the raw entry bytes, as a 16-digit hex string.
std::string matrix_hash(const Matrix& m);

/// Policy schema: {"header": {"n_states", "matrix_hash", "eta"},
///                 "actions": {"n,l": [lengths...]}}.
nlohmann::json policy_to_json(const CodingPolicy& phi, const std::string& hash,
                              double eta);
CodingPolicy policy_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SolveReport& report, const std::string& hash);

/// One CSV row: seed, policy kind, n_transmissions, empirical_average,
/// analytic_eta, abs_gap.
std::string sim_result_csv_row(const SimResult& r, PolicyKind kind,
                               double analytic_eta);

/// Fixed 6-significant-digit rendering used by all CSV output.
std::string format_csv(double v);

}  // namespace rtcode
