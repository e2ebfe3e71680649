#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rtcode/errors.hpp"
#include "rtcode/io.hpp"
#include "rtcode/policies.hpp"

using namespace rtcode;

TEST_CASE("matrix JSON round trip and schema errors") {
  Matrix m(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = 0.1 * (i + 1) + 0.01 * j;
  const auto j = matrix_to_json(m);
  CHECK(matrix_from_json(j) == m);

  CHECK_THROWS_AS((void)matrix_from_json(nlohmann::json::array()), IoError);
  CHECK_THROWS_AS((void)matrix_from_json({{"n", 2}, {"rows", {{0.5, 0.5}}}}), IoError);
  CHECK_THROWS_AS((void)read_matrix_file("/nonexistent/path.json"), IoError);
}

TEST_CASE("matrix hash separates matrices") {
  Matrix a(2), b(2);
  a(0, 0) = 0.5; a(0, 1) = 0.5; a(1, 0) = 0.5; a(1, 1) = 0.5;
  b = a;
  CHECK(matrix_hash(a) == matrix_hash(b));
  b(1, 1) = 0.5000001;
  CHECK(matrix_hash(a) != matrix_hash(b));
  CHECK(matrix_hash(a).size() == 16);
}

TEST_CASE("policy JSON round trip") {
  const auto h = homogeneous_matrix(4, 0.5);
  const auto phi = myopic_policy(h);
  const auto j = policy_to_json(phi, matrix_hash(h.matrix()), 2.0);
  CHECK(j.at("header").at("n_states") == 4);
  CHECK(j.at("header").at("eta") == 2.0);
  CHECK(j.at("actions").contains("3,2"));
  const auto back = policy_from_json(j);
  CHECK(back == phi);

  nlohmann::json broken = j;
  broken["actions"].erase("2,1");
  CHECK_THROWS_AS((void)policy_from_json(broken), IoError);
}

TEST_CASE("report JSON carries the solve trace") {
  const auto h = homogeneous_matrix(4, 0.5);
  const auto rep = policy_iteration(h, myopic_policy(h));
  const auto j = report_to_json(rep, matrix_hash(h.matrix()));
  CHECK(j.at("eta").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j.at("converged").get<bool>());
  CHECK(j.at("eta_trace").size() == static_cast<std::size_t>(rep.iterations));
  CHECK(j.at("stationary").size() == 12);
}

TEST_CASE("sim CSV row format") {
  SimResult r;
  r.seed = 42;
  r.transmissions = 1000;
  r.total_slots = 2000;
  r.empirical_average = 2.0;
  const auto row = sim_result_csv_row(r, PolicyKind::optimal, 1.9925);
  CHECK(row == "42,optimal,1000,2,1.9925,0.0075");
  CHECK(format_csv(0.123456789) == "0.123457");
}
