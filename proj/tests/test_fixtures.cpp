#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "msgp/diagnostics.hpp"

using namespace msgp;

namespace {

// Fixture files are key = value lines with '#' comments; the provenance
// (seed, sample count, grid) lives in the comments and in keys.
std::map<std::string, double> load_fixture(const std::string& name) {
  std::ifstream in(std::string(MSGP_FIXTURE_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing fixture (run make_fixtures): ", name);
  std::map<std::string, double> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key, eq;
    double value;
    if (ss >> key >> eq >> value && eq == "=") kv[key] = value;
  }
  return kv;
}

}  // namespace

TEST_CASE("frozen oracle fixtures remain consistent with the estimators") {
  const auto kv = load_fixture("oracles.txt");

  // Closed-form objective at x = 0 for the quadratic fixture problem.
  const double exact = 1.0 / 6.0 + 1.0 / (9.0 * std::sqrt(3.0));
  REQUIRE(kv.count("quadratic_objective_x0_exact"));
  CHECK(kv.at("quadratic_objective_x0_exact") ==
        doctest::Approx(exact).epsilon(1e-12));

  // Brute-force minimizer of the symmetric quadratic mean-semideviation
  // problem: symmetry puts it at zero, up to grid and MC resolution.
  REQUIRE(kv.count("quadratic_msd_xstar"));
  CHECK(std::abs(kv.at("quadratic_msd_xstar")) <= 0.01);

  // The frozen oracle value is statistically consistent with a fresh
  // estimate at a different seed.
  auto prob = quadratic_1d(0.5, 1.0, -2.0, 2.0);
  auto est = estimate_objective(prob, positive_part(), 1.0, 0.5,
                                {kv.at("quadratic_msd_xstar")}, 200000, 777, 200);
  CHECK(std::abs(est.value - kv.at("quadratic_msd_value")) <
        3.0 * est.std_error + 1e-3);

  // Newsvendor ordering oracle: risk-neutral near the closed form, the
  // piecewise-regularized optimum strictly between the extremes.
  const double rn = kv.at("newsvendor_rn_xstar");
  const double nv = kv.at("newsvendor_nv_xstar");
  const double usd = kv.at("newsvendor_usd_xstar");
  CHECK(std::abs(rn - 0.75) <= 0.02);
  const bool between = (rn < nv && nv < usd) || (usd < nv && nv < rn);
  CHECK(between);
}
