#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msgp/problem.hpp"
#include "msgp/schedules.hpp"
#include "msgp/solver.hpp"

namespace msgp {

/// Fully-resolved experiment: problem, regularizer, solver settings, seeds.
struct ExperimentConfig {
  Problem problem;
  SolverConfig solver;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";

  // Retained for commands that need closed forms or preset metadata.
  std::optional<NewsvendorParams> newsvendor_params;
  std::optional<ExponentTriple> exponents;   // subharmonic taus, if known
  std::optional<double> predicted_exponent;  // from a named preset
  double sigma = 0.0;                        // strong-convexity modulus in use

  struct RateSection {
    std::optional<Vec> x_star;  // absent: use the problem's known optimum
    double slack = 0.2;
    int n_min = 0;        // 0: use rate_onset(tau2)
    int checkpoints = 12;
    bool use_smoothed = false;
  };
  std::optional<RateSection> rate;

  struct NewsvendorSection {
    double c = 0.5;
    double p = 1.0;
    RiskRegularizer nv_reg;       // the piecewise comparison regularizer
    double grid_step = 2e-3;
    int oracle_samples = 200000;
    std::uint64_t oracle_seed = 99;
  };
  std::optional<NewsvendorSection> newsvendor_cases;
};

/// Parses and cross-validates a JSON experiment file. Throws
/// std::invalid_argument with the offending field on any inconsistency.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

}  // namespace msgp
