#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msgp/problem.hpp"
#include "msgp/regularizer.hpp"
#include "msgp/solver.hpp"

namespace msgp {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::pair<int, int> n_range{0, 0};
};

struct ErrorRow {
  int n;
  double mean_sq_error;
  double std_error;
};

/// Plug-in estimate of mean + c * ((1/n) sum R(s_i - mean)^p)^(1/p) on a
/// fixed sample vector, centering at the SAMPLE mean.
double empirical_risk(const std::vector<double>& samples,
                      const RiskRegularizer& reg, double p, double c);

/// Two-pass Monte-Carlo estimate of the risk-averse objective at x; the
/// dispersion pass reuses the mean pass's samples. std_error by nonparametric
/// bootstrap (n_bootstrap resamples; 0 skips the bootstrap).
McEstimate estimate_objective(const Problem& problem, const RiskRegularizer& reg,
                              double p, double c, const Vec& x, int n_samples,
                              std::uint64_t seed, int n_bootstrap = 200);

/// Brute-force minimizer over the grid using COMMON random numbers across
/// all grid points. Ties broken by smallest index.
std::pair<Vec, double> grid_oracle(const Problem& problem,
                                   const RiskRegularizer& reg, double p,
                                   double c, const std::vector<Vec>& grid,
                                   int n_samples, std::uint64_t seed);

/// Seed-averaged squared distance to x_star at each checkpoint (which must
/// be a recorded iteration of every record). Needs >= 2 records.
std::vector<ErrorRow> estimate_solution_error(
    const std::vector<RunRecord>& records, const Vec& x_star,
    const std::vector<int>& checkpoints, bool use_smoothed = false);

/// Least-squares line on (log n, log error) over checkpoints >= n_min.
/// Nonpositive errors are dropped if they are < 20% of the points, else the
/// fit aborts. Needs >= 4 usable checkpoints.
SlopeFit fit_loglog_slope(const std::vector<ErrorRow>& table, int n_min);

/// n_count log-spaced integers in [n_lo, n_hi], deduplicated, ascending.
std::vector<int> log_checkpoints(int n_lo, int n_hi, int n_count);

}  // namespace msgp
