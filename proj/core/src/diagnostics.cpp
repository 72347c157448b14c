#include "msgp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msgp {
namespace {

constexpr std::uint64_t kStreamEstimator = 7;
constexpr std::uint64_t kStreamBootstrap = 11;

double dispersion(const std::vector<double>& samples, double mean,
                  const RiskRegularizer& reg, double p) {
  double acc = 0.0;
  for (double s : samples) acc += std::pow(reg.value(s - mean), p);
  return std::pow(acc / static_cast<double>(samples.size()), 1.0 / p);
}

}  // namespace

double empirical_risk(const std::vector<double>& samples,
                      const RiskRegularizer& reg, double p, double c) {
  if (samples.empty()) throw std::invalid_argument("empirical_risk: no samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  return mean + c * dispersion(samples, mean, reg, p);
}

McEstimate estimate_objective(const Problem& problem, const RiskRegularizer& reg,
                              double p, double c, const Vec& x, int n_samples,
                              std::uint64_t seed, int n_bootstrap) {
  if (n_samples < 2)
    throw std::invalid_argument("estimate_objective: n_samples >= 2");
  RngStream rng(seed, kStreamEstimator);
  std::vector<double> costs(static_cast<std::size_t>(n_samples));
  double mean = 0.0;
  for (auto& f : costs) {
    const Vec w = problem.sampler(rng);
    f = problem.cost(x, w);
    mean += f;
  }
  mean /= static_cast<double>(n_samples);

  McEstimate est;
  est.value = mean + c * dispersion(costs, mean, reg, p);
  est.n_samples = n_samples;
  est.seed = seed;

  if (n_bootstrap > 0) {
    RngStream boot(seed, kStreamBootstrap);
    std::vector<double> resample(costs.size());
    double bsum = 0.0, bsq = 0.0;
    for (int b = 0; b < n_bootstrap; ++b) {
      for (auto& r : resample) {
        const auto idx = static_cast<std::size_t>(
            boot.next_u64() % static_cast<std::uint64_t>(costs.size()));
        r = costs[idx];
      }
      const double v = empirical_risk(resample, reg, p, c);
      bsum += v;
      bsq += v * v;
    }
    const double bmean = bsum / n_bootstrap;
    est.std_error = std::sqrt(std::max(bsq / n_bootstrap - bmean * bmean, 0.0));
  }
  return est;
}

std::pair<Vec, double> grid_oracle(const Problem& problem,
                                   const RiskRegularizer& reg, double p,
                                   double c, const std::vector<Vec>& grid,
                                   int n_samples, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("grid_oracle: empty grid");
  // Common random numbers: one sample set, reused at every grid point.
  RngStream rng(seed, kStreamEstimator);
  std::vector<Vec> draws(static_cast<std::size_t>(n_samples));
  for (auto& w : draws) w = problem.sampler(rng);

  Vec best_x;
  double best_value = 0.0;
  bool first = true;
  std::vector<double> costs(draws.size());
  for (const Vec& x : grid) {
    if (!contains(problem.feasible_set, x, 1e-9))
      throw std::invalid_argument("grid_oracle: infeasible grid point");
    double mean = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
      costs[i] = problem.cost(x, draws[i]);
      mean += costs[i];
    }
    mean /= static_cast<double>(n_samples);
    const double value = mean + c * dispersion(costs, mean, reg, p);
    if (first || value < best_value) {
      first = false;
      best_value = value;
      best_x = x;
    }
  }
  return {best_x, best_value};
}

std::vector<ErrorRow> estimate_solution_error(
    const std::vector<RunRecord>& records, const Vec& x_star,
    const std::vector<int>& checkpoints, bool use_smoothed) {
  if (records.size() < 2)
    throw std::invalid_argument("estimate_solution_error: needs >= 2 records");
  std::vector<ErrorRow> table;
  table.reserve(checkpoints.size());
  for (int n : checkpoints) {
    double sum = 0.0, sq = 0.0;
    for (const auto& rec : records) {
      auto it = std::find_if(rec.rows.begin(), rec.rows.end(),
                             [n](const RunRecord::Row& r) { return r.n == n; });
      if (it == rec.rows.end())
        throw std::invalid_argument(
            "estimate_solution_error: checkpoint not recorded");
      const Vec& xn = use_smoothed ? it->xs : it->x;
      double err = 0.0;
      for (std::size_t d = 0; d < x_star.size(); ++d) {
        const double diff = xn[d] - x_star[d];
        err += diff * diff;
      }
      sum += err;
      sq += err * err;
    }
    const auto m = static_cast<double>(records.size());
    const double mean = sum / m;
    const double var = std::max(sq / m - mean * mean, 0.0) * m / (m - 1.0);
    table.push_back({n, mean, std::sqrt(var / m)});
  }
  return table;
}

SlopeFit fit_loglog_slope(const std::vector<ErrorRow>& table, int n_min) {
  std::vector<std::pair<double, double>> pts;
  std::size_t eligible = 0, dropped = 0;
  int lo = 0, hi = 0;
  for (const auto& row : table) {
    if (row.n < n_min) continue;
    ++eligible;
    if (!(row.mean_sq_error > 0.0)) {
      ++dropped;
      continue;
    }
    if (pts.empty()) lo = row.n;
    hi = row.n;
    pts.emplace_back(std::log(static_cast<double>(row.n)),
                     std::log(row.mean_sq_error));
  }
  if (eligible > 0 && static_cast<double>(dropped) >= 0.2 * static_cast<double>(eligible))
    throw std::runtime_error("fit_loglog_slope: too many nonpositive errors");
  if (pts.size() < 4)
    throw std::invalid_argument("fit_loglog_slope: needs >= 4 checkpoints");

  const auto m = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double cov = sxy - sx * sy / m;
  const double vx = sxx - sx * sx / m;
  const double vy = syy - sy * sy / m;
  SlopeFit fit;
  fit.slope = cov / vx;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.r_squared = vy > 0.0 ? std::clamp(cov * cov / (vx * vy), 0.0, 1.0) : 1.0;
  fit.n_range = {lo, hi};
  return fit;
}

std::vector<int> log_checkpoints(int n_lo, int n_hi, int n_count) {
  if (n_lo < 1 || n_hi < n_lo || n_count < 2)
    throw std::invalid_argument("log_checkpoints: bad range");
  std::vector<int> out;
  const double llo = std::log(static_cast<double>(n_lo));
  const double lhi = std::log(static_cast<double>(n_hi));
  for (int i = 0; i < n_count; ++i) {
    const double t = llo + (lhi - llo) * i / (n_count - 1);
    const int n = static_cast<int>(std::lround(std::exp(t)));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

}  // namespace msgp
