#include "msgp/solver.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace msgp {
namespace {

void check_finite(double v, const char* quantity, int n) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "non-finite " << quantity << " at iteration " << n;
    throw std::runtime_error(msg.str());
  }
}

int smoothing_window(int n) { return (n + 1) / 2; }  // ceil(n/2)

}  // namespace

void step(SolverState& state, const SolverConfig& config,
          const Problem& problem, int* clamp_events) {
  const int n = state.n;
  const double alpha_n = config.alpha.at(n);
  const double beta_n = config.beta.at(n);

  const Vec w1 = problem.sampler(state.w1);
  const Vec w2 = problem.sampler(state.w2);
  const double f1 = problem.cost(state.x, w1);
  const double f2 = problem.cost(state.x, w2);
  check_finite(f1, "cost(x, w1)", n);
  check_finite(f2, "cost(x, w2)", n);

  // First SA level: track the mean cost.
  const double y_next = (1.0 - beta_n) * state.y + beta_n * f1;
  check_finite(y_next, "y", n);

  // Second SA level: track the p-th moment of the regularized deviation,
  // centered at the PRE-update y (all levels advance in parallel).
  double z_next = 1.0;
  if (config.p > 1.0) {
    const double gamma_n = config.gamma.at(n);
    const double r = config.reg.value(f2 - state.y);
    z_next = (1.0 - gamma_n) * state.z + gamma_n * std::pow(r, config.p);
    check_finite(z_next, "z", n);
  }

  // Third SA level: risk-averse correction, also off the pre-update (y, z).
  const double delta = f2 - state.y;
  const Vec g2 = problem.subgradient(state.x, w2);
  const Vec g1 = problem.subgradient(state.x, w1);
  const double r_delta = config.reg.value(delta);
  const double r_prime = config.reg.subderivative(delta);
  double z_factor = 1.0;
  if (config.p > 1.0) {
    double z_tilde = state.z;
    if (z_tilde < config.z_floor) {
      z_tilde = config.z_floor;
      if (clamp_events) ++*clamp_events;
    }
    z_factor = std::pow(z_tilde, (1.0 - config.p) / config.p);
  }
  // pow(0, 0) == 1 covers the p = 1 edge of (R(delta))^{p-1}.
  const double coef = r_prime * std::pow(r_delta, config.p - 1.0) * z_factor;
  check_finite(coef, "correction coefficient", n);

  Vec x_next(state.x.size());
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    const double correction = (g2[i] - g1[i]) * coef;
    x_next[i] = state.x[i] - alpha_n * (g2[i] + config.c * correction);
  }
  x_next = project(problem.feasible_set, x_next);
  for (double xi : x_next) check_finite(xi, "x", n);

  state.x = x_next;
  state.y = y_next;
  state.z = z_next;
  state.n = n + 1;

  state.recent_x.push_back(state.x);
  const int keep_from =
      config.smoothing ? state.n - smoothing_window(state.n) : state.n;
  while (state.recent_front < keep_from) {
    state.recent_x.pop_front();
    ++state.recent_front;
  }
}

Vec smoothed_iterate(const SolverState& state) {
  if (state.n < 1)
    throw std::invalid_argument("smoothed_iterate: requires n >= 1");
  const int window = smoothing_window(state.n);
  const int start = state.n - window;
  if (start < state.recent_front)
    throw std::logic_error("smoothed_iterate: window not retained");
  Vec sum(state.x.size(), 0.0);
  for (int i = start; i <= state.n; ++i) {
    const Vec& xi = state.recent_x[static_cast<std::size_t>(i - state.recent_front)];
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += xi[d];
  }
  // The defining display sums ceil(n/2)+1 iterates but divides by ceil(n/2);
  // implemented literally, without renormalizing.
  for (double& s : sum) s /= static_cast<double>(window);
  return sum;
}

void validate_config(const SolverConfig& config, const Problem& problem) {
  if (!(config.p >= 1.0))
    throw std::invalid_argument("solver config: p must be >= 1");
  if (!(config.c >= 0.0 && config.c <= 1.0))
    throw std::invalid_argument("solver config: c must lie in [0, 1]");
  if (config.horizon < 1)
    throw std::invalid_argument("solver config: horizon must be >= 1");
  if (config.record_every < 1)
    throw std::invalid_argument("solver config: record_every must be >= 1");
  if (!(config.z_floor > 0.0))
    throw std::invalid_argument("solver config: z_floor must be > 0");
  if (config.x0.size() != problem.dimension)
    throw std::invalid_argument("solver config: x0 dimension mismatch");
  if (!contains(problem.feasible_set, config.x0, 1e-9))
    throw std::invalid_argument("solver config: x0 not in the feasible set");
  if (!config.reg.value || !config.reg.subderivative)
    throw std::invalid_argument("solver config: regularizer not set");

  if (config.p > 1.0) {
    if (!problem.bounds)
      throw std::invalid_argument(
          "solver config: p > 1 requires a problem with a bounded cost range "
          "(condition C4); this problem has none");
    const auto [ml, mh] = *problem.bounds;
    const double eps = config.reg.value(ml - mh);
    const double big = config.reg.value(mh - ml);
    if (!(eps > std::pow(config.z_floor, 1.0 / config.p)))
      throw std::invalid_argument(
          "solver config: R(m_l - m_h) does not exceed z_floor^(1/p); use a "
          "slack-adjusted regularizer");
    const bool y0_ok = config.y0 >= ml && config.y0 <= mh;
    if (!y0_ok && config.beta.at(0) != 1.0)
      throw std::invalid_argument(
          "solver config: p > 1 needs y0 in [m_l, m_h] or beta_0 = 1");
    const double z_lo = std::pow(eps, config.p);
    const double z_hi = std::pow(big, config.p);
    const bool z0_ok = config.z0 >= z_lo && config.z0 <= z_hi;
    if (!z0_ok && config.gamma.at(0) != 1.0)
      throw std::invalid_argument(
          "solver config: p > 1 needs z0 in [eps^p, E^p] or gamma_0 = 1");
  }
}

RunRecord run(const SolverConfig& config, const Problem& problem,
              std::uint64_t master_seed) {
  validate_config(config, problem);
  const auto t0 = std::chrono::steady_clock::now();

  SolverState state(config.x0, config.y0, config.p > 1.0 ? config.z0 : 1.0,
                    master_seed);
  RunRecord record;
  record.rows.push_back({0, state.x, state.y, state.z, state.x});

  for (int n = 0; n < config.horizon; ++n) {
    step(state, config, problem, &record.clamp_events);
    if (state.n % config.record_every == 0) {
      Vec xs = config.smoothing ? smoothed_iterate(state) : state.x;
      record.rows.push_back({state.n, state.x, state.y, state.z, std::move(xs)});
    }
  }
  record.iterations = state.n;
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

BoundReport monitor_boundedness(const RunRecord& record, const Problem& problem,
                                const SolverConfig& config) {
  BoundReport report;
  if (config.p <= 1.0) {
    report.detail = "vacuous for p = 1";
    return report;
  }
  if (!problem.bounds) {
    report.pass = false;
    report.detail = "no bounds available on this problem";
    return report;
  }
  const auto [ml, mh] = *problem.bounds;
  const double z_lo = std::pow(config.reg.value(ml - mh), config.p);
  const double z_hi = std::pow(config.reg.value(mh - ml), config.p);
  for (const auto& row : record.rows) {
    const bool ok = row.y >= ml && row.y <= mh && row.z >= z_lo && row.z <= z_hi;
    if (!ok) {
      ++report.violations;
      if (report.first_violation_n < 0) report.first_violation_n = row.n;
    }
  }
  report.pass = report.violations == 0;
  return report;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv(const RunRecord& record, std::size_t dimension,
               std::ostream& out) {
  out << "n";
  for (std::size_t i = 0; i < dimension; ++i) out << ",x_" << i;
  out << ",y,z";
  for (std::size_t i = 0; i < dimension; ++i) out << ",xs_" << i;
  out << "\n";
  for (const auto& row : record.rows) {
    out << row.n;
    for (double xi : row.x) out << "," << format_double(xi);
    out << "," << format_double(row.y) << "," << format_double(row.z);
    for (double xi : row.xs) out << "," << format_double(xi);
    out << "\n";
  }
}

RunRecord read_csv(std::istream& in, std::size_t dimension) {
  RunRecord record;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 2 * dimension + 3)
      throw std::runtime_error("csv: wrong field count");
    RunRecord::Row row;
    row.n = std::stoi(fields[0]);
    std::size_t k = 1;
    for (std::size_t i = 0; i < dimension; ++i) row.x.push_back(std::stod(fields[k++]));
    row.y = std::stod(fields[k++]);
    row.z = std::stod(fields[k++]);
    for (std::size_t i = 0; i < dimension; ++i) row.xs.push_back(std::stod(fields[k++]));
    record.rows.push_back(std::move(row));
  }
  record.iterations = record.rows.empty() ? 0 : record.rows.back().n;
  return record;
}

}  // namespace msgp
