// Acceptance gate: one pass/fail line per criterion, exit code = #failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "msgp/config.hpp"
#include "msgp/diagnostics.hpp"
#include "msgp/solver.hpp"

using namespace msgp;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", pass ? "PASS" : "FAIL",
              number, name.c_str(), secs, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<RiskRegularizer> builtins() {
  return {positive_part(),
          entropic(1.0),
          entropic(10.0),
          gaussian_antiderivative(),
          newsvendor_piecewise(0.25, 0.5, 0.05, 0.15, 4.0),
          slack_adjust(positive_part(), 0.1),
          slack_adjust(gaussian_antiderivative(), 0.2)};
}

Problem quad() { return quadratic_1d(0.5, 1.0, -2.0, 2.0); }

SolverConfig p2_config() {
  SolverConfig cfg;
  cfg.p = 2.0;
  cfg.c = 0.5;
  cfg.reg = slack_adjust(positive_part(), 0.1);
  cfg.alpha = {Subharmonic{0.9, 1.0}};
  cfg.beta = {Subharmonic{0.775, 1.0}};
  cfg.gamma = {Subharmonic{0.55, 1.0}};
  cfg.x0 = {0.5};
  cfg.y0 = 0.5;
  cfg.z0 = 1.0;
  return cfg;
}

bool axiom_suite(std::string& detail) {
  const auto grid = make_grid(-10.0, 10.0, 0.01);
  for (const auto& reg : builtins()) {
    const auto report = validate_axioms(reg, grid, 1e-12);
    if (!report.all_pass()) {
      detail = reg.label + " failed an axiom check";
      return false;
    }
  }
  return true;
}

bool cdf_round_trip(std::string& detail) {
  const auto wide = make_grid(-10.0, 10.0, 0.01);
  const auto probe = make_grid(-5.0, 5.0, 0.05);
  for (const auto& reg : builtins()) {
    auto spec = extract_cdf(reg, wide);
    spec.quadrature_step = reg.kink_points.empty() ? 1e-3 : 1e-5;
    auto rebuilt = from_cdf(spec);
    for (double x : probe) {
      bool near_kink = false;
      for (double k : reg.kink_points)
        if (std::abs(x - k) < spec.quadrature_step) near_kink = true;
      if (near_kink) continue;
      if (std::abs(rebuilt.value(x) - reg.value(x)) >= 1e-4) {
        detail = reg.label + " round trip off at x = " + format_double(x);
        return false;
      }
    }
  }
  CdfSpec logistic;
  logistic.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  auto rebuilt = from_cdf(logistic);
  auto ref = entropic(1.0);
  for (double x : probe)
    if (std::abs(rebuilt.value(x) - ref.value(x)) >= 1e-4) {
      detail = "from_cdf(logistic) off at x = " + format_double(x);
      return false;
    }
  return true;
}

bool sgd_reduction(std::string& detail) {
  auto prob = quad();
  for (double p : {1.0, 2.0}) {
    SolverConfig cfg = p2_config();
    cfg.p = p;
    cfg.c = 0.0;
    cfg.alpha = {Subharmonic{0.75, 1.0}};
    cfg.horizon = 10000;
    const std::uint64_t seed = 2026;
    const RunRecord rec = run(cfg, prob, seed);

    RngStream w2(seed, kStreamW2);
    Vec x = cfg.x0;
    for (int n = 0; n < cfg.horizon; ++n) {
      const Vec w = prob.sampler(w2);
      const Vec g = prob.subgradient(x, w);
      x = project(prob.feasible_set, {x[0] - cfg.alpha.at(n) * g[0]});
      if (rec.rows[static_cast<std::size_t>(n) + 1].x[0] != x[0]) {
        detail = "divergence at iteration " + std::to_string(n) +
                 " for p = " + format_double(p);
        return false;
      }
    }
  }
  return true;
}

bool hand_trace(std::string& detail) {
  const std::uint64_t seed = 42;
  Problem prob;
  prob.dimension = 1;
  prob.cost = [](const Vec& x, const Vec& w) {
    return (x[0] - w[0]) * (x[0] - w[0]);
  };
  prob.subgradient = [](const Vec& x, const Vec& w) -> Vec {
    return {2.0 * (x[0] - w[0])};
  };
  const std::uint64_t key1 = RngStream(seed, kStreamW1).stream_key();
  prob.sampler = [key1](RngStream& rng) -> Vec {
    return {rng.stream_key() == key1 ? 1.0 : -1.0};
  };
  prob.feasible_set = WholeSpace{};

  SolverConfig cfg;
  cfg.p = 1.0;
  cfg.c = 1.0;
  cfg.reg = positive_part();
  cfg.alpha = {Constant{1.0}};
  cfg.beta = {Constant{1.0}};
  cfg.gamma = {Constant{1.0}};
  cfg.x0 = {0.0};

  SolverState state(cfg.x0, 0.0, 1.0, seed);
  step(state, cfg, prob);
  if (state.x[0] != -6.0) {
    detail = "x+ = " + format_double(state.x[0]) + ", expected -6";
    return false;
  }
  return state.y == 1.0 && state.z == 1.0;
}

bool iterate_boundedness(std::string& detail) {
  auto prob = quad();
  SolverConfig cfg = p2_config();
  cfg.horizon = 100000;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const RunRecord rec = run(cfg, prob, seed);
    const auto report = monitor_boundedness(rec, prob, cfg);
    if (!report.pass) {
      detail = "seed " + std::to_string(seed) + ": " +
               std::to_string(report.violations) +
               " violations, first at n = " +
               std::to_string(report.first_violation_n);
      return false;
    }
  }
  return true;
}

bool gradient_consistency(std::string& detail) {
  auto prob = quad();
  const auto reg = entropic(1.0);
  const double c = 0.5;
  const int n = 1000000;
  RngStream sampler(11, 5);
  std::vector<double> ws(static_cast<std::size_t>(n));

  RngStream xs(314, 0);
  for (double p : {1.0, 2.0}) {
    for (int k = 0; k < 3; ++k) {
      const double x = xs.uniform(-1.8, 1.8);

      // One common sample set for the direction and both FD evaluations.
      RngStream draw(1000 + k, 5);
      for (auto& w : ws) w = prob.sampler(draw)[0];

      auto objective = [&](double at) {
        double mean = 0.0;
        for (double w : ws) mean += prob.cost({at}, {w});
        mean /= n;
        double acc = 0.0;
        for (double w : ws)
          acc += std::pow(reg.value(prob.cost({at}, {w}) - mean), p);
        return mean + c * std::pow(acc / n, 1.0 / p);
      };

      double mean = 0.0, gbar = 0.0;
      for (double w : ws) {
        mean += prob.cost({x}, {w});
        gbar += prob.subgradient({x}, {w})[0];
      }
      mean /= n;
      gbar /= n;
      double zhat = 0.0;
      for (double w : ws)
        zhat += std::pow(reg.value(prob.cost({x}, {w}) - mean), p);
      zhat /= n;
      const double zfac = p > 1.0 ? std::pow(zhat, (1.0 - p) / p) : 1.0;
      double corr = 0.0;
      for (double w : ws) {
        const double delta = prob.cost({x}, {w}) - mean;
        corr += reg.subderivative(delta) *
                std::pow(reg.value(delta), p - 1.0) *
                (prob.subgradient({x}, {w})[0] - gbar);
      }
      const double direction = gbar + c * zfac * corr / n;

      const double h = 1e-4;
      const double fd = (objective(x + h) - objective(x - h)) / (2.0 * h);
      const double rel = std::abs(direction - fd) / std::max(std::abs(fd), 1e-12);
      if (rel > 1e-3) {
        detail = "p = " + format_double(p) + ", x = " + format_double(x) +
                 ": relative error " + format_double(rel);
        return false;
      }
    }
  }
  return true;
}

bool newsvendor_risk_neutral(std::string& detail) {
  struct Case {
    const char* name;
    double alpha, h;
  };
  for (const Case cs : {Case{"interior", 1.0, 10.0}, Case{"binding", 0.5, 0.0}}) {
    NewsvendorParams params{1.0, 4.0, 1.0, cs.alpha, cs.h,
                            uniform_demand(0.0, 1.0)};
    auto prob = newsvendor(params);
    const double star = newsvendor_closed_form(params);

    SolverConfig cfg;
    cfg.p = 1.0;
    cfg.c = 0.0;
    cfg.reg = positive_part();
    cfg.alpha = {StronglyConvexAlpha{4.0}};  // Ku * density at the optimum
    cfg.beta = {Subharmonic{2.0 / 3.0, 1.0}};
    cfg.gamma = {Constant{1.0}};
    // Start inside the demand support, where the expected cost has
    // curvature Ku * f_W; far outside it is linear and 1/(sigma n)
    // steps barely move.
    cfg.x0 = {std::min(0.5 * std::get<Interval>(prob.feasible_set).b, 1.0)};
    cfg.horizon = 100000;
    cfg.record_every = 100000;
    cfg.smoothing = true;
    const RunRecord rec = run(cfg, prob, 7);
    const double final_xs = rec.rows.back().xs[0];
    if (std::abs(final_xs - star) > 0.02) {
      detail = std::string(cs.name) + ": smoothed " + format_double(final_xs) +
               " vs closed form " + format_double(star);
      return false;
    }
  }
  return true;
}

bool newsvendor_ordering(std::string& detail) {
  NewsvendorParams params{1.0, 4.0, 1.0, 1.0, 10.0, uniform_demand(0.0, 1.0)};
  auto prob = newsvendor(params);
  std::vector<Vec> grid;
  for (int i = 0; i <= 1200; ++i) grid.push_back({i * 1e-3});

  const double c = 0.9;
  const auto nv_reg = newsvendor_piecewise(0.25, 0.5, 0.05, 0.15, 4.0);
  const auto [x_rn, v_rn] =
      grid_oracle(prob, positive_part(), 1.0, 0.0, grid, 200000, 99);
  const auto [x_nv, v_nv] = grid_oracle(prob, nv_reg, 1.0, c, grid, 200000, 99);
  const auto [x_usd, v_usd] =
      grid_oracle(prob, positive_part(), 1.0, c, grid, 200000, 99);

  detail = "oracle optima: risk-neutral " + format_double(x_rn[0]) +
           ", piecewise " + format_double(x_nv[0]) + ", upper-semideviation " +
           format_double(x_usd[0]);
  const bool between = (x_rn[0] < x_nv[0] && x_nv[0] < x_usd[0]) ||
                       (x_usd[0] < x_nv[0] && x_nv[0] < x_rn[0]);
  if (!between) return false;
  if (std::abs(x_rn[0] - 0.75) > 0.02) return false;
  detail.clear();
  return true;
}

SlopeFit rate_experiment(const SolverConfig& base, double sigma) {
  SolverConfig cfg = base;
  cfg.horizon = 100000;
  cfg.record_every = 100;
  auto prob = quad();
  (void)sigma;
  std::vector<RunRecord> records;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    records.push_back(run(cfg, prob, seed));
  auto raw = log_checkpoints(100, cfg.horizon, 12);
  std::vector<int> checkpoints;
  for (int n : raw) {
    const int r = std::max((n + 50) / 100 * 100, 100);
    if (checkpoints.empty() || r > checkpoints.back()) checkpoints.push_back(r);
  }
  const auto table = estimate_solution_error(records, {0.0}, checkpoints);
  return fit_loglog_slope(table, 100);
}

bool rate_p1(std::string& detail) {
  auto preset = strongly_convex_preset(1.0, 1.0, 0.0, 0.5);
  SolverConfig cfg;
  cfg.p = 1.0;
  cfg.c = 0.5;
  cfg.reg = positive_part();
  cfg.alpha = preset.alpha;
  cfg.beta = preset.beta;
  cfg.gamma = preset.gamma;
  cfg.x0 = {1.5};
  const auto fit = rate_experiment(cfg, 1.0);
  detail = "fitted slope " + format_double(fit.slope) + " (theory -2/3)";
  if (fit.slope <= -0.4) detail.clear();
  return detail.empty();
}

bool rate_p2(std::string& detail) {
  auto preset = strongly_convex_preset(2.0, 1.0, 0.1, 0.5);
  if (!check_pathwise_feasible(preset.exponents, 2.0).feasible) {
    detail = "preset exponents not pathwise feasible";
    return false;
  }
  SolverConfig cfg;
  cfg.p = 2.0;
  cfg.c = 0.5;
  cfg.reg = slack_adjust(positive_part(), 0.1);
  cfg.alpha = preset.alpha;
  cfg.beta = preset.beta;
  cfg.gamma = preset.gamma;
  cfg.x0 = {1.5};
  cfg.y0 = 0.5;
  cfg.z0 = 1.0;
  const auto fit = rate_experiment(cfg, 1.0);
  detail = "fitted slope " + format_double(fit.slope) + " (theory -0.45)";
  if (fit.slope <= -0.25) detail.clear();
  return detail.empty();
}

bool stepsize_validator(std::string& detail) {
  if (!check_pathwise_feasible({1.0, 0.9, 0.7}, 2.0).feasible) {
    detail = "(1, 0.9, 0.7) should be feasible for p = 2";
    return false;
  }
  if (check_pathwise_feasible({0.8, 0.7, 0.6}, 2.0).feasible) {
    detail = "(0.8, 0.7, 0.6) should be rejected for p = 2";
    return false;
  }
  if (convex_rate_exponent({0.75, 0.5, 0.0}, 1.0) != 0.25) {
    detail = "p = 1 preset exponent is not exactly 1/4";
    return false;
  }
  if (convex_rate_exponent({0.875, 0.75, 0.5}, 2.0) != 0.125) {
    detail = "p = 2 preset exponent is not exactly 1/8";
    return false;
  }
  return true;
}

bool risk_measure_properties(std::string& detail) {
  RngStream rng(606, 0);
  const auto reg = positive_part();
  const double p = 1.0, c = 0.5;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> z2(128);
    for (auto& x : z2)
      x = static_cast<double>(static_cast<int>(rng.next_u64() % 2048) - 1024) /
          1024.0;
    auto z1 = z2;
    for (auto& x : z1)
      x += static_cast<double>(rng.next_u64() % 1024) / 1024.0;

    if (empirical_risk(z1, reg, p, c) < empirical_risk(z2, reg, p, c)) {
      detail = "monotonicity violated at trial " + std::to_string(trial);
      return false;
    }

    const double a =
        static_cast<double>(static_cast<int>(rng.next_u64() % 2048) - 1024) /
        1024.0;
    auto shifted = z2;
    for (auto& x : shifted) x += a;
    if (empirical_risk(shifted, reg, p, c) !=
        empirical_risk(z2, reg, p, c) + a) {
      detail = "translation equivariance not exact at trial " +
               std::to_string(trial);
      return false;
    }

    // Convexity, allowing three bootstrap standard errors of slack.
    const double r1 = empirical_risk(z1, reg, p, c);
    const double r2 = empirical_risk(z2, reg, p, c);
    for (double lambda : {0.25, 0.5, 0.75}) {
      std::vector<double> mix(z1.size());
      for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = lambda * z1[i] + (1.0 - lambda) * z2[i];
      const double rm = empirical_risk(mix, reg, p, c);
      RngStream boot(trial * 4 + static_cast<int>(4 * lambda), 13);
      double bsum = 0.0, bsq = 0.0;
      std::vector<double> resample(mix.size());
      for (int b = 0; b < 200; ++b) {
        for (auto& r : resample) r = mix[boot.next_u64() % mix.size()];
        const double v = empirical_risk(resample, reg, p, c);
        bsum += v;
        bsq += v * v;
      }
      const double se =
          std::sqrt(std::max(bsq / 200 - (bsum / 200) * (bsum / 200), 0.0));
      if (rm > lambda * r1 + (1.0 - lambda) * r2 + 3.0 * se + 1e-12) {
        detail = "convexity violated at trial " + std::to_string(trial);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "regularizer axiom suite", axiom_suite);
  criterion(2, "cdf representation round trip", cdf_round_trip);
  criterion(3, "c = 0 reduction to projected SGD", sgd_reduction);
  criterion(4, "single-iteration hand trace", hand_trace);
  criterion(5, "iterate boundedness (p = 2)", iterate_boundedness);
  criterion(6, "gradient-formula consistency", gradient_consistency);
  criterion(7, "newsvendor risk-neutral closed form", newsvendor_risk_neutral);
  criterion(8, "newsvendor risk-averse ordering", newsvendor_ordering);
  criterion(9, "strongly convex rate, p = 1", rate_p1);
  criterion(10, "strongly convex rate, p = 2", rate_p2);
  criterion(11, "stepsize validator and exponents", stepsize_validator);
  criterion(12, "empirical risk-measure properties", risk_measure_properties);
  if (g_failures == 0) std::printf("all 12 acceptance criteria passed\n");
  return g_failures;
}
