#include "msgp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msgp {

DemandDistribution uniform_demand(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform_demand: need a < b");
  DemandDistribution d;
  d.cdf = [a, b](double w) {
    if (w <= a) return 0.0;
    if (w >= b) return 1.0;
    return (w - a) / (b - a);
  };
  d.quantile = [a, b](double q) { return a + q * (b - a); };
  d.sample = [a, b](RngStream& rng) { return rng.uniform(a, b); };
  d.support = {{a, b}};
  d.name = "uniform";
  return d;
}

DemandDistribution rayleigh_demand(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("rayleigh_demand: scale > 0");
  DemandDistribution d;
  d.cdf = [scale](double w) {
    if (w <= 0.0) return 0.0;
    const double r = w / scale;
    return 1.0 - std::exp(-0.5 * r * r);
  };
  d.quantile = [scale](double q) {
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return scale * std::sqrt(-2.0 * std::log1p(-q));
  };
  d.sample = [scale](RngStream& rng) {
    // Inverse transform; 1 - U avoids log(0) since U in [0, 1).
    return scale * std::sqrt(-2.0 * std::log1p(-rng.next_double()));
  };
  d.name = "rayleigh";
  return d;
}

DemandDistribution exponential_demand(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential_demand: rate > 0");
  DemandDistribution d;
  d.cdf = [rate](double w) { return w <= 0.0 ? 0.0 : 1.0 - std::exp(-rate * w); };
  d.quantile = [rate](double q) {
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-q) / rate;
  };
  d.sample = [rate](RngStream& rng) {
    return -std::log1p(-rng.next_double()) / rate;
  };
  d.name = "exponential";
  return d;
}

Problem quadratic_1d(double sigma, double noise_scale, double lo, double hi) {
  if (!(sigma > 0.0)) throw std::invalid_argument("quadratic_1d: sigma > 0");
  if (!(noise_scale >= 0.0))
    throw std::invalid_argument("quadratic_1d: noise_scale >= 0");
  if (!(lo <= hi)) throw std::invalid_argument("quadratic_1d: empty box");
  Problem p;
  p.dimension = 1;
  p.cost = [sigma](const Vec& x, const Vec& w) {
    const double d = x[0] - w[0];
    return sigma * d * d;
  };
  p.subgradient = [sigma](const Vec& x, const Vec& w) -> Vec {
    return {2.0 * sigma * (x[0] - w[0])};
  };
  p.sampler = [noise_scale](RngStream& rng) -> Vec {
    return {rng.uniform(-noise_scale, noise_scale)};
  };
  p.feasible_set = Interval{lo, hi};
  // Essential range of sigma (x - w)^2 over x in [lo, hi], |w| <= noise_scale.
  const double gap = std::max({lo - noise_scale, -noise_scale - hi, 0.0});
  const double reach = std::max(std::abs(lo), std::abs(hi)) + noise_scale;
  p.bounds = {{sigma * gap * gap, sigma * reach * reach}};
  p.strong_convexity = 2.0 * sigma;
  p.label = "quadratic_1d";
  return p;
}

namespace {

double feasible_upper(const NewsvendorParams& params) {
  return params.demand.quantile(params.alpha) + params.h / params.Kh;
}

}  // namespace

Problem newsvendor(const NewsvendorParams& params) {
  if (!(params.Kp > 0.0 && params.Ku > 0.0 && params.Kh > 0.0))
    throw std::invalid_argument("newsvendor: unit costs must be > 0");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0))
    throw std::invalid_argument("newsvendor: alpha in [0,1]");
  if (!(params.h >= 0.0)) throw std::invalid_argument("newsvendor: h >= 0");
  const double upper = feasible_upper(params);
  if (!(upper > 0.0))
    throw std::invalid_argument("newsvendor: trivial feasible set [0, 0]");

  Problem p;
  p.dimension = 1;
  const double Kp = params.Kp, Ku = params.Ku;
  p.cost = [Kp, Ku](const Vec& x, const Vec& w) {
    return Kp * x[0] + Ku * std::max(w[0] - x[0], 0.0);
  };
  // Right-derivative convention at w == x gives Kp.
  p.subgradient = [Kp, Ku](const Vec& x, const Vec& w) -> Vec {
    return {w[0] > x[0] ? Kp - Ku : Kp};
  };
  p.sampler = [sample = params.demand.sample](RngStream& rng) -> Vec {
    return {sample(rng)};
  };
  p.feasible_set = Interval{0.0, upper};
  if (params.demand.support) {
    const double b = params.demand.support->second;
    p.bounds = {{0.0, Kp * upper + Ku * b}};
  }
  p.label = "newsvendor(" + params.demand.name + ")";
  return p;
}

double newsvendor_closed_form(const NewsvendorParams& params) {
  if (params.Ku <= params.Kp) return 0.0;
  const double critical =
      params.demand.quantile((params.Ku - params.Kp) / params.Ku);
  return std::min(critical, feasible_upper(params));
}

ConditionReport check_kappa_condition(const Problem& problem,
                                      const RiskRegularizer& reg, double p,
                                      int n_samples, int n_points,
                                      RngStream& rng) {
  ConditionReport report;
  if (p <= 1.0) {
    report.detail = "vacuous for p = 1";
    return report;
  }

  constexpr double kFar = 1e6;
  if (reg.value(-kFar) > 0.0) {
    report.kappa = -std::numeric_limits<double>::infinity();
    report.detail = "regularizer strictly positive; kappa = -inf";
    return report;
  }
  double hi = 1.0;
  while (reg.value(hi) == 0.0 && hi < kFar) hi *= 2.0;
  double lo = -kFar;
  for (int i = 0; i < 200; ++i) {  // bisect sup{x : R(x) = 0}
    const double mid = 0.5 * (lo + hi);
    (reg.value(mid) == 0.0 ? lo : hi) = mid;
  }
  report.kappa = lo;

  std::vector<double> costs(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_points; ++k) {
    Vec x(problem.dimension);
    for (auto& xi : x) xi = rng.uniform(-10.0, 10.0);
    x = project(problem.feasible_set, x);
    double mean = 0.0;
    for (auto& f : costs) {
      Vec w = problem.sampler(rng);
      f = problem.cost(x, w);
      mean += f;
    }
    mean /= static_cast<double>(n_samples);
    // Small absolute slack so deterministic costs (F identically E F) count
    // as mass at kappa despite rounding in the sample mean.
    const double tol = 1e-9 * (1.0 + std::abs(mean));
    std::size_t below = 0;
    for (double f : costs)
      if (f - mean <= report.kappa + tol) ++below;
    const double prob = static_cast<double>(below) / static_cast<double>(n_samples);
    report.max_probability = std::max(report.max_probability, prob);
  }
  report.pass = report.max_probability < 1.0 - 1e-3;
  if (!report.pass)
    report.detail = "cost mass at or below kappa_R; apply slack_adjust";
  return report;
}

}  // namespace msgp
