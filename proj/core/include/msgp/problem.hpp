#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msgp/geometry.hpp"
#include "msgp/regularizer.hpp"
#include "msgp/rng.hpp"

namespace msgp {

/// Random cost F(x, W) with a measurable subgradient selection, a sampler
/// for the noise distribution, and a feasible set with exact projection.
struct Problem {
  std::size_t dimension = 1;
  std::function<double(const Vec&, const Vec&)> cost;
  std::function<Vec(const Vec&, const Vec&)> subgradient;
  std::function<Vec(RngStream&)> sampler;
  ConvexSet feasible_set;
  std::optional<std::pair<double, double>> bounds;  // (m_l, m_h)
  std::optional<double> strong_convexity;
  std::string label;
};

/// Demand distribution with closed-form cdf and quantile, so the
/// chance-constraint reformulation is exact.
struct DemandDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;  // argument in [0, 1]
  std::function<double(RngStream&)> sample;
  std::optional<std::pair<double, double>> support;  // absent if unbounded
  std::string name;
};

DemandDistribution uniform_demand(double a, double b);
DemandDistribution rayleigh_demand(double scale);
DemandDistribution exponential_demand(double rate);

struct NewsvendorParams {
  double Kp, Ku, Kh;
  double alpha;  // chance-constraint tolerance
  double h;      // holding-cost threshold
  DemandDistribution demand;
};

/// F(x, w) = sigma (x - w)^2 with w ~ Uniform[-noise_scale, noise_scale] on
/// the given box; the stored strong-convexity modulus is 2 sigma.
Problem quadratic_1d(double sigma, double noise_scale, double lo, double hi);

/// F(x, w) = Kp x + Ku (w - x)_+ on [0, F_W^{-1}(alpha) + h/Kh].
Problem newsvendor(const NewsvendorParams& params);

/// Risk-neutral optimum: 0 if Ku <= Kp, else
/// min{ F_W^{-1}((Ku - Kp)/Ku), F_W^{-1}(alpha) + h/Kh }.
double newsvendor_closed_form(const NewsvendorParams& params);

struct ConditionReport {
  bool pass = true;
  double kappa = 0.0;              // estimated sup{x : R(x) = 0}
  double max_probability = 0.0;    // worst MC estimate over tested points
  std::string detail;
};

/// For p > 1, estimates kappa_R by bisection and Monte-Carlo checks that
/// P(F(x,W) - E F(x,W) <= kappa_R) < 1 at n_points random feasible x.
/// Vacuous (trivially passing) when p == 1.
ConditionReport check_kappa_condition(const Problem& problem,
                                      const RiskRegularizer& reg, double p,
                                      int n_samples, int n_points,
                                      RngStream& rng);

}  // namespace msgp
