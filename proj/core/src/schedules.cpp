#include "msgp/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msgp {

double StepsizeSchedule::at(int n) const {
  return std::visit(
      [n](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Subharmonic>) {
          return n == 0 ? r.initial : std::pow(static_cast<double>(n), -r.tau);
        } else if constexpr (std::is_same_v<T, StronglyConvexAlpha>) {
          return n == 0 ? 1.0 : 1.0 / (r.sigma * static_cast<double>(n));
        } else {
          return r.value;
        }
      },
      rule);
}

std::string StepsizeSchedule::describe() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Subharmonic>) {
          return "n^-" + std::to_string(r.tau) + " (a_0=" +
                 std::to_string(r.initial) + ")";
        } else if constexpr (std::is_same_v<T, StronglyConvexAlpha>) {
          return "1/(" + std::to_string(r.sigma) + " n)";
        } else {
          return "constant " + std::to_string(r.value);
        }
      },
      rule);
}

FeasibilityReport check_pathwise_feasible(const ExponentTriple& t, double p) {
  FeasibilityReport rep;
  auto require = [&rep](bool ok, const std::string& what) {
    if (!ok) {
      rep.feasible = false;
      rep.violations.push_back(what);
    }
  };
  if (p > 1.0) {
    require(t.tau1 > 7.0 / 8.0, "tau1 must exceed 7/8");
    require(t.tau1 <= 1.0, "tau1 must be at most 1");
    require(t.tau2 > 3.0 / 4.0, "tau2 must exceed 3/4");
    require(t.tau2 < 2.0 * t.tau1 - 1.0, "tau2 must be below 2 tau1 - 1");
    require(t.tau3 > 1.0 / 2.0, "tau3 must exceed 1/2");
    require(t.tau3 < 2.0 * t.tau2 - 1.0, "tau3 must be below 2 tau2 - 1");
  } else {
    require(t.tau1 > 3.0 / 4.0, "tau1 must exceed 3/4");
    require(t.tau1 <= 1.0, "tau1 must be at most 1");
    require(t.tau2 > 1.0 / 2.0, "tau2 must exceed 1/2");
    require(t.tau2 < 2.0 * t.tau1 - 1.0, "tau2 must be below 2 tau1 - 1");
  }
  return rep;
}

double convex_rate_exponent(const ExponentTriple& t, double p) {
  if (!(t.tau1 > 0.0 && t.tau1 <= 1.0 && t.tau2 > 0.0 && t.tau2 < 1.0))
    throw std::invalid_argument("convex_rate_exponent: exponents out of range");
  if (!(t.tau2 <= t.tau1))
    throw std::invalid_argument("convex_rate_exponent: need tau2 <= tau1");
  if (p > 1.0) {
    if (!(t.tau3 > 0.0 && t.tau3 < 1.0 && t.tau3 <= t.tau2))
      throw std::invalid_argument("convex_rate_exponent: need 0 < tau3 <= tau2");
    return std::min({1.0 - t.tau1, t.tau1 - t.tau2, 2.0 * t.tau3 - t.tau1,
                     2.0 * t.tau2 - t.tau1 - t.tau3});
  }
  return std::min({1.0 - t.tau1, t.tau1 - t.tau2, 2.0 * t.tau2 - t.tau1});
}

ExponentTriple convex_preset_exponents(double p, double epsilon, double delta,
                                       double zeta) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("convex_preset_exponents: epsilon in [0,1)");
  // zeta == delta would put tau3 exactly on the 2 tau2 - 1 boundary.
  if (!(delta > 0.0 && delta < 1.0 && zeta > 0.0 && zeta < delta))
    throw std::invalid_argument(
        "convex_preset_exponents: need 0 < zeta < delta < 1");
  ExponentTriple t;
  if (p > 1.0) {
    t.tau1 = (7.0 + epsilon) / 8.0;
    t.tau2 = (3.0 + delta * epsilon) / 4.0;
    t.tau3 = (1.0 + zeta * epsilon) / 2.0;
  } else {
    t.tau1 = (3.0 + epsilon) / 4.0;
    t.tau2 = (1.0 + delta * epsilon) / 2.0;
    t.tau3 = 0.0;
  }
  return t;
}

SchedulePreset strongly_convex_preset(double p, double sigma, double epsilon,
                                      double delta) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("strongly_convex_preset: sigma must be > 0");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("strongly_convex_preset: epsilon in [0,1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("strongly_convex_preset: delta in (0,1)");
  SchedulePreset out;
  out.alpha.rule = StronglyConvexAlpha{sigma};
  if (p > 1.0) {
    out.exponents.tau2 = (3.0 + epsilon) / 4.0;
    out.exponents.tau3 = (1.0 + delta * epsilon) / 2.0;
    out.beta.rule = Subharmonic{out.exponents.tau2, 1.0};
    out.gamma.rule = Subharmonic{out.exponents.tau3, 1.0};
    out.predicted_exponent = (1.0 - epsilon) / 2.0;
  } else {
    out.exponents.tau2 = 2.0 / 3.0;
    out.beta.rule = Subharmonic{out.exponents.tau2, 1.0};
    out.gamma.rule = Constant{1.0};
    out.predicted_exponent = 2.0 / 3.0;
  }
  out.exponents.tau1 = 1.0;
  return out;
}

GeneratorReport check_generator_conditions(const StepsizeSchedule& alpha,
                                           const StepsizeSchedule& beta,
                                           const StepsizeSchedule& gamma,
                                           double sigma, int horizon) {
  if (horizon < 3)
    throw std::invalid_argument("check_generator_conditions: horizon >= 3");
  GeneratorReport rep;
  int last_bad = 1;  // conditions scanned from n = 2
  for (int n = 2; n <= horizon; ++n) {
    const double a_n = alpha.at(n), a_next = alpha.at(n + 1);
    const double b_prev = beta.at(n - 1), b_n = beta.at(n);
    const double g_prev = gamma.at(n - 1), g_n = gamma.at(n);
    const bool g1 = sigma * a_n <= 0.5 * std::min(b_prev, g_prev);
    const bool g2 = a_next * b_prev <= a_n * b_n && a_next * g_prev <= a_n * g_n;
    if (!(g1 && g2)) last_bad = n;
  }
  if (last_bad < horizon) {
    rep.found = true;
    rep.n0 = last_bad + 1;
  }
  return rep;
}

int rate_onset(double tau2) {
  if (!(tau2 > 0.0 && tau2 < 1.0))
    throw std::invalid_argument("rate_onset: tau2 in (0,1)");
  return static_cast<int>(
      std::ceil(1.0 / (1.0 - std::pow(tau2, 1.0 / (tau2 + 1.0)))));
}

}  // namespace msgp
