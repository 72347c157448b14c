#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace msgp {

/// a_0 = initial, a_n = n^{-tau} for n >= 1.
struct Subharmonic {
  double tau;
  double initial = 1.0;
};

/// alpha_0 = 1, alpha_n = 1/(sigma n) for n >= 1.
struct StronglyConvexAlpha {
  double sigma;
};

struct Constant {
  double value;
};

struct StepsizeSchedule {
  std::variant<Subharmonic, StronglyConvexAlpha, Constant> rule;
  double at(int n) const;
  std::string describe() const;
};

struct ExponentTriple {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;  // ignored when p == 1
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violations;
};

struct GeneratorReport {
  bool found = false;
  int n0 = -1;  // smallest n beyond which G1 and G2 both hold up to horizon
};

struct SchedulePreset {
  StepsizeSchedule alpha, beta, gamma;
  ExponentTriple exponents;
  double predicted_exponent = 0.0;
};

/// Exact strict-inequality feasibility of the summability constraint set for
/// subharmonic exponents (three stepsizes when p > 1, two when p == 1).
FeasibilityReport check_pathwise_feasible(const ExponentTriple& t, double p);

/// Theoretical L1-suboptimality exponent under iterate smoothing:
/// min{1-t1, t1-t2, 2 t2-t1} for p == 1, and
/// min{1-t1, t1-t2, 2 t3-t1, 2 t2-t1-t3} for p > 1.
double convex_rate_exponent(const ExponentTriple& t, double p);

/// Subharmonic exponents for the convex-rate guarantee at slack epsilon:
/// p == 1: (3+eps)/4, (1+delta eps)/2;  p > 1: (7+eps)/8, (3+delta eps)/4,
/// (1+zeta eps)/2 with zeta < delta (strict, so tau3 stays feasible).
ExponentTriple convex_preset_exponents(double p, double epsilon, double delta,
                                       double zeta);

/// Schedules for the strongly convex rate theorems: alpha_n = 1/(sigma n),
/// beta_n = n^{-(3+eps)/4} (p > 1) or n^{-2/3} (p == 1), gamma_n =
/// n^{-(1+delta eps)/2}; predicted squared-L2 exponent (1-eps)/2, resp. 2/3.
SchedulePreset strongly_convex_preset(double p, double sigma, double epsilon,
                                      double delta);

/// Scans n = 2..horizon for the rate-generator conditions with K = 2:
/// sigma alpha_n <= 1/2 min{beta_{n-1}, gamma_{n-1}} and
/// alpha_{n+1} beta_{n-1} <= alpha_n beta_n (likewise for gamma).
GeneratorReport check_generator_conditions(const StepsizeSchedule& alpha,
                                           const StepsizeSchedule& beta,
                                           const StepsizeSchedule& gamma,
                                           double sigma, int horizon);

/// n_o(tau2) = ceil(1 / (1 - tau2^{1/(tau2+1)})), start of the strongly
/// convex rate bound's validity range.
int rate_onset(double tau2);

}  // namespace msgp
