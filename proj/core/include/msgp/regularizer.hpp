#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace msgp {

/// Scalar risk regularizer: a convex, nonnegative, nondecreasing,
/// nonexpansive map together with a chosen subderivative (right-derivative
/// convention, so the extracted cdf is right-continuous).
struct RiskRegularizer {
  std::function<double(double)> value;
  std::function<double(double)> subderivative;
  std::vector<double> kink_points;  // ordered, may be empty
  std::string label;
};

/// Parameters for building a regularizer as a scaled cdf antiderivative,
///   R(x) = scale * Integral_{-inf}^{x} cdf(y) dy + intercept.
struct CdfSpec {
  std::function<double(double)> cdf;  // nondecreasing, right-continuous, [0,1]
  double scale = 1.0;                 // C_S in (0, 1]
  double intercept = 0.0;             // C_I >= 0
  double quadrature_step = 1e-3;
};

struct AxiomReport {
  struct Check {
    std::string name;
    bool pass = true;
    double worst_violation = 0.0;
    double at = 0.0;  // first violating grid point, if any
  };
  std::vector<Check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Built-in catalog.
RiskRegularizer positive_part();
RiskRegularizer entropic(double t);
RiskRegularizer gaussian_antiderivative();
RiskRegularizer newsvendor_piecewise(double psi1, double psi2, double t1,
                                     double t2, double Ku);
RiskRegularizer slack_adjust(const RiskRegularizer& base, double eta);

/// Builds the regularizer from a cdf via trapezoidal quadrature, truncating
/// the left tail where the cdf drops below 1e-8. Throws std::invalid_argument
/// if no such truncation point exists (non-decaying left tail).
RiskRegularizer from_cdf(const CdfSpec& spec);

/// Recovers a CdfSpec from a regularizer on a finite grid:
/// scale = max subderivative, intercept = min value, cdf = subderivative/scale.
/// Throws std::invalid_argument if the regularizer is constant on the grid.
CdfSpec extract_cdf(const RiskRegularizer& reg, const std::vector<double>& grid);

/// Grid checks for nonnegativity, monotonicity, nonexpansiveness, midpoint
/// convexity and the subderivative range/monotonicity. Failures are data.
AxiomReport validate_axioms(const RiskRegularizer& reg,
                            const std::vector<double>& grid, double tol);

/// Evenly spaced grid [lo, hi] with the given step (inclusive of hi).
std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace msgp
