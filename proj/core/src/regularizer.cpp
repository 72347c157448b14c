#include "msgp/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace msgp {
namespace {

constexpr double kLeftTailMass = 1e-8;

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Cumulative trapezoid table of a cdf over [lo, hi]; linear (slope = scale)
// continuation above hi, zero below lo.
class CdfIntegral {
 public:
  CdfIntegral(std::function<double(double)> cdf, double scale, double intercept,
              double lo, double hi, double step)
      : cdf_(std::move(cdf)),
        scale_(scale),
        intercept_(intercept),
        lo_(lo),
        step_(step) {
    const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    cum_.resize(n);
    f_.resize(n);
    f_[0] = cdf_(lo);
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      f_[i] = cdf_(lo + static_cast<double>(i) * step_);
      cum_[i] = cum_[i - 1] + 0.5 * step_ * (f_[i - 1] + f_[i]);
    }
  }

  double value(double x) const {
    if (x <= lo_) return intercept_;
    const double hi = lo_ + static_cast<double>(cum_.size() - 1) * step_;
    if (x >= hi) {
      // cdf is within kLeftTailMass of its upper limit here; extend with the
      // exact slope scale_ * cdf(hi).
      return intercept_ + scale_ * (cum_.back() + f_.back() * (x - hi));
    }
    const double pos = (x - lo_) / step_;
    const auto i = static_cast<std::size_t>(pos);
    const double x_i = lo_ + static_cast<double>(i) * step_;
    const double f_x = cdf_(x);
    const double partial = 0.5 * (x - x_i) * (f_[i] + f_x);
    return intercept_ + scale_ * (cum_[i] + partial);
  }

  double subderivative(double x) const { return scale_ * cdf_(x); }

 private:
  std::function<double(double)> cdf_;
  double scale_, intercept_, lo_, step_;
  std::vector<double> f_;
  std::vector<double> cum_;
};

}  // namespace

RiskRegularizer positive_part() {
  RiskRegularizer r;
  r.value = [](double x) { return x > 0.0 ? x : 0.0; };
  r.subderivative = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
  r.kink_points = {0.0};
  r.label = "positive_part";
  return r;
}

RiskRegularizer entropic(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("entropic: t must be > 0");
  RiskRegularizer r;
  // Overflow-safe softplus: for tx > 30, log(1+exp(tx))/t = x + exp(-tx)/t.
  r.value = [t](double x) {
    const double tx = t * x;
    if (tx > 30.0) return x + std::exp(-tx) / t;
    return std::log1p(std::exp(tx)) / t;
  };
  r.subderivative = [t](double x) {
    const double tx = t * x;
    if (tx >= 0.0) return 1.0 / (1.0 + std::exp(-tx));
    const double e = std::exp(tx);
    return e / (1.0 + e);
  };
  r.label = "entropic(" + std::to_string(t) + ")";
  return r;
}

RiskRegularizer gaussian_antiderivative() {
  RiskRegularizer r;
  r.value = [](double x) { return x * std_normal_cdf(x) + std_normal_pdf(x); };
  r.subderivative = [](double x) { return std_normal_cdf(x); };
  r.label = "gaussian_antiderivative";
  return r;
}

RiskRegularizer newsvendor_piecewise(double psi1, double psi2, double t1,
                                     double t2, double Ku) {
  if (!(0.0 <= psi1 && psi1 <= psi2 && psi2 <= 1.0))
    throw std::invalid_argument("newsvendor_piecewise: need 0 <= psi1 <= psi2 <= 1");
  if (!(0.0 < t1 && t1 < t2))
    throw std::invalid_argument("newsvendor_piecewise: need 0 < t1 < t2");
  if (!(Ku > 0.0)) throw std::invalid_argument("newsvendor_piecewise: need Ku > 0");
  const double k1 = Ku * t1;
  const double k2 = Ku * t2;
  RiskRegularizer r;
  r.value = [psi1, psi2, k1, k2](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= k1) return psi1 * x;
    if (x <= k2) return psi2 * x + (psi1 - psi2) * k1;
    return x + (psi2 - 1.0) * k2 + (psi1 - psi2) * k1;
  };
  r.subderivative = [psi1, psi2, k1, k2](double x) {
    if (x < 0.0) return 0.0;
    if (x < k1) return psi1;
    if (x < k2) return psi2;
    return 1.0;
  };
  r.kink_points = {0.0, k1, k2};
  r.label = "newsvendor_piecewise";
  return r;
}

RiskRegularizer slack_adjust(const RiskRegularizer& base, double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("slack_adjust: eta must be >= 0");
  RiskRegularizer r;
  r.value = [v = base.value, eta](double x) { return v(x) + eta; };
  r.subderivative = base.subderivative;
  r.kink_points = base.kink_points;
  r.label = base.label + "+slack(" + std::to_string(eta) + ")";
  return r;
}

RiskRegularizer from_cdf(const CdfSpec& spec) {
  if (!(spec.scale > 0.0 && spec.scale <= 1.0))
    throw std::invalid_argument("from_cdf: scale must be in (0, 1]");
  if (!(spec.intercept >= 0.0))
    throw std::invalid_argument("from_cdf: intercept must be >= 0");
  if (!(spec.quadrature_step > 0.0))
    throw std::invalid_argument("from_cdf: quadrature_step must be > 0");

  // Find the left truncation point where the cdf mass is negligible. A cdf
  // whose left tail does not decay makes the antiderivative divergent.
  double lo = -1.0;
  while (spec.cdf(lo) >= kLeftTailMass) {
    lo *= 2.0;
    if (lo < -1e6)
      throw std::invalid_argument(
          "from_cdf: left tail of cdf does not decay; antiderivative diverges");
  }
  double hi = 1.0;
  while (spec.cdf(hi) <= 1.0 - kLeftTailMass && hi < 1e6) hi *= 2.0;

  auto table = std::make_shared<CdfIntegral>(spec.cdf, spec.scale, spec.intercept,
                                             lo, hi, spec.quadrature_step);
  RiskRegularizer r;
  r.value = [table](double x) { return table->value(x); };
  r.subderivative = [table](double x) { return table->subderivative(x); };
  r.label = "from_cdf";
  return r;
}

CdfSpec extract_cdf(const RiskRegularizer& reg, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("extract_cdf: empty grid");
  double scale = 0.0;
  double intercept = reg.value(grid.front());
  for (double x : grid) {
    scale = std::max(scale, reg.subderivative(x));
    intercept = std::min(intercept, reg.value(x));
  }
  if (scale == 0.0)
    throw std::invalid_argument(
        "extract_cdf: regularizer is constant on the grid; widen the grid");
  CdfSpec spec;
  spec.cdf = [sub = reg.subderivative, scale](double x) { return sub(x) / scale; };
  spec.scale = scale;
  spec.intercept = intercept;
  return spec;
}

AxiomReport validate_axioms(const RiskRegularizer& reg,
                            const std::vector<double>& grid, double tol) {
  AxiomReport report;
  AxiomReport::Check nonneg{"nonnegativity"};
  AxiomReport::Check mono{"monotonicity"};
  AxiomReport::Check nonexp{"nonexpansiveness"};
  AxiomReport::Check convex{"midpoint_convexity"};
  AxiomReport::Check sub_range{"subderivative_range"};
  AxiomReport::Check sub_mono{"subderivative_monotone"};

  auto record = [tol](AxiomReport::Check& c, double violation, double at) {
    if (violation > tol && violation > c.worst_violation) {
      if (c.pass) c.at = at;
      c.pass = false;
      c.worst_violation = violation;
    }
  };

  const std::size_t n = grid.size();
  std::vector<double> v(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = reg.value(grid[i]);
    s[i] = reg.subderivative(grid[i]);
    record(nonneg, -v[i], grid[i]);
    record(sub_range, std::max(-s[i], s[i] - 1.0), grid[i]);
    if (i > 0) {
      record(mono, v[i - 1] - v[i], grid[i]);
      record(sub_mono, s[i - 1] - s[i], grid[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      record(nonexp, std::abs(v[j] - v[i]) - (grid[j] - grid[i]), grid[i]);
      const double mid = reg.value(0.5 * (grid[i] + grid[j]));
      record(convex, mid - 0.5 * (v[i] + v[j]), grid[i]);
    }
  }
  report.checks = {nonneg, mono, nonexp, convex, sub_range, sub_mono};
  return report;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  g.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

}  // namespace msgp
