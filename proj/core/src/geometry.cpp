#include "msgp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msgp {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Vec project_simplex(std::size_t dim, const Vec& x) {
  require_dim(dim, x.size(), "simplex");
  // Sort-and-threshold projection onto the unit simplex.
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0;
  double theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  Vec p(dim);
  (void)rho;
  for (std::size_t i = 0; i < dim; ++i) p[i] = std::max(x[i] - theta, 0.0);
  return p;
}

}  // namespace

Vec project(const ConvexSet& set, const Vec& x) {
  // Near-members are their own projection. This makes projection exactly
  // idempotent for the ball/halfspace/simplex formulas, whose outputs can
  // land a few ulps outside the set; the snap is far below solver tolerances.
  if (!std::holds_alternative<WholeSpace>(set) &&
      !std::holds_alternative<Box>(set) &&
      !std::holds_alternative<Interval>(set) && contains(set, x, 1e-12))
    return x;
  return std::visit(
      [&x](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return x;
        } else if constexpr (std::is_same_v<T, Box>) {
          require_dim(s.lower.size(), x.size(), "box");
          Vec p(x.size());
          for (std::size_t i = 0; i < x.size(); ++i)
            p[i] = std::clamp(x[i], s.lower[i], s.upper[i]);
          return p;
        } else if constexpr (std::is_same_v<T, Interval>) {
          require_dim(1, x.size(), "interval");
          return {std::clamp(x[0], s.a, s.b)};
        } else if constexpr (std::is_same_v<T, Ball>) {
          require_dim(s.center.size(), x.size(), "ball");
          Vec d(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - s.center[i];
          const double r = norm2(d);
          if (r <= s.radius) return x;
          Vec p(x.size());
          const double scale = s.radius / r;
          for (std::size_t i = 0; i < x.size(); ++i)
            p[i] = s.center[i] + scale * d[i];
          return p;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          require_dim(s.normal.size(), x.size(), "halfspace");
          const double excess = dot(s.normal, x) - s.offset;
          if (excess <= 0.0) return x;
          const double nn = dot(s.normal, s.normal);
          Vec p(x.size());
          for (std::size_t i = 0; i < x.size(); ++i)
            p[i] = x[i] - excess / nn * s.normal[i];
          return p;
        } else {
          return project_simplex(s.dim, x);
        }
      },
      set);
}

bool contains(const ConvexSet& set, const Vec& x, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return true;
        } else if constexpr (std::is_same_v<T, Box>) {
          if (x.size() != s.lower.size()) return false;
          for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < s.lower[i] - tol || x[i] > s.upper[i] + tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return x.size() == 1 && x[0] >= s.a - tol && x[0] <= s.b + tol;
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (x.size() != s.center.size()) return false;
          Vec d(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - s.center[i];
          return norm2(d) <= s.radius + tol;
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return x.size() == s.normal.size() && dot(s.normal, x) <= s.offset + tol;
        } else {
          if (x.size() != s.dim) return false;
          double sum = 0.0;
          for (double xi : x) {
            if (xi < -tol) return false;
            sum += xi;
          }
          return std::abs(sum - 1.0) <= tol;
        }
      },
      set);
}

std::string set_name(const ConvexSet& set) {
  switch (set.index()) {
    case 0: return "whole_space";
    case 1: return "box";
    case 2: return "interval";
    case 3: return "ball";
    case 4: return "halfspace";
    default: return "simplex";
  }
}

}  // namespace msgp
