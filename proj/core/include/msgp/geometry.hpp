#pragma once

#include <string>
#include <variant>
#include <vector>

namespace msgp {

using Vec = std::vector<double>;

/// Closed convex feasible sets with exact projection formulas.
struct WholeSpace {};

struct Box {
  Vec lower, upper;
};

struct Interval {
  double a, b;
};

struct Ball {
  Vec center;
  double radius;
};

struct Halfspace {
  Vec normal;   // set is { x : <normal, x> <= offset }
  double offset;
};

struct Simplex {
  std::size_t dim;  // { x >= 0 : sum x_i = 1 }
};

using ConvexSet = std::variant<WholeSpace, Box, Interval, Ball, Halfspace, Simplex>;

/// Euclidean projection onto the set. Throws on dimension mismatch.
Vec project(const ConvexSet& set, const Vec& x);

/// Membership test up to tolerance (used by trajectory monitors).
bool contains(const ConvexSet& set, const Vec& x, double tol);

std::string set_name(const ConvexSet& set);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

}  // namespace msgp
