#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "msgp/geometry.hpp"
#include "msgp/rng.hpp"

using namespace msgp;

namespace {

Vec random_vec(RngStream& rng, std::size_t dim, double scale) {
  Vec v(dim);
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return v;
}

std::vector<ConvexSet> test_sets() {
  return {
      WholeSpace{},
      Box{{0.0, 0.0}, {1.0, 1.0}},
      Interval{-2.0, 3.0},
      Ball{{0.0, 0.0}, 1.0},
      Halfspace{{1.0, 2.0}, 1.5},
      Simplex{3},
  };
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::size_t set_dim(const ConvexSet& s) {
  if (std::holds_alternative<Interval>(s)) return 1;
  if (std::holds_alternative<Simplex>(s)) return 3;
  return 2;
}

}  // namespace

TEST_CASE("closed-form projections") {
  CHECK(project(Box{{0, 0}, {1, 1}}, {2.0, -1.0}) == Vec{1.0, 0.0});
  Vec p = project(Ball{{0, 0}, 1.0}, {3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(project(Interval{-2, 3}, {5.0}) == Vec{3.0});
  Vec s = project(Simplex{3}, {1.0, 1.0, 1.0});
  for (double x : s) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(project(Interval{0, 1}, Vec{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("members project to themselves exactly") {
  RngStream rng(2024, 0);
  for (const auto& set : test_sets()) {
    CAPTURE(set_name(set));
    for (int i = 0; i < 200; ++i) {
      Vec inside = project(set, random_vec(rng, set_dim(set), 4.0));
      CHECK(project(set, inside) == inside);  // idempotence, bitwise
    }
  }
}

TEST_CASE("projection is nonexpansive") {
  RngStream rng(7, 0);
  for (const auto& set : test_sets()) {
    CAPTURE(set_name(set));
    for (int i = 0; i < 10000; ++i) {
      Vec a = random_vec(rng, set_dim(set), 5.0);
      Vec b = random_vec(rng, set_dim(set), 5.0);
      CHECK(dist(project(set, a), project(set, b)) <= dist(a, b) + 1e-10);
    }
  }
}

TEST_CASE("variational inequality at the projection") {
  RngStream rng(11, 0);
  for (const auto& set : test_sets()) {
    CAPTURE(set_name(set));
    for (int i = 0; i < 2000; ++i) {
      Vec x = random_vec(rng, set_dim(set), 5.0);
      Vec p = project(set, x);
      Vec z = project(set, random_vec(rng, set_dim(set), 5.0));
      double inner = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d)
        inner += (x[d] - p[d]) * (z[d] - p[d]);
      CHECK(inner <= 1e-10);
    }
  }
}

TEST_CASE("membership tests agree with projections") {
  RngStream rng(13, 0);
  for (const auto& set : test_sets()) {
    CAPTURE(set_name(set));
    for (int i = 0; i < 500; ++i) {
      Vec x = random_vec(rng, set_dim(set), 3.0);
      Vec p = project(set, x);
      CHECK(contains(set, p, 1e-10));
      if (!contains(set, x, 1e-10)) CHECK(dist(x, p) > 0.0);
    }
  }
}
