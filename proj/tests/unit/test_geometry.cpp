#include <cmath>
#include <random>

#include "doctest.h"
#include "rotor/geometry.hpp"

using namespace rotor;

TEST_CASE("hull of a square with interior points") {
  const std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}, {0.5, 0}};
  const auto h = convex_hull(pts);
  REQUIRE(h.size() == 4);
  // counter-clockwise: positive signed area
  double area = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec2& a = h[i];
    const Vec2& b = h[(i + 1) % h.size()];
    area += a.x * b.y - a.y * b.x;
  }
  CHECK(area / 2 == doctest::Approx(1.0));
}

TEST_CASE("degenerate hulls") {
  CHECK(convex_hull({}).empty());
  CHECK(convex_hull({{1, 2}, {1, 2}}).size() == 1);
  const auto seg = convex_hull({{0, 0}, {0, 0.5}, {0, 1}, {0, 0.25}});
  REQUIRE(seg.size() == 2);
  CHECK(distance_to_convex({0.3, 0.5}, seg) == doctest::Approx(0.3));
  CHECK(distance_to_convex({0, 2}, seg) == doctest::Approx(1.0));
}

TEST_CASE("distances") {
  const auto sq = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(distance_to_convex({0.5, 0.5}, sq) == 0.0);
  CHECK(distance_to_convex({2, 0.5}, sq) == doctest::Approx(1.0));
  CHECK(distance_to_convex({2, 2}, sq) == doctest::Approx(std::sqrt(2.0)));
  const auto shifted = convex_hull({{0.1, 0}, {1.1, 0}, {1.1, 1}, {0.1, 1}});
  CHECK(hausdorff_convex(sq, shifted) == doctest::Approx(0.1));
  CHECK(hausdorff_convex(sq, sq) == 0.0);
  CHECK(hull_contains(sq, {{0.5, 0.5}, {1.0, 1.0}}, 0.0));
  CHECK_FALSE(hull_contains(sq, {{1.01, 0.5}}, 1e-3));
  CHECK(centroid(sq).x == doctest::Approx(0.5));
  CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("hull monotonicity") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 50; ++t) {
    std::vector<Vec2> s, st;
    for (int i = 0; i < 20; ++i) s.push_back({n01(rng), n01(rng)});
    st = s;
    for (int i = 0; i < 10; ++i) st.push_back({n01(rng), n01(rng)});
    const auto hs = convex_hull(s), hst = convex_hull(st);
    CHECK(hull_contains(hst, hs, 1e-12));
    CHECK(hull_contains(hs, s, 1e-12));
    CHECK(diameter(hs) <= diameter(hst) + 1e-12);
  }
}
