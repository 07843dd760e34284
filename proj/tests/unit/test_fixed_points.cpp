#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rotor/catalog.hpp"
#include "rotor/errors.hpp"
#include "rotor/fixed_points.hpp"

using namespace rotor;

namespace {

struct Fixture {
  MapGroup g = catalog::full_group();
  Word w(const std::string& n, int sign = 1) const { return Word::letter(*g.find(n), sign); }
};

bool has_point(const std::vector<FixedPoint>& pts, TorusPoint q, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const FixedPoint& f) { return torus_diff(f.p, q).norm() < tol; });
}

}  // namespace

TEST_CASE("product map has four isolated fixed points with indices summing to zero") {
  Fixture f;
  FixedPointReport r = find_fixed_points(f.g, f.w("product"), 32, 1e-10);
  REQUIRE(r.points.size() == 4);
  CHECK(r.chains.empty());
  for (TorusPoint q : {TorusPoint{0, 0}, TorusPoint{0, 0.5}, TorusPoint{0.5, 0}, TorusPoint{0.5, 0.5}}) {
    CHECK(has_point(r.points, q, 1e-9));
  }
  attach_indices(f.g, f.w("product"), r, 0.05, 64);
  int sum = 0;
  for (const auto& p : r.points) {
    REQUIRE(p.index.has_value());
    // Jacobian of the displacement is diag(cos 2pi x, cos 2pi y) up to a positive factor.
    const int expect = (std::cos(2 * M_PI * p.p.x) * std::cos(2 * M_PI * p.p.y) > 0) ? 1 : -1;
    CHECK(*p.index == expect);
    sum += *p.index;
  }
  CHECK(sum == 0);
}

TEST_CASE("index sum vanishes across the product family") {
  for (double s : {0.05, 0.1, 0.15}) {
    MapGroup g;
    const Word w = Word::letter(g.add(catalog::product("p", s)));
    FixedPointReport r = find_fixed_points(g, w, 32, 1e-10);
    REQUIRE(r.points.size() == 4);
    attach_indices(g, w, r, 0.05, 64);
    int sum = 0;
    for (const auto& p : r.points) sum += p.index.value_or(100);
    CHECK(sum == 0);
  }
}

TEST_CASE("example map fixes two circles") {
  Fixture f;
  const FixedPointReport r = find_fixed_points(f.g, f.w("h"), 64, 1e-10);
  CHECK(r.points.empty());
  REQUIRE(r.chains.size() == 2);
  std::vector<double> xs;
  for (const auto& c : r.chains) {
    REQUIRE_FALSE(c.nodes.empty());
    for (const auto& n : c.nodes) CHECK(std::abs(circle_diff(n.p.x, c.nodes[0].p.x)) < 1e-9);
    xs.push_back(c.nodes[0].p.x);
  }
  std::sort(xs.begin(), xs.end());
  CHECK(std::abs(circle_diff(xs[0], 0.0)) < 1e-9);
  CHECK(xs[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(fixed_point_index(f.g, f.w("h"), {0.0, 0.3}, 0.05, 64), NonIsolated);
}

TEST_CASE("fixed-point free and identity maps") {
  Fixture f;
  CHECK(find_fixed_points(f.g, f.w("rot_irr"), 32, 1e-10).empty());
  CHECK(find_fixed_points(f.g, Word(), 8, 1e-10).all_fixed);
  CHECK_THROWS_AS(find_fixed_points(f.g, f.w("dehn"), 8, 1e-10), NotIsotopicToIdentity);
}

TEST_CASE("fixed points of lifts") {
  Fixture f;
  const FixedPointReport zero = find_lift_fixed_points(f.g, LiftedWord(f.w("skew")), 64, 1e-10);
  CHECK(zero.chains.size() == 2);
  CHECK(find_lift_fixed_points(f.g, LiftedWord(f.w("skew"), {0, 1}), 64, 1e-10).empty());
  const FixedPointReport prod = find_lift_fixed_points(f.g, LiftedWord(f.w("product")), 32, 1e-10);
  CHECK(prod.points.size() == 4);
}

TEST_CASE("common fixed points with the antipodal map") {
  Fixture f;
  const FixedPointReport skews = common_fixed_points(f.g, {f.w("skew"), f.w("skew_x")}, 32, 1e-10);
  CHECK(skews.points.size() == 4);
  for (const auto& p : skews.points) CHECK(p.residual < 1e-10);
  const FixedPointReport r = common_fixed_points(f.g, {f.w("product"), f.w("phi")}, 32, 1e-10);
  CHECK(r.points.size() == 4);
  const FixedPointReport h = common_fixed_points(f.g, {f.w("h"), f.w("phi")}, 64, 1e-10);
  const auto all = h.all_points();
  CHECK(has_point(all, {0, 0}, 1e-9));
  CHECK(has_point(all, {0.5, 0.5}, 1e-9));
  for (const auto& p : all) {
    CHECK(torus_diff(f.g.apply_torus(f.w("h"), p.p), p.p).norm() < 1e-9);
    CHECK(torus_diff(f.g.apply_torus(f.w("phi"), p.p), p.p).norm() < 1e-9);
  }
}

TEST_CASE("franks certificates") {
  Fixture f;
  const FranksCertificate at_fixed =
      franks_certificate(f.g, f.w("product"), EmpiricalMeasure::dirac({0.5, 0.5}), 1e-9);
  CHECK(at_fixed.rho_zero);
  CHECK(at_fixed.verdict == "consistent");
  REQUIRE(at_fixed.support_distance.has_value());
  CHECK(*at_fixed.support_distance < 1e-9);

  const FranksCertificate shifted =
      franks_certificate(f.g, f.w("rot_half"), EmpiricalMeasure::uniform_grid(8), 1e-9);
  CHECK_FALSE(shifted.rho_zero);
  CHECK(shifted.verdict == "hypothesis_not_met");

  const FranksCertificate circle =
      franks_certificate(f.g, f.w("skew"), EmpiricalMeasure::dirac({0.0, 0.3}), 1e-9);
  CHECK(circle.verdict == "consistent");
  CHECK_FALSE(circle.fixed.empty());
  const FranksCertificate quarter =
      franks_certificate(f.g, f.w("h"), EmpiricalMeasure::circle_x(0.25, 1000), 1e-9);
  CHECK(quarter.verdict == "hypothesis_not_met");

  CHECK_THROWS_AS(franks_certificate(f.g, f.w("rot_irr"), EmpiricalMeasure::dirac({0.1, 0.1}), 1e-9), DefectExceeded);
}
