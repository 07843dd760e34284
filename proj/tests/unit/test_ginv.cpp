#include <cmath>

#include "doctest.h"
#include "rotor/catalog.hpp"
#include "rotor/errors.hpp"
#include "rotor/ginv.hpp"

using namespace rotor;

namespace {

MapGroup rational_group() {
  MapGroup g;
  g.add(catalog::translation("t", 0.25, 0.125));
  g.add(catalog::linear("dehn", catalog::dehn()));
  g.add(catalog::linear("anosov", catalog::anosov()));
  g.add(catalog::minus_identity("phi"));
  g.add(catalog::translation("half", 0.5, 0.0));
  g.add(catalog::example_h());
  g.add(catalog::translation("irr", std::sqrt(2.0) - 1.0, 0.0));
  return g;
}

Word w(const MapGroup& g, const std::string& n, int sign = 1) { return Word::letter(*g.find(n), sign); }

// Rotation of hl under (g^p)_* mu evaluated straight from the atoms.
Vec2 pushed_rotation(const MapGroup& g, const LiftedWord& gl, const LiftedWord& hl, const EmpiricalMeasure& mu, int p) {
  const Word gp = power(gl.word, p);
  Vec2 s{};
  for (const auto& a : mu.atoms()) {
    const Vec2 q = g.apply_torus(gp, a.p).lift();
    s = s + a.w * (g.apply_lift(hl, q) - q);
  }
  return s;
}

}  // namespace

TEST_CASE("rotation pushforward identity on an invariant grid") {
  const MapGroup g = rational_group();
  const EmpiricalMeasure mu = EmpiricalMeasure::uniform_grid(64);
  const LiftedWord h(w(g, "t"));
  for (const char* name : {"dehn", "anosov", "phi"}) {
    const LiftedWord gl(w(g, name), {1, 0});
    for (int p : {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5}) {
      const RotevResult r = rotev_residual(g, gl, h, mu, p);
      CHECK(r.residual.norm() < 1e-9);
      CHECK((r.lhs - pushed_rotation(g, gl, h, mu, p)).norm() < 1e-9);
    }
  }
  CHECK_THROWS_AS(rotev_residual(g, LiftedWord(w(g, "dehn")), h, mu, 0), InvalidArgument);
  CHECK_THROWS_AS(rotev_residual(g, h, LiftedWord(w(g, "dehn")), mu, 1), NotIsotopicToIdentity);
}

TEST_CASE("rotation pushforward closed forms") {
  // For a translation h by v and linear g = A, the pushed rotation is v for every p,
  // while A^p v alone is not: the commutator terms account for the difference.
  const MapGroup g = rational_group();
  const EmpiricalMeasure mu = EmpiricalMeasure::uniform_grid(8);
  const RotevResult r = rotev_residual(g, LiftedWord(w(g, "dehn")), LiftedWord(w(g, "t")), mu, 3);
  CHECK(r.lhs.x == doctest::Approx(0.25));
  CHECK(r.lhs.y == doctest::Approx(0.125));
  CHECK(r.residual.norm() < 1e-12);
}

TEST_CASE("bounded affine orbits") {
  const MCGClass id = MCGClass::identity(), dehn = catalog::dehn(), minus = MCGClass::from(-1, 0, 0, -1);
  CHECK(bounded_orbit_check(id, {0.3, 0.1}, {0, 0}, 100).bounded);
  CHECK_FALSE(bounded_orbit_check(id, {0, 0}, {0.1, 0}, 100).bounded);
  // (1, 0) is fixed by rho -> A(rho + w) for w = (0, -1).
  CHECK(bounded_orbit_check(dehn, {1, 0}, {0, -1}, 100).bounded);
  CHECK_FALSE(bounded_orbit_check(dehn, {1, 0}, {0, 1}, 100).bounded);
  CHECK(bounded_orbit_check(minus, {1, 2}, {3, -1}, 100).bounded);
  CHECK(bounded_orbit_check(catalog::anosov(), {0, 0}, {0, 0}, 100).bounded);
  const BoundedOrbit blow = bounded_orbit_check(catalog::anosov(), {1, 0}, {0, 0}, 1000);
  CHECK_FALSE(blow.bounded);
  CHECK(std::isinf(blow.max_norm));
  CHECK_THROWS_AS(bounded_orbit_check(id, {0, 0}, {0, 0}, 1), InvalidArgument);
}

TEST_CASE("averaging a dirac mass under a finite-order map") {
  const MapGroup g = rational_group();
  GroupSpec spec{{}, {w(g, "half")}, {}};
  const ConstructionTrace t =
      construct_invariant(g, spec, {{"half", LiftedWord(w(g, "half"))}}, EmpiricalMeasure::dirac({0.1, 0.2}));
  REQUIRE(t.measures.size() == 2);
  CHECK(t.measures.back().size() == 2);
  CHECK(t.final_defect < 1e-12);
  CHECK(t.stage_lengths == std::vector<int>{0, 256});
  CHECK(t.rotations[1][0].x == doctest::Approx(0.5));
}

TEST_CASE("translation plus Dehn twist on a grid") {
  const MapGroup g = rational_group();
  GroupSpec spec{{w(g, "t")}, {w(g, "dehn")}, {catalog::dehn()}};
  const ConstructionTrace t = construct_invariant(g, spec, {{"t", LiftedWord(w(g, "t"))}},
                                                  EmpiricalMeasure::uniform_grid(64));
  CHECK(t.condition_satisfied);
  CHECK(t.final_defect < 1e-9);
  CHECK(t.rotations.back()[0].x == doctest::Approx(0.25));
  CHECK(t.rotations.back()[0].y == doctest::Approx(0.125));

  GroupSpec wrong{{w(g, "t")}, {w(g, "dehn")}, {catalog::anosov()}};
  CHECK_THROWS_AS(construct_invariant(g, wrong, {}, EmpiricalMeasure::uniform_grid(8)), InvalidArgument);
}

TEST_CASE("example h with phi needs forcing") {
  const MapGroup g = rational_group();
  GroupSpec spec{{w(g, "h")}, {w(g, "phi")}, {}};
  const LiftedWord h(w(g, "h"));
  const EmpiricalMeasure mu0 = EmpiricalMeasure::circle_x(0.25, 1000);
  CHECK(rotation_vector(g, mu0, h).y == doctest::Approx(0.1));
  CHECK_THROWS_AS(construct_invariant(g, spec, {{"h", h}}, mu0), ConditionStarStarViolated);

  ConstructionOptions opt;
  opt.force = true;
  const ConstructionTrace t = construct_invariant(g, spec, {{"h", h}}, mu0, opt);
  CHECK(t.forced);
  CHECK_FALSE(t.condition_satisfied);
  CHECK_FALSE(t.condition_note.empty());
  CHECK(t.rotations.back()[0].norm() < 1e-12);
  CHECK(t.final_defect < 1e-9);
}

TEST_CASE("defect failures") {
  const MapGroup g = rational_group();
  GroupSpec base{{w(g, "h")}, {}, {}};
  CHECK_THROWS_AS(construct_invariant(g, base, {}, EmpiricalMeasure::dirac({0.1, 0.1})), DefectExceeded);

  GroupSpec irr{{}, {w(g, "irr")}, {}};
  ConstructionOptions opt;
  opt.averaging_length = 1;
  opt.max_doublings = 0;
  CHECK_THROWS_AS(construct_invariant(g, irr, {}, EmpiricalMeasure::dirac({0.1, 0.1}), opt), DefectExceeded);
}
