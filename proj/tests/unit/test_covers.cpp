#include <cmath>
#include <random>

#include "doctest.h"
#include "rotor/catalog.hpp"
#include "rotor/covers.hpp"
#include "rotor/errors.hpp"

using namespace rotor;

namespace {

const double kAlpha = std::sqrt(2.0) - 1.0;

MapGroup klein_group() {
  MapGroup g;
  g.add(catalog::skew("s", kAlpha, 0.0, 0.1));
  g.add(catalog::skew_sin4("s4", kAlpha, 0.1));
  g.add(catalog::translation("q", 0.25, 0.0));
  return g;
}

EmpiricalMeasure random_measure(std::mt19937_64& rng, int atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom> a;
  for (int i = 0; i < atoms; ++i) a.push_back({TorusPoint::from({u(rng), u(rng)}), u(rng) + 0.01});
  return EmpiricalMeasure(std::move(a));
}

}  // namespace

TEST_CASE("sigma is a fixed-point free involution") {
  for (TorusPoint p : {TorusPoint{0, 0}, TorusPoint{0.3, 0.7}, TorusPoint{0.75, 0.5}}) {
    CHECK(torus_diff(sigma(sigma(p)), p).norm() < 1e-15);
    CHECK(torus_diff(sigma(p), p).norm() >= 0.5);
  }
  CHECK(sigma({0.25, 0.25}) == TorusPoint{0.75, 0.75});
}

TEST_CASE("commutation with sigma") {
  const MapGroup g = klein_group();
  CHECK(check_sigma_commute(g, Word::letter(0), 32) < 1e-15);
  CHECK(check_sigma_commute(g, Word::letter(2), 32) < 1e-15);
  // sin 4pi x does not change sign under x -> x + 1/2, so the defect is 2 eps.
  CHECK(check_sigma_commute(g, Word::letter(1), 32) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("rho bar") {
  const MapGroup g = klein_group();
  const EmpiricalMeasure mu = sigma_symmetrize(EmpiricalMeasure::uniform_grid(16));
  const RhoBar r = rho_bar(g, mu, LiftedWord(Word::letter(2)));
  CHECK(r.a == doctest::Approx(0.25));
  CHECK(r.b < 1e-15);
  const RhoBar shifted = rho_bar(g, mu, LiftedWord(Word::letter(2), {3, 0}));
  CHECK(shifted.a == doctest::Approx(0.25));
  CHECK(shifted.rho.x == doctest::Approx(3.25));
  const RhoBar up = rho_bar(g, mu, LiftedWord(Word::letter(2), {0, -2}));
  CHECK(up.b == doctest::Approx(2.0));
  CHECK_THROWS_AS(rho_bar(g, mu, LiftedWord(Word::letter(1))), NotSigmaEquivariant);
}

TEST_CASE("sigma flips the second rotation coordinate") {
  const MapGroup g = klein_group();
  std::mt19937_64 rng(31);
  const LiftedWord s(Word::letter(0));
  for (int t = 0; t < 20; ++t) {
    const EmpiricalMeasure mu = random_measure(rng, 100);
    const Vec2 r = rotation_vector(g, mu, s);
    const Vec2 rs = rotation_vector(g, sigma_pushforward(mu), s);
    CHECK(rs.x == doctest::Approx(r.x).epsilon(1e-12));
    CHECK(rs.y == doctest::Approx(-r.y).scale(1.0).epsilon(1e-12));
    const EmpiricalMeasure sym = sigma_symmetrize(mu);
    CHECK(std::abs(rotation_vector(g, sym, s).y) < 1e-12);
  }
}

TEST_CASE("doubling commutes with the fold map") {
  AnnulusMapSpec f;
  f.name = "f";
  f.a = {{0.05, 1, 0.0, {1.0}}, {0.3, 0, M_PI / 2, {0.0, 1.0}}};
  f.b = {{0.05, 1, 0.3, {0.0, 1.0, -1.0}}};
  const Generator d = double_annulus(f);
  CHECK(d.certified());
  MapGroup g;
  const Word w = Word::letter(g.add(d));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const TorusPoint q{u(rng), u(rng)};
    const Vec2 lhs = double_to_annulus(g.apply_torus(w, q));
    const Vec2 rhs = annulus_apply(f, double_to_annulus(q));
    CHECK(std::abs(circle_diff(lhs.x, rhs.x)) < 1e-12);
    CHECK(std::abs(lhs.y - rhs.y) < 1e-12);
  }
  for (double x : {0.0, 0.3, 0.9}) {
    const TorusPoint p = annulus_to_double({x, 0.5});
    const TorusPoint img = g.apply_torus(w, p);
    CHECK(torus_diff(img, annulus_to_double(annulus_apply(f, {x, 0.5}))).norm() < 1e-12);
  }
}

TEST_CASE("doubled twist") {
  const Generator t = double_annulus(catalog::annulus_twist(0.5));
  CHECK(t.inverse_mode() == Generator::InverseMode::closed);
  MapGroup g;
  const LiftedWord lw(Word::letter(g.add(t)));
  // Middle circle of the annulus: x moves by 0.5 * 1/2 * 1/2.
  for (double y : {0.25, 0.75}) {
    const Vec2 r = rotation_vector(g, EmpiricalMeasure::circle_y(y, 64), lw);
    CHECK(r.x == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(r.y == 0.0);
  }
  const Vec2 edge = rotation_vector(g, EmpiricalMeasure::circle_y(0.0, 64), lw);
  CHECK(std::abs(edge.x) < 1e-15);
}

TEST_CASE("boundary violation") {
  AnnulusMapSpec f;
  f.name = "bad";
  f.b = {{0.05, 1, 0.0, {1.0}}};
  CHECK_THROWS_AS(double_annulus(f), BoundaryViolation);
  f.b = {{0.05, 1, 0.0, {0.0, 1.0}}};  // vanishes at y = 0 only
  CHECK_THROWS_AS(double_annulus(f), BoundaryViolation);
}

TEST_CASE("doubling is functorial") {
  AnnulusMapSpec f{"f", {{0.05, 1, 0.0, {1.0}}}, {{0.04, 2, 0.1, {0.0, 1.0, -1.0}}}};
  AnnulusMapSpec k{"k", {{0.1, 0, M_PI / 2, {0.0, 1.0, -1.0}}}, {{0.03, 1, 0.7, {0.0, 0.0, 1.0, -1.0}}}};
  MapGroup g;
  const Word fw = Word::letter(g.add(double_annulus(f)));
  const Word kw = Word::letter(g.add(double_annulus(k)));
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Vec2 p{u(rng), u(rng)};
    const Vec2 annulus = annulus_apply(f, annulus_apply(k, p));
    const TorusPoint torus = g.apply_torus(compose(fw, kw), annulus_to_double(p));
    CHECK(torus_diff(torus, annulus_to_double(annulus)).norm() < 1e-10);
  }
}

TEST_CASE("vertical translations fail sigma commutation") {
  MapGroup g;
  const Word b = Word::letter(g.add(catalog::translation("b", 0.0, 0.125)));
  const Word half = Word::letter(g.add(catalog::translation("half", 0.0, 0.5)));
  CHECK(check_sigma_commute(g, b, 8) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(check_sigma_commute(g, half, 8) < 1e-15);
}
