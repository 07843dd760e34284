#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rotor/catalog.hpp"
#include "rotor/errors.hpp"
#include "rotor/torus_maps.hpp"

using namespace rotor;

namespace {

struct Fixture {
  MapGroup g = catalog::full_group();
  int id(const std::string& n) const { return *g.find(n); }
  Word w(const std::string& n, int sign = 1) const { return Word::letter(id(n), sign); }
};

Word random_word(std::mt19937_64& rng, const std::vector<int>& gens, int len) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> l;
  for (int i = 0; i < len; ++i) l.push_back({gens[pick(rng)], sign(rng) ? 1 : -1});
  return Word(l);
}

}  // namespace

TEST_CASE("canonical torus representative") {
  CHECK(TorusPoint::from({1.25, -0.25}) == TorusPoint{0.25, 0.75});
  CHECK(TorusPoint::from({-1e-17, 1.0 - 1e-17}) == TorusPoint{0.0, 0.0});
  const TorusPoint p = TorusPoint::from({3.7, -2.2});
  CHECK(TorusPoint::from(p.lift()) == p);
  CHECK(p.x >= 0.0);
  CHECK(p.x < 1.0);
  CHECK(circle_diff(0.95, 0.05) == doctest::Approx(-0.1));
}

TEST_CASE("apply_lift examples") {
  MapGroup g;
  const int id = g.add(Generator("id", MCGClass::identity(), {}, {}));
  CHECK(g.apply_lift(LiftedWord(), {0.3, 0.7}) == Vec2{0.3, 0.7});
  CHECK(g.apply_lift(LiftedWord(Word::letter(id)), {0.3, 0.7}) == Vec2{0.3, 0.7});

  const int s = g.add(Generator("s", MCGClass::identity(), {}, {DisplacementTerm::trig(0.1, 1, 0)}));
  const Vec2 q = g.apply_lift(LiftedWord(Word::letter(s)), {0.25, 0.0});
  CHECK(q.x == 0.25);
  CHECK(q.y == doctest::Approx(0.1).epsilon(1e-15));

  const int d = g.add(catalog::linear("dehn", catalog::dehn()));
  CHECK(g.apply_lift(LiftedWord(Word::letter(d), {1, 0}), {0.5, 0.5}) == Vec2{1.5, 1.0});
}

TEST_CASE("apply_torus examples") {
  MapGroup g;
  const int t = g.add(catalog::translation("t", 0.25, 0.0));
  const int a = g.add(catalog::linear("anosov", catalog::anosov()));
  CHECK(g.apply_torus(Word(), {0.9, 0.9}) == TorusPoint{0.9, 0.9});
  const TorusPoint p = g.apply_torus(Word::letter(t), {0.9, 0.1});
  CHECK(p.x == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(p.y == 0.1);
  CHECK(g.apply_torus(Word::letter(a), {0.5, 0.5}) == TorusPoint{0.5, 0.0});
}

TEST_CASE("word algebra") {
  const Word a = Word::letter(0), b = Word::letter(1);
  CHECK(commutator(a, a).empty());
  CHECK(inverse(Word({{0, 1}, {1, -1}})) == Word({{1, 1}, {0, -1}}));
  CHECK(compose(a, Word({{0, -1}, {1, 1}})) == b);
  const Word w({{0, 1}, {1, -1}, {0, 1}});
  CHECK(inverse(inverse(w)) == w);
  CHECK(compose(w, inverse(w)).empty());
  CHECK(Word({{0, 1}, {0, -1}, {1, 1}}) == b);
  CHECK(power(a, 3).size() == 3);
  CHECK(power(a, -2) == Word({{0, -1}, {0, -1}}));
  CHECK_THROWS_AS(Word({{0, 2}}), InvalidArgument);
}

TEST_CASE("linear part") {
  Fixture f;
  CHECK(f.g.linear_part(Word()).is_identity());
  CHECK(f.g.linear_part(f.w("dehn")) == MCGClass::from(1, 0, 1, 1));
  CHECK(f.g.linear_part(commutator(f.w("dehn"), f.w("dehn", -1))).is_identity());
  CHECK(f.g.linear_part(commutator(f.w("h"), f.w("dehn"))).is_identity());

  std::mt19937_64 rng(11);
  const std::vector<int> gens = {f.id("dehn"), f.id("anosov"), f.id("phi"), f.id("h")};
  for (int i = 0; i < 50; ++i) {
    const Word a = random_word(rng, gens, 4), b = random_word(rng, gens, 3);
    CHECK(f.g.linear_part(compose(a, b)) == f.g.linear_part(a) * f.g.linear_part(b));
  }
}

TEST_CASE("displacement field") {
  Fixture f;
  CHECK(f.g.displacement_field(LiftedWord(), {0.4, 0.2}) == Vec2{0, 0});
  const Vec2 t = f.g.displacement_field(LiftedWord(f.w("rot_irr")), {0.7, 0.1});
  CHECK(t.x == doctest::Approx(std::numbers::sqrt2 - 1).epsilon(1e-14));
  CHECK(t.y == doctest::Approx(std::numbers::sqrt3 - 1).epsilon(1e-14));
  const Vec2 h = f.g.displacement_field(LiftedWord(f.w("h")), {0.25, 0.0});
  CHECK(std::abs(h.x) < 1e-16);
  CHECK(h.y == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(f.g.displacement_field(LiftedWord(f.w("dehn")), {0.1, 0.1}), NotIsotopicToIdentity);

  // Independent of the chosen lift of the point.
  const LiftedWord lw(compose(f.w("h"), f.w("product")));
  const Vec2 p{0.3, 0.8};
  const Vec2 d0 = f.g.apply_lift(lw, p) - p;
  const Vec2 d1 = f.g.apply_lift(lw, p + Vec2{3, -2}) - (p + Vec2{3, -2});
  CHECK((d0 - d1).norm_inf() < 1e-12);
}

TEST_CASE("deck equivariance of generator lifts") {
  Fixture f;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  double worst = 0.0;
  for (std::size_t gi = 0; gi < f.g.size(); ++gi) {
    const Generator& gen = f.g.generator(static_cast<int>(gi));
    for (int vx = -2; vx <= 2; ++vx) {
      for (int vy = -2; vy <= 2; ++vy) {
        for (int k = 0; k < 100; ++k) {
          const Vec2 p{u(rng), u(rng)};
          const IntVec2 v{vx, vy};
          const Vec2 lhs = gen.apply(p + v.to_real());
          const Vec2 rhs = gen.apply(p) + gen.linear().apply(v).to_real();
          worst = std::max(worst, (lhs - rhs).norm());
        }
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("lift independence of torus evaluation") {
  Fixture f;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> vi(-3, 3);
  const std::vector<int> gens = {f.id("h"), f.id("dehn"), f.id("anosov"), f.id("phi"), f.id("product"), f.id("twist")};
  for (int k = 0; k < 100; ++k) {
    const Word w = random_word(rng, gens, 3);
    const TorusPoint p{u(rng), u(rng)};
    const LiftedWord lw(w, {vi(rng), vi(rng)});
    const TorusPoint a = f.g.apply_torus(w, p);
    const TorusPoint b = TorusPoint::from(f.g.apply_lift(lw, p.lift()));
    CHECK(torus_diff(a, b).norm() < 1e-9);
  }
}

TEST_CASE("round trip through inverse lifts") {
  Fixture f;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> vi(-2, 2);
  const std::vector<int> gens = {f.id("h"), f.id("dehn"), f.id("anosov"), f.id("product"), f.id("skew_irr"),
                                 f.id("twist")};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LiftedWord lw(random_word(rng, gens, 4), {vi(rng), vi(rng)});
    const LiftedWord inv = f.g.inverse(lw);
    const Vec2 p{u(rng), u(rng)};
    worst = std::max(worst, (f.g.apply_lift(inv, f.g.apply_lift(lw, p)) - p).norm());
    worst = std::max(worst, (f.g.apply_lift(lw, f.g.apply_lift(inv, p)) - p).norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("lift composition matches evaluation") {
  Fixture f;
  const LiftedWord a(f.w("anosov"), {1, -1});
  const LiftedWord b(compose(f.w("h"), f.w("dehn")), {0, 2});
  const LiftedWord ab = f.g.compose(a, b);
  for (double x : {0.1, 0.45, 0.8}) {
    const Vec2 p{x, 1.0 - x};
    CHECK((f.g.apply_lift(ab, p) - f.g.apply_lift(a, f.g.apply_lift(b, p))).norm() < 1e-12);
  }
  const LiftedWord c = f.g.commutator(LiftedWord(f.w("h")), LiftedWord(f.w("h")));
  CHECK(c.word.empty());
  CHECK(c.translation == IntVec2{0, 0});
}

TEST_CASE("certification") {
  // max row sum of |a| 2pi (|j| + |k|) with L = Id
  CHECK(catalog::example_h().contraction_bound() == doctest::Approx(0.2 * std::numbers::pi));
  CHECK(catalog::example_h().certified());

  MapGroup g;
  Generator big("big", MCGClass::identity(), {DisplacementTerm::trig(0.5, 1, 0)}, {});
  CHECK_FALSE(big.certified());
  CHECK_THROWS_AS(g.add(big), InvalidArgument);

  // A wrong closed inverse is rejected, a right one is used.
  const Generator t = catalog::translation("t", 0.3, 0.0);
  CHECK_THROWS_AS(t.with_closed_inverse(catalog::translation("t2", 0.2, 0.0)), InvalidArgument);
  const Generator tc = t.with_closed_inverse(catalog::translation("tinv", -0.3, 0.0));
  CHECK(tc.inverse_mode() == Generator::InverseMode::closed);
  CHECK(tc.apply_inverse({0.5, 0.5}).x == doctest::Approx(0.2));
  CHECK_THROWS_AS(g.add(catalog::translation("x", 0.1, 0)) + g.add(catalog::translation("x", 0.2, 0)),
                  InvalidArgument);
}

TEST_CASE("newton inverse reaches the residual target") {
  const Generator h = catalog::example_h();
  for (double x : {0.0, 0.13, 0.5, 0.77}) {
    for (double y : {-3.0, 0.2, 5.5}) {
      const Vec2 q{x, y};
      const Vec2 z = h.apply_inverse(q);
      CHECK((h.apply(z) - q).norm_inf() <= 1e-12 * std::max(1.0, q.norm_inf()));
    }
  }
}
