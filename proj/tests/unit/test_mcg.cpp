#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "rotor/errors.hpp"
#include "rotor/mcg.hpp"

using namespace rotor;

namespace {

MCGClass M(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return MCGClass::from(a, b, c, d); }

const MCGClass D = M(1, 0, 1, 1);
const MCGClass A = M(2, 1, 1, 1);
const MCGClass I = MCGClass::identity();
const MCGClass minusI = M(-1, 0, 0, -1);

// Oracle: eigenvalues straight from the characteristic polynomial.
std::array<std::complex<double>, 2> eig(const MCGClass& m) {
  const double t = static_cast<double>(m.trace());
  const double d = static_cast<double>(m.det());
  const std::complex<double> s = std::sqrt(std::complex<double>(t * t - 4 * d, 0.0));
  return {(t + s) / 2.0, (t - s) / 2.0};
}

bool oracle_unity_root(const MCGClass& m) {
  for (const auto& l : eig(m)) {
    if (std::abs(l - 1.0) < 1e-9) continue;
    std::complex<double> p = 1.0;
    for (int k = 1; k <= 12; ++k) {
      p *= l;
      if (std::abs(p - 1.0) < 1e-9) return true;
    }
  }
  return false;
}

int brute_order(const MCGClass& m) {
  try {
    MCGClass p = m;
    for (int k = 1; k <= 24; ++k) {
      if (p.is_identity()) return k;
      p = p * m;
    }
  } catch (const IntegerOverflow&) {
  }
  return 0;
}

// X^-1 g X in floating point for a rational conjugator.
std::array<double, 4> conj(const RationalMatrix& x, const MCGClass& g) {
  std::array<double, 4> X;
  for (int i = 0; i < 4; ++i) X[i] = static_cast<double>(x.num[i]) / static_cast<double>(x.den[i]);
  const double det = X[0] * X[3] - X[1] * X[2];
  const std::array<double, 4> Xi = {X[3] / det, -X[1] / det, -X[2] / det, X[0] / det};
  const std::array<double, 4> G = {double(g.a()), double(g.b()), double(g.c()), double(g.d())};
  auto mul = [](const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return std::array<double, 4>{p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                                 p[2] * q[1] + p[3] * q[3]};
  };
  return mul(mul(Xi, G), X);
}

}  // namespace

TEST_CASE("unimodularity is enforced") {
  CHECK_THROWS_AS(M(1, 1, 1, 1), NotUnimodular);
  CHECK_THROWS_AS(M(2, 0, 0, 1), NotUnimodular);
  CHECK_NOTHROW(M(0, 1, 1, 0));
}

TEST_CASE("spectral examples") {
  const auto r = spectral_class(M(0, -1, 1, 0));
  CHECK(r.tag == SpectralTag::complex_order4);
  CHECK(std::abs(r.eigenvalues[0] - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(r.eigenvalues[1] - std::complex<double>(0, -1)) < 1e-15);

  CHECK(spectral_class(D).tag == SpectralTag::dehn_twist);

  const auto h = spectral_class(A);
  CHECK(h.tag == SpectralTag::hyperbolic);
  CHECK(h.eigenvalues[0].real() == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(h.eigenvalues[1].real() == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));

  CHECK(spectral_class(I).tag == SpectralTag::identity);
  CHECK(spectral_class(minusI).tag == SpectralTag::minus_identity);
  CHECK(spectral_class(-D).tag == SpectralTag::eigen_minus1_parabolic);
  CHECK(spectral_class(M(0, 1, 1, 0)).tag == SpectralTag::reflection_det_minus1_tr0);
  CHECK(spectral_class(M(1, 1, 1, 0)).tag == SpectralTag::other_real_split);
  CHECK(spectral_class(M(0, -1, 1, 1)).tag == SpectralTag::complex_order6);
  CHECK(spectral_class(M(0, -1, 1, -1)).tag == SpectralTag::complex_order3);
}

TEST_CASE("unity-root examples") {
  CHECK_FALSE(has_nontrivial_unity_root(I));
  CHECK(has_nontrivial_unity_root(minusI));
  CHECK(has_nontrivial_unity_root(M(0, 1, 1, 0)));
  CHECK_FALSE(has_nontrivial_unity_root(D));
  CHECK(has_nontrivial_unity_root(-D));
  CHECK_FALSE(has_nontrivial_unity_root(A));
  CHECK_FALSE(has_nontrivial_unity_root(-A));
}

TEST_CASE("exhaustive agreement with floating eigenvalues on [-5,5]") {
  int count = 0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c)
        for (int d = -5; d <= 5; ++d) {
          const long det = static_cast<long>(a) * d - static_cast<long>(b) * c;
          if (det != 1 && det != -1) continue;
          ++count;
          const MCGClass m = M(a, b, c, d);
          const auto ev = eig(m);
          const bool on_circle = std::abs(std::abs(ev[0]) - 1) < 1e-9 && std::abs(std::abs(ev[1]) - 1) < 1e-9;
          const auto tag = spectral_class(m).tag;
          const bool split = tag == SpectralTag::hyperbolic || tag == SpectralTag::other_real_split;
          CHECK(split == !on_circle);
          CHECK(is_anosov(m) == !on_circle);
          CHECK(has_nontrivial_unity_root(m) == oracle_unity_root(m));
          const auto ord = torsion_order(m);
          const int bo = brute_order(m);
          CHECK((ord ? *ord : 0) == bo);
          if (ord) CHECK((*ord == 1 || *ord == 2 || *ord == 3 || *ord == 4 || *ord == 6));
        }
  CHECK(count == 616);  // independent count of unimodular matrices in the box
}

TEST_CASE("torsion orders") {
  CHECK(torsion_order(I) == 1);
  CHECK(torsion_order(M(0, -1, 1, 0)) == 4);
  CHECK_FALSE(torsion_order(D).has_value());
}

TEST_CASE("arithmetic") {
  CHECK(A * A.inverse() == I);
  CHECK(D.pow(5) == M(1, 0, 5, 1));
  CHECK(D.pow(-3) == M(1, 0, -3, 1));
  CHECK(A.pow(0) == I);
  CHECK(A.apply(IntVec2{1, 0}) == IntVec2{2, 1});
  CHECK_THROWS_AS(A.pow(200), IntegerOverflow);
}

TEST_CASE("closure") {
  const auto r = closure({M(0, -1, 1, 0)});
  CHECK_FALSE(r.infinite);
  CHECK(r.elements.size() == 4);

  const auto h = closure({M(0, -1, 1, 0), M(1, 0, 0, -1)});
  CHECK_FALSE(h.infinite);
  const auto& list = dihedral_h_list();
  CHECK(std::set<MCGClass>(h.elements.begin(), h.elements.end()) == std::set<MCGClass>(list.begin(), list.end()));

  CHECK(closure({A}).infinite);
  CHECK(closure({D}).infinite);
  CHECK(closure({}).elements.size() == 1);
}

TEST_CASE("classification examples") {
  CHECK(classify_nilpotent({I}).tag == SubgroupTag::trivial);
  CHECK(classify_nilpotent({}).tag == SubgroupTag::trivial);

  const auto p = classify_nilpotent({D, -D});
  CHECK(p.tag == SubgroupTag::pair);
  REQUIRE(p.generator.has_value());
  CHECK(*p.generator == D);

  const auto h = classify_nilpotent({M(0, -1, 1, 0), M(0, 1, 1, 0)});
  CHECK(h.tag == SubgroupTag::dihedral_H_conjugate);
  REQUIRE(h.conjugator.has_value());
}

TEST_CASE("dihedral conjugator maps the group onto the list") {
  // Conjugate the list by a unimodular matrix; the finder must undo it.
  const MCGClass X = M(2, 1, 1, 1);
  std::vector<MCGClass> gens = {X * M(0, -1, 1, 0) * X.inverse(), X * M(1, 0, 0, -1) * X.inverse()};
  const auto f = classify_nilpotent(gens);
  REQUIRE(f.tag == SubgroupTag::dihedral_H_conjugate);
  const auto group = closure(gens).elements;
  std::set<MCGClass> image;
  for (const auto& g : group) {
    const auto c = conj(*f.conjugator, g);
    for (double v : c) CHECK(std::abs(v - std::round(v)) < 1e-12);
    image.insert(M(std::llround(c[0]), std::llround(c[1]), std::llround(c[2]), std::llround(c[3])));
  }
  const auto& list = dihedral_h_list();
  CHECK(image == std::set<MCGClass>(list.begin(), list.end()));
}

TEST_CASE("two-element subsets of the dihedral list never read as non-nilpotent") {
  const auto& list = dihedral_h_list();
  for (const auto& a : list) {
    for (const auto& b : list) {
      const auto f = classify_nilpotent({a, b});
      CHECK(f.tag != SubgroupTag::not_nilpotent);
      CHECK(f.tag != SubgroupTag::undecided);
    }
  }
}

TEST_CASE("non-nilpotent groups carry a commutator witness") {
  const auto f = classify_nilpotent({D, M(1, 1, 0, 1)});
  CHECK(f.tag == SubgroupTag::not_nilpotent);
  CHECK(f.commutator_chain.size() >= 2);
  for (const auto& c : f.commutator_chain) CHECK_FALSE(c.is_identity());

  CHECK(classify_nilpotent({A, D}).tag == SubgroupTag::not_nilpotent);

  // The order-6 dihedral group (S3) is finite and not nilpotent.
  const auto s3 = classify_nilpotent({M(0, -1, 1, -1), M(0, 1, 1, 0)});
  CHECK(s3.finite);
  CHECK(s3.order == 6);
  CHECK(s3.tag == SubgroupTag::not_nilpotent);
  CHECK_THROWS_AS(check_condition_star_star({M(0, -1, 1, -1), M(0, 1, 1, 0)}), NotNilpotent);
}

TEST_CASE("infinite abelian reduction") {
  const auto c = classify_nilpotent({A.pow(2), A.pow(3)});
  CHECK(c.tag == SubgroupTag::cyclic);
  REQUIRE(c.generator.has_value());
  CHECK((*c.generator == A || *c.generator == A.inverse()));

  const auto d = classify_nilpotent({D.pow(4), D.pow(6)});
  CHECK(d.tag == SubgroupTag::cyclic);
  CHECK((*d.generator == D.pow(2) || *d.generator == D.pow(-2)));

  const auto p = classify_nilpotent({-A.pow(2), A.pow(3)});
  CHECK(p.tag == SubgroupTag::pair);
  CHECK(p.generator->trace() > 0);
  CHECK((*p.generator == A || *p.generator == A.inverse()));

  const auto md = classify_nilpotent({-D});
  CHECK(md.tag == SubgroupTag::cyclic);
  CHECK(*md.generator == -D);
}

TEST_CASE("condition (**) table") {
  auto v = check_condition_star_star({I});
  CHECK(v.satisfied);
  CHECK(v.witness.empty());

  v = check_condition_star_star({minusI});
  CHECK_FALSE(v.satisfied);
  CHECK(v.failure == StarStarFailure::nontrivial_finite);

  v = check_condition_star_star({A, minusI});
  CHECK(v.satisfied);
  REQUIRE(v.witness.size() == 2);
  CHECK(v.witness[0] == A);
  CHECK(v.witness[1] == -A);

  v = check_condition_star_star({D});
  CHECK(v.satisfied);
  CHECK(v.witness == std::vector<MCGClass>{D});

  CHECK(check_condition_star_star({-D}).failure == StarStarFailure::minus_dehn);
  CHECK(check_condition_star_star({D, minusI}).failure == StarStarFailure::dehn_and_minus_identity);
  CHECK(check_condition_star_star({A}).satisfied);

  // Witnesses always pass the per-element test.
  for (const auto& gens : std::vector<std::vector<MCGClass>>{{A}, {A, minusI}, {D}, {A.pow(2), -A.pow(3)}}) {
    const auto w = check_condition_star_star(gens);
    REQUIRE(w.satisfied);
    for (const auto& s : w.witness) CHECK_FALSE(has_nontrivial_unity_root(s));
  }
}

TEST_CASE("finite-index subgroup") {
  CHECK(finite_index_subgroup({I}).index == 1);

  const auto md = finite_index_subgroup({-D});
  CHECK(md.index == 2);
  CHECK(md.h_generators == std::vector<MCGClass>{D.pow(2)});

  const auto dm = finite_index_subgroup({D, minusI});
  CHECK(dm.index == 2);
  CHECK(dm.h_generators == std::vector<MCGClass>{D});

  const auto r4 = finite_index_subgroup({M(0, -1, 1, 0)});
  CHECK(r4.index == 4);
  CHECK(r4.within_d4);
  CHECK_FALSE(r4.within_c6);
  CHECK(r4.h_generators.empty());

  const auto r6 = finite_index_subgroup({M(0, -1, 1, 1)});
  CHECK(r6.index == 6);
  CHECK(r6.within_c6);

  const auto h = finite_index_subgroup({M(0, -1, 1, 0), M(0, 1, 1, 0)});
  CHECK(h.index == 8);
  CHECK(h.quotient == "D4");

  const auto k = finite_index_subgroup({M(1, 0, 0, -1), minusI});
  CHECK(k.index == 4);
  CHECK(k.quotient == "D2");

  CHECK_THROWS_AS(finite_index_subgroup({A, D}), NotNilpotent);
}
