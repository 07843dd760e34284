#include "rotor/verify.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>

#include "rotor/catalog.hpp"
#include "rotor/covers.hpp"
#include "rotor/errors.hpp"
#include "rotor/fixed_points.hpp"
#include "rotor/geometry.hpp"
#include "rotor/ginv.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

using json = nlohmann::ordered_json;

json vec(const Vec2& v) { return json::array({v.x, v.y}); }

Word letter(const MapGroup& g, const std::string& name, int sign = 1) { return Word::letter(*g.find(name), sign); }

// ---------------------------------------------------------------------------
// 1. Exhaustive GL(2,Z) consistency against a floating-point eigenvalue oracle.

struct Oracle {
  SpectralTag tag;
  bool unity_root;
};

Oracle eigen_oracle(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  constexpr double kTol = 1e-9;
  const std::complex<double> t(static_cast<double>(a + d), 0.0);
  const std::complex<double> det(static_cast<double>(a) * d - static_cast<double>(b) * c, 0.0);
  const std::complex<double> s = std::sqrt(t * t - 4.0 * det);
  const std::array<std::complex<double>, 2> ev = {(t + s) / 2.0, (t - s) / 2.0};

  auto near = [&](std::complex<double> z, double re) { return std::abs(z - re) < kTol; };
  auto order = [&](std::complex<double> z) {
    std::complex<double> p = z;
    for (int k = 1; k <= 12; ++k) {
      if (std::abs(p - 1.0) < kTol) return k;
      p *= z;
    }
    return 0;
  };
  const bool unit0 = std::abs(std::abs(ev[0]) - 1.0) < kTol;
  const bool unit1 = std::abs(std::abs(ev[1]) - 1.0) < kTol;
  Oracle o{SpectralTag::other_real_split, false};
  for (const auto& z : ev) {
    const int k = order(z);
    if (k > 1) o.unity_root = true;
  }
  const bool is_id = a == 1 && b == 0 && c == 0 && d == 1;
  const bool is_mid = a == -1 && b == 0 && c == 0 && d == -1;
  if (unit0 && unit1) {
    if (near(ev[0], 1.0) && near(ev[1], 1.0)) {
      o.tag = is_id ? SpectralTag::identity : SpectralTag::dehn_twist;
    } else if (near(ev[0], -1.0) && near(ev[1], -1.0)) {
      o.tag = is_mid ? SpectralTag::minus_identity : SpectralTag::eigen_minus1_parabolic;
    } else if (std::abs(ev[0].imag()) < kTol) {
      o.tag = SpectralTag::reflection_det_minus1_tr0;
    } else {
      const int k = order(ev[0]);
      o.tag = k == 3 ? SpectralTag::complex_order3 : k == 4 ? SpectralTag::complex_order4 : SpectralTag::complex_order6;
    }
  } else if (!unit0 && !unit1) {
    o.tag = det.real() > 0 ? SpectralTag::hyperbolic : SpectralTag::other_real_split;
  }
  return o;
}

std::optional<int> brute_order(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t p = a, q = b, r = c, s = d;
  for (int k = 1; k <= 12; ++k) {
    if (p == 1 && q == 0 && r == 0 && s == 1) return k;
    const std::int64_t np = p * a + q * c, nq = p * b + q * d, nr = r * a + s * c, ns = r * b + s * d;
    p = np, q = nq, r = nr, s = ns;
  }
  return std::nullopt;
}

CriterionResult c1_mcg_exhaustive() {
  CriterionResult r;
  std::int64_t count = 0, tag_mismatch = 0, unity_mismatch = 0, order_mismatch = 0, bad_order = 0;
  std::map<int, std::int64_t> orders;
  std::map<std::string, std::int64_t> tags;
  for (std::int64_t a = -10; a <= 10; ++a) {
    for (std::int64_t b = -10; b <= 10; ++b) {
      for (std::int64_t c = -10; c <= 10; ++c) {
        for (std::int64_t d = -10; d <= 10; ++d) {
          const std::int64_t det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          ++count;
          const MCGClass m = MCGClass::from(a, b, c, d);
          const Oracle o = eigen_oracle(a, b, c, d);
          const SpectralTag tag = spectral_class(m).tag;
          ++tags[to_string(tag)];
          if (tag != o.tag) ++tag_mismatch;
          if (has_nontrivial_unity_root(m) != o.unity_root) ++unity_mismatch;
          const auto ord = torsion_order(m);
          if (ord != brute_order(a, b, c, d)) ++order_mismatch;
          if (ord) {
            ++orders[*ord];
            if (*ord != 1 && *ord != 2 && *ord != 3 && *ord != 4 && *ord != 6) ++bad_order;
          }
        }
      }
    }
  }
  r.metrics["unimodular_matrices"] = count;
  r.metrics["spectral_mismatches"] = tag_mismatch;
  r.metrics["unity_root_mismatches"] = unity_mismatch;
  r.metrics["torsion_mismatches"] = order_mismatch;
  r.metrics["orders_outside_1_2_3_4_6"] = bad_order;
  json oj = json::object();
  for (const auto& [k, v] : orders) oj[std::to_string(k)] = v;
  r.metrics["finite_orders"] = oj;
  r.metrics["spectral_tags"] = tags;
  r.passed = count > 0 && tag_mismatch == 0 && unity_mismatch == 0 && order_mismatch == 0 && bad_order == 0;
  return r;
}

// ---------------------------------------------------------------------------
// 2. Nilpotent classification and the spectral condition table.

CriterionResult c2_classification() {
  CriterionResult r;
  const MCGClass D = catalog::dehn(), A = catalog::anosov(), I = MCGClass::identity(), mI = -I;
  struct Row {
    std::string group;
    std::vector<MCGClass> gens;
    SubgroupTag tag;
    std::optional<MCGClass> generator;
  };
  const std::vector<Row> rows = {
      {"H", dihedral_h_list(), SubgroupTag::dihedral_H_conjugate, std::nullopt},
      {"<D>", {D}, SubgroupTag::cyclic, D},
      {"<-D>", {-D}, SubgroupTag::cyclic, -D},
      {"<A>", {A}, SubgroupTag::cyclic, A},
      {"<A,-Id>", {A, mI}, SubgroupTag::pair, A},
  };
  bool ok = true;
  json cls = json::array();
  for (const auto& row : rows) {
    const SubgroupForm f = classify_nilpotent(row.gens);
    bool pass = f.tag == row.tag;
    // The generator is determined up to inversion.
    if (row.generator && pass) {
      pass = f.generator && (*f.generator == *row.generator || *f.generator == row.generator->inverse());
    }
    ok = ok && pass;
    cls.push_back({{"group", row.group},
                   {"expected", to_string(row.tag)},
                   {"actual", to_string(f.tag)},
                   {"generator", f.generator ? f.generator->str() : ""},
                   {"passed", pass}});
  }
  struct StarRow {
    std::string group;
    std::vector<MCGClass> gens;
    bool satisfied;
  };
  const std::vector<StarRow> star = {
      {"<D>", {D}, true},          {"<-D>", {-D}, false},        {"<D,-Id>", {D, mI}, false},
      {"<A>", {A}, true},          {"<A,-Id>", {A, mI}, true},   {"<-A>", {-A}, true},
      {"<Id>", {I}, true},         {"<-Id>", {mI}, false},       {"H", dihedral_h_list(), false},
  };
  json sj = json::array();
  for (const auto& row : star) {
    const StarStarVerdict v = check_condition_star_star(row.gens);
    const bool pass = v.satisfied == row.satisfied;
    ok = ok && pass;
    json witness = json::array();
    for (const auto& w : v.witness) witness.push_back(w.str());
    sj.push_back({{"group", row.group},
                  {"expected", row.satisfied},
                  {"actual", v.satisfied},
                  {"failure", to_string(v.failure)},
                  {"witness", witness},
                  {"passed", pass}});
  }
  r.metrics["classification"] = cls;
  r.metrics["condition_table"] = sj;
  r.passed = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 3. Conjugation, additivity and lift-shift identities for rotation vectors.

EmpiricalMeasure random_measure(std::mt19937_64& rng, int atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom> a;
  for (int i = 0; i < atoms; ++i) a.push_back({TorusPoint::from({u(rng), u(rng)}), u(rng) + 0.01});
  return EmpiricalMeasure(std::move(a));
}

// Average over the translations (i/4, j/3): invariant under both generators.
EmpiricalMeasure translation_orbit(const EmpiricalMeasure& nu) {
  std::vector<Atom> a;
  for (const auto& x : nu.atoms()) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) a.push_back({TorusPoint::from({x.p.x + i / 4.0, x.p.y + j / 3.0}), x.w});
    }
  }
  return EmpiricalMeasure(std::move(a));
}

CriterionResult c3_rotation_identities() {
  CriterionResult r;
  MapGroup g;
  g.add(catalog::translation("t1", 0.25, 0.0));
  g.add(catalog::translation("t2", 0.0, 1.0 / 3.0));
  g.add(catalog::translation("t3", 0.5, 0.5));
  g.add(catalog::linear("dehn", catalog::dehn()));
  g.add(catalog::minus_identity("phi"));
  g.add(catalog::example_h());
  g.add(catalog::skew("skew", 0.0, 0.0, catalog::kSkewEpsilon));
  g.add(catalog::product("product", catalog::kProductS));

  std::mt19937_64 rng(0x5eed0003);
  std::uniform_int_distribution<int> vi(-2, 2);
  const std::vector<std::string> maps = {"t1", "t2", "t3", "h", "skew", "product"};
  const std::vector<std::string> invariant = {"t1", "t2"};
  double conj = 0.0, add = 0.0, shift = 0.0;
  constexpr int kMeasures = 100;
  for (int m = 0; m < kMeasures; ++m) {
    const EmpiricalMeasure nu = random_measure(rng, 40);
    const EmpiricalMeasure mu = translation_orbit(nu);
    for (const auto& f : maps) {
      const LiftedWord fl(letter(g, f), {vi(rng), vi(rng)});
      const Vec2 rho = rotation_vector(g, nu, fl);
      for (const char* psi : {"dehn", "phi"}) {
        const LiftedWord pl(letter(g, psi), {vi(rng), vi(rng)});
        const LiftedWord c = g.compose(g.compose(pl, fl), g.inverse(pl));
        const Vec2 lhs = rotation_vector(g, pushforward(g, pl.word, nu), c);
        conj = std::max(conj, (lhs - g.linear_part(pl.word).apply(rho)).norm());
      }
      const IntVec2 v{vi(rng), vi(rng)};
      shift = std::max(shift, (rotation_vector(g, nu, fl.translated(v)) - (rho + v.to_real())).norm());
      for (const auto& b : invariant) {
        const LiftedWord bl(letter(g, b), {vi(rng), vi(rng)});
        const Vec2 lhs = rotation_vector(g, mu, g.compose(fl, bl));
        add = std::max(add, (lhs - rotation_vector(g, mu, fl) - rotation_vector(g, mu, bl)).norm());
      }
    }
  }
  r.metrics["measures"] = kMeasures;
  r.metrics["conjugation_residual"] = conj;
  r.metrics["additivity_residual"] = add;
  r.metrics["lift_shift_residual"] = shift;
  r.passed = conj < 1e-8 && add < 1e-8 && shift < 1e-8;
  return r;
}

// ---------------------------------------------------------------------------
// 4. Rotation pushforward formulas on the Dehn/translation family.

CriterionResult c4_rotev() {
  CriterionResult r;
  const std::vector<std::int64_t> ms = {1, 2, -1};
  const std::vector<Vec2> shifts = {{0.25, 0.125}, {0.5, 0.375}, {0.75, 1.0 / 64}};
  const EmpiricalMeasure mu = EmpiricalMeasure::uniform_grid(64);
  double worst = 0.0, closed = 0.0;
  int cases = 0;
  for (const auto m : ms) {
    for (const auto& ab : shifts) {
      MapGroup g;
      const Word gw = Word::letter(g.add(catalog::linear("dehn", MCGClass::from(1, 0, m, 1))));
      const Word hw = Word::letter(g.add(catalog::translation("t", ab.x, ab.y)));
      for (const IntVec2 v : {IntVec2{0, 0}, IntVec2{1, -1}}) {
        for (int p = -5; p <= 5; ++p) {
          if (p == 0) continue;
          const RotevResult res = rotev_residual(g, LiftedWord(gw, v), LiftedWord(hw), mu, p);
          worst = std::max(worst, res.residual.norm());
          // The translation moves every point by (alpha, beta), whatever the measure.
          closed = std::max({closed, (res.lhs - ab).norm(), (res.rhs - ab).norm()});
          ++cases;
        }
      }
    }
  }
  r.metrics["cases"] = cases;
  r.metrics["max_residual"] = worst;
  r.metrics["max_closed_form_error"] = closed;
  r.passed = cases > 0 && worst < 1e-8 && closed < 1e-8;
  return r;
}

// ---------------------------------------------------------------------------
// 5. Bounded-or-unbounded dichotomy for Dehn classes.

CriterionResult c5_bounded_orbits() {
  CriterionResult r;
  int cases = 0, mismatches = 0, bounded = 0;
  json bad = json::array();
  for (const std::int64_t m : {1, 2, -1}) {
    const MCGClass a = MCGClass::from(1, 0, m, 1);
    for (int v1 = -2; v1 <= 2; ++v1) {
      for (int w1 = -2; w1 <= 2; ++w1) {
        for (int w2 = -2; w2 <= 2; ++w2) {
          const bool expect = w1 == 0 && m * v1 + w2 == 0;
          const BoundedOrbit o = bounded_orbit_check(a, {static_cast<double>(v1), 0.5}, {double(w1), double(w2)}, 1000);
          ++cases;
          if (o.bounded) ++bounded;
          if (o.bounded != expect) {
            ++mismatches;
            bad.push_back({m, v1, w1, w2});
          }
        }
      }
    }
  }
  r.metrics["cases"] = cases;
  r.metrics["bounded"] = bounded;
  r.metrics["mismatches"] = mismatches;
  r.metrics["mismatch_parameters"] = bad;
  r.passed = cases == 375 && mismatches == 0;
  return r;
}

// ---------------------------------------------------------------------------
// 6. Rotation preservation through the averaging construction.

CriterionResult c6_preservation() {
  CriterionResult r;
  struct Case {
    Vec2 t;
    std::int64_t m;
  };
  bool ok = true;
  json cases = json::array();
  for (const Case& c : {Case{{0.25, 0.125}, 1}, Case{{0.5, 0.25}, 2}}) {
    MapGroup g;
    const Word tw = Word::letter(g.add(catalog::translation("t", c.t.x, c.t.y)));
    const MCGClass dc = MCGClass::from(1, 0, c.m, 1);
    const Word dw = Word::letter(g.add(catalog::linear("dehn", dc)));
    const GroupSpec spec{{tw}, {dw}, {dc}};
    ConstructionOptions opt;
    const ConstructionTrace trace =
        construct_invariant(g, spec, {{"t", LiftedWord(tw)}}, EmpiricalMeasure::uniform_grid(64), opt);
    double drift = 0.0;
    json stages = json::array();
    for (const auto& rho : trace.rotations) {
      drift = std::max(drift, (rho[0] - trace.rotations[0][0]).norm());
      stages.push_back(vec(rho[0]));
    }
    const bool pass = drift < 1e-6 && trace.final_defect <= 10 * opt.tol && trace.condition_satisfied;
    ok = ok && pass;
    cases.push_back({{"translation", vec(c.t)},
                     {"dehn", dc.str()},
                     {"stage_rotations", stages},
                     {"max_drift", drift},
                     {"final_defect", trace.final_defect},
                     {"passed", pass}});
  }
  r.metrics["cases"] = cases;
  r.passed = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 7. The example map h with the antipodal map.

CriterionResult c7_example() {
  CriterionResult r;
  MapGroup g;
  const Word h = Word::letter(g.add(catalog::example_h()));
  const Word phi = Word::letter(g.add(catalog::minus_identity("phi")));
  const LiftedWord hl(h);

  const EmpiricalMeasure circle = EmpiricalMeasure::circle_x(0.25, 1000);
  const Vec2 rho = rotation_vector(g, circle, hl);
  const double rho_err = (rho - Vec2{0.0, 0.1}).norm();

  const FixedPointReport fix = find_fixed_points(g, h, 64, 1e-10);
  bool at_zero = false, at_half = false;
  double residual = 0.0;
  for (const auto& c : fix.chains) {
    for (const auto& n : c.nodes) residual = std::max(residual, n.residual);
    if (c.nodes.empty()) continue;
    const double x = c.nodes.front().p.x;
    bool vertical = true;
    for (const auto& n : c.nodes) vertical = vertical && std::abs(circle_diff(n.p.x, x)) < 1e-9;
    if (vertical && std::abs(circle_diff(x, 0.0)) < 1e-9) at_zero = true;
    if (vertical && std::abs(circle_diff(x, 0.5)) < 1e-9) at_half = true;
  }

  const IrrotationalResult irr = irrotational_lift(g, hl, seed_grid(16), 1000, 1e-3);

  const GroupSpec spec{{h}, {phi}, {}};
  bool refused = false;
  try {
    construct_invariant(g, spec, {{"h", hl}}, circle);
  } catch (const ConditionStarStarViolated&) {
    refused = true;
  }
  ConstructionOptions forced;
  forced.force = true;
  const ConstructionTrace trace = construct_invariant(g, spec, {{"h", hl}}, circle, forced);
  const Vec2 averaged = trace.rotations.back()[0];

  r.metrics["rotation_on_quarter_circle"] = vec(rho);
  r.metrics["rotation_error"] = rho_err;
  r.metrics["fixed_chains"] = fix.chains.size();
  r.metrics["fixed_circle_x0"] = at_zero;
  r.metrics["fixed_circle_x_half"] = at_half;
  r.metrics["fixed_residual"] = residual;
  r.metrics["irrotational_lift"] = irr.lift.has_value();
  r.metrics["rotation_hull_diameter"] = irr.hull_diameter;
  r.metrics["unforced_refused"] = refused;
  r.metrics["forced_rotation"] = vec(averaged);
  r.metrics["forced_final_defect"] = trace.final_defect;
  r.passed = rho_err < 1e-10 && at_zero && at_half && residual < 1e-10 && !irr.lift.has_value() && refused &&
             averaged.norm() < 1e-8;
  return r;
}

// ---------------------------------------------------------------------------
// 8. Rotation sets of the Dehn map and an irrational skew.

CriterionResult c8_rotation_sets() {
  CriterionResult r;
  MapGroup g;
  const Word d = Word::letter(g.add(catalog::linear("dehn", catalog::dehn())));
  const double alpha = std::numbers::sqrt2 - 1.0, beta = std::numbers::sqrt3 - 1.0;
  const Word s = Word::letter(g.add(catalog::skew("skew_irr", alpha, beta, catalog::kSkewEpsilon)));

  const RotationSetEstimate de =
      estimate_rotation_set(g, LiftedWord(d), seed_grid(64), 1000, DisplacementConvention::fundamental_domain);
  const double hd = hausdorff_convex(de.hull, {{0.0, 0.0}, {0.0, 1.0}});
  const RotationSetEstimate se = estimate_rotation_set(g, LiftedWord(s), seed_grid(8), 100000);
  const double hs = hausdorff_convex(se.hull, {{alpha, beta}});

  json dh = json::array();
  for (const auto& v : de.hull) dh.push_back(vec(v));
  r.metrics["dehn_seeds"] = de.samples.size();
  r.metrics["dehn_hull"] = dh;
  r.metrics["dehn_hausdorff"] = hd;
  r.metrics["skew_seeds"] = se.samples.size();
  r.metrics["skew_hausdorff"] = hs;
  r.passed = hd <= 2e-2 && hs <= 5e-3;
  return r;
}

// ---------------------------------------------------------------------------
// 9. Franks consistency across the catalog.

CriterionResult c9_franks() {
  CriterionResult r;
  const MapGroup g = catalog::full_group();
  struct Pair {
    std::string map;
    std::string measure;
    EmpiricalMeasure mu;
    double tol;
  };
  auto orbit = [&](const std::string& name) {
    return krylov_bogolyubov(g, letter(g, name), {0.1, 0.2}, 8192, 8192).measure;
  };
  std::vector<Pair> pairs = {
      {"h", "circle x=0", EmpiricalMeasure::circle_x(0.0, 256), 1e-9},
      {"h", "circle x=1/4", EmpiricalMeasure::circle_x(0.25, 1000), 1e-9},
      {"h", "dirac (1/2, 0.3)", EmpiricalMeasure::dirac({0.5, 0.3}), 1e-9},
      {"skew", "dirac (0, 0.3)", EmpiricalMeasure::dirac({0.0, 0.3}), 1e-9},
      {"skew", "circle x=1/4", EmpiricalMeasure::circle_x(0.25, 1000), 1e-9},
      {"skew_x", "dirac (0.3, 1/2)", EmpiricalMeasure::dirac({0.3, 0.5}), 1e-9},
      {"product", "dirac (0, 0)", EmpiricalMeasure::dirac({0.0, 0.0}), 1e-9},
      {"product", "dirac (1/2, 0)", EmpiricalMeasure::dirac({0.5, 0.0}), 1e-9},
      {"product", "dirac (1/2, 1/2)", EmpiricalMeasure::dirac({0.5, 0.5}), 1e-9},
      {"rot_half", "grid 8", EmpiricalMeasure::uniform_grid(8), 1e-9},
      {"rot_irr", "orbit", orbit("rot_irr"), 1e-3},
      {"skew_irr", "orbit", orbit("skew_irr"), 1e-3},
      {"twist", "circle y=0", EmpiricalMeasure::circle_y(0.0, 64), 1e-9},
      {"twist", "circle y=1/4", EmpiricalMeasure::circle_y(0.25, 64), 1e-9},
  };
  int exercised = 0, counterexamples = 0, empty_when_required = 0;
  json rows = json::array();
  for (const auto& p : pairs) {
    const FranksCertificate c = franks_certificate(g, letter(g, p.map), p.mu, p.tol);
    const bool required = c.rho_zero && c.proxy_pass;
    if (required) ++exercised;
    if (required && c.fixed.empty()) ++empty_when_required;
    if (c.verdict == "counterexample") ++counterexamples;
    rows.push_back({{"map", p.map},
                    {"measure", p.measure},
                    {"rho", vec(c.rho)},
                    {"rho_zero", c.rho_zero},
                    {"proxy_spread", c.proxy_spread},
                    {"fixed_points", c.fixed.points.size()},
                    {"fixed_chains", c.fixed.chains.size()},
                    {"verdict", c.verdict}});
  }
  r.metrics["pairs"] = rows;
  r.metrics["hypothesis_met"] = exercised;
  r.metrics["counterexamples"] = counterexamples;
  r.passed = exercised > 0 && counterexamples == 0 && empty_when_required == 0;
  return r;
}

// ---------------------------------------------------------------------------
// 10. Klein-bottle invariants.

CriterionResult c10_covers() {
  CriterionResult r;
  bool ok = true;
  json defects = json::array();
  // Horizontal translations commute with sigma; vertical ones are off by 2b.
  for (const double a : {0.0, 0.125, 0.25, 0.375, 0.5, 0.625}) {
    MapGroup g;
    const Word w = Word::letter(g.add(catalog::translation("t", a, 0.0)));
    const double d = check_sigma_commute(g, w, 32);
    ok = ok && d == 0.0;
    defects.push_back({{"translation", vec({a, 0.0})}, {"defect", d}, {"expected", 0.0}});
  }
  for (const double b : {0.125, 0.25, 0.375, 0.5}) {
    MapGroup g;
    const Word w = Word::letter(g.add(catalog::translation("t", 0.0, b)));
    const double d = check_sigma_commute(g, w, 32);
    const double expect = std::abs(circle_diff(2 * b, 0.0));
    ok = ok && d == expect;
    defects.push_back({{"translation", vec({0.0, b})}, {"defect", d}, {"expected", expect}});
  }

  json bars = json::array();
  const EmpiricalMeasure grid = sigma_symmetrize(EmpiricalMeasure::uniform_grid(8));
  bool coherent = true;
  for (const double a : {0.0, 0.125, 0.375, 0.5, 0.875}) {
    MapGroup g;
    const Word w = Word::letter(g.add(catalog::translation("t", a, 0.0)));
    for (int m = -2; m <= 2; ++m) {
      const RhoBar rb = rho_bar(g, grid, LiftedWord(w, {m, 0}));
      const bool pass = rb.a == a && rb.b == 0.0;
      ok = ok && pass;
      const bool zero_bar = rb.a == 0.0 && rb.b == 0.0;
      const Vec2 rho = rb.rho;
      const bool zero_rho = std::abs(rho.x - std::round(rho.x)) < 1e-12 && std::abs(rho.y - std::round(rho.y)) < 1e-12;
      coherent = coherent && zero_bar == zero_rho;
      bars.push_back({{"a", a}, {"lift_shift", m}, {"rho_bar", vec({rb.a, rb.b})}, {"passed", pass}});
    }
  }

  // A skew commuting with sigma, an invariant circle with b != 0, and its symmetrization.
  MapGroup g;
  const Word s = Word::letter(g.add(catalog::skew("skew", 0.0, 0.0, catalog::kSkewEpsilon)));
  const EmpiricalMeasure nu = EmpiricalMeasure::circle_x(0.25, 1000);
  const double nu_defect = invariance_defect(g, s, nu);
  const Vec2 rho_nu = rotation_vector(g, nu, LiftedWord(s));
  const Vec2 rho_flip = rotation_vector(g, sigma_pushforward(nu), LiftedWord(s));
  const Vec2 rho_tau = rotation_vector(g, sigma_symmetrize(nu), LiftedWord(s));
  const double flip_err = (rho_flip - Vec2{rho_nu.x, -rho_nu.y}).norm();

  const Word s4 = Word::letter(g.add(catalog::skew_sin4("skew4", 0.0, catalog::kSkewEpsilon)));
  const double s4_defect = check_sigma_commute(g, s4, 32);

  r.metrics["sigma_defects"] = defects;
  r.metrics["rho_bar"] = bars;
  r.metrics["rho_bar_coherent"] = coherent;
  r.metrics["nu_defect"] = nu_defect;
  r.metrics["rho_nu"] = vec(rho_nu);
  r.metrics["sigma_flip_error"] = flip_err;
  r.metrics["rho_mu_tau"] = vec(rho_tau);
  r.metrics["sin4_defect"] = s4_defect;
  r.passed = ok && coherent && nu_defect < 1e-9 && std::abs(rho_nu.y) > 0.05 && flip_err < 1e-8 &&
             std::abs(rho_tau.y) < 1e-8 && std::abs(s4_defect - 2 * catalog::kSkewEpsilon) < 1e-12;
  return r;
}

// ---------------------------------------------------------------------------
// 11. Thread-count independence of the numerical criteria.

CriterionResult c11_determinism() {
  CriterionResult r;
  const int saved = threads();
  auto run_all = [&](int n) {
    set_threads(n);
    std::string dump;
    for (const auto& c : criteria()) {
      if (c.id == 3 || c.id == 4 || c.id == 6 || c.id == 7 || c.id == 10) dump += run_criterion(c).metrics.dump();
    }
    return dump;
  };
  std::string one, eight;
  try {
    one = run_all(1);
    eight = run_all(8);
  } catch (...) {
    set_threads(saved);
    throw;
  }
  set_threads(saved);
  r.metrics["compared_criteria"] = json::array({3, 4, 6, 7, 10});
  r.metrics["threads"] = json::array({1, 8});
  r.metrics["identical"] = one == eight;
  r.passed = one == eight;
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "mcg exhaustive consistency", 10, c1_mcg_exhaustive},
      {2, "nilpotent classification and spectral condition", 1, c2_classification},
      {3, "rotation vector conjugation and additivity", 5, c3_rotation_identities},
      {4, "rotation pushforward formulas", 5, c4_rotev},
      {5, "bounded orbit dichotomy", 5, c5_bounded_orbits},
      {6, "rotation preservation under averaging", 30, c6_preservation},
      {7, "example map with the antipodal map", 60, c7_example},
      {8, "rotation sets", 120, c8_rotation_sets},
      {9, "franks consistency sweep", 120, c9_franks},
      {10, "klein bottle invariants", 10, c10_covers},
      {11, "determinism across thread counts", 120, c11_determinism},
  };
  return c;
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r = CriterionResult{};
    r.passed = false;
    r.metrics["error"] = e.what();
  }
  r.id = c.id;
  r.name = c.name;
  return r;
}

nlohmann::ordered_json suite_report(const std::vector<CriterionResult>& results) {
  json out;
  out["suite"] = "verify";
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"metrics", r.metrics}});
    all = all && r.passed;
  }
  out["criteria"] = arr;
  out["passed"] = all;
  return out;
}

}  // namespace rotor
