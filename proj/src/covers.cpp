#include "rotor/covers.hpp"

#include <cmath>
#include <numbers>

#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

double term_value(const AnnulusTerm& t, double x, double y) {
  double poly = 0.0;
  for (std::size_t i = t.poly.size(); i-- > 0;) poly = poly * y + t.poly[i];
  return t.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t.jx) * x + t.phase) * poly;
}

double sum_terms(const std::vector<AnnulusTerm>& ts, double x, double y) {
  double s = 0.0;
  for (const auto& t : ts) s += term_value(t, x, y);
  return s;
}

DisplacementTerm doubled(const AnnulusTerm& t, double scale, bool mirror) {
  DisplacementTerm d;
  d.amplitude = t.amplitude * scale;
  d.jx = t.jx;
  d.ky = 0;
  d.phase = t.phase;
  d.tent_poly = t.poly.empty() ? std::vector<double>{0.0} : t.poly;
  d.mirror_odd = mirror;
  return d;
}

}  // namespace

TorusPoint sigma(const TorusPoint& p) { return TorusPoint::from({p.x + 0.5, -p.y}); }

double check_sigma_commute(const MapGroup& g, const Word& w, int grid_n) {
  if (grid_n < 1) throw InvalidArgument("grid_n must be >= 1");
  const auto total = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
  std::vector<double> d(total);
  parallel_for(total, [&](std::size_t k) {
    const TorusPoint p{static_cast<double>(k / static_cast<std::size_t>(grid_n)) / grid_n,
                       static_cast<double>(k % static_cast<std::size_t>(grid_n)) / grid_n};
    d[k] = torus_diff(g.apply_torus(w, sigma(p)), sigma(g.apply_torus(w, p))).norm();
  });
  double worst = 0.0;
  for (double v : d) worst = std::max(worst, v);
  return worst;
}

EmpiricalMeasure sigma_pushforward(const EmpiricalMeasure& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back({sigma(a.p), a.w});
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure sigma_symmetrize(const EmpiricalMeasure& nu) {
  return EmpiricalMeasure::mix(nu, sigma_pushforward(nu), 0.5);
}

RhoBar rho_bar(const MapGroup& g, const EmpiricalMeasure& mu, const LiftedWord& lw, double tol) {
  g.require_isotopic(lw.word);
  const double defect = check_sigma_commute(g, lw.word, 32);
  if (!(defect <= tol)) {
    throw NotSigmaEquivariant("commutation defect " + std::to_string(defect) + " exceeds " + std::to_string(tol));
  }
  RhoBar r;
  r.rho = rotation_vector(g, mu, lw);
  r.a = r.rho.x - std::floor(r.rho.x);
  if (r.a >= 1.0) r.a = 0.0;
  r.b = std::abs(r.rho.y);
  return r;
}

// ---------------------------------------------------------------------------

Vec2 annulus_apply(const AnnulusMapSpec& f, const Vec2& p) {
  return {p.x + sum_terms(f.a, p.x, p.y), p.y + sum_terms(f.b, p.x, p.y)};
}

TorusPoint annulus_to_double(const Vec2& p) { return TorusPoint::from({p.x, 0.5 * p.y}); }

Vec2 double_to_annulus(const TorusPoint& p) { return {p.x, 2.0 * std::min(p.y, 1.0 - p.y)}; }

Generator double_annulus(const AnnulusMapSpec& f) {
  constexpr int kBoundarySamples = 256;
  for (int i = 0; i < kBoundarySamples; ++i) {
    const double x = static_cast<double>(i) / kBoundarySamples;
    const double b0 = sum_terms(f.b, x, 0.0);
    const double b1 = sum_terms(f.b, x, 1.0);
    if (std::abs(b0) > 1e-14 || std::abs(b1) > 1e-14) {
      throw BoundaryViolation("annulus map '" + f.name + "' moves a boundary circle at x = " + std::to_string(x) +
                              " (b = " + std::to_string(std::abs(b0) > 1e-14 ? b0 : b1) + ")");
    }
  }
  // On the lower half Y = y/2 moves by b/2; on the mirrored half by -b/2.
  std::vector<DisplacementTerm> xs, ys;
  for (const auto& t : f.a) xs.push_back(doubled(t, 1.0, false));
  for (const auto& t : f.b) ys.push_back(doubled(t, 0.5, true));
  Generator gen(f.name, MCGClass::identity(), xs, ys);

  // Shears x -> x + a(y) have the explicit inverse x -> x - a(y).
  bool shear = f.b.empty();
  for (const auto& t : f.a) shear = shear && t.jx == 0;
  if (shear && !f.a.empty()) {
    std::vector<DisplacementTerm> inv = xs;
    for (auto& t : inv) t.amplitude = -t.amplitude;
    gen = gen.with_closed_inverse(Generator(f.name + "^-1", MCGClass::identity(), inv, {}));
  }
  return gen;
}

}  // namespace rotor
