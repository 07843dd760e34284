#include "rotor/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "rotor/errors.hpp"
#include "rotor/geometry.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Keyed {
  std::int64_t kx, ky;
  Atom atom;
};

double compensated_total(const std::vector<Atom>& atoms) {
  CompensatedSum2 s;
  for (const auto& a : atoms) s.add({a.w, 0.0});
  return s.value().x;
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<Atom> atoms, double quantum) {
  if (!(quantum > 0.0) || quantum > 0.5) throw InvalidArgument("merge quantum must be in (0, 1/2]");
  const auto cells = static_cast<std::int64_t>(std::llround(1.0 / quantum));
  std::vector<Keyed> keyed;
  keyed.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) throw InvalidArgument("atom weights must be finite and >= 0");
    if (a.w == 0.0) continue;
    const TorusPoint p = TorusPoint::from(a.p.lift());
    const std::int64_t kx = static_cast<std::int64_t>(std::llround(p.x / quantum)) % cells;
    const std::int64_t ky = static_cast<std::int64_t>(std::llround(p.y / quantum)) % cells;
    keyed.push_back({kx, ky, {p, a.w}});
  }
  if (keyed.empty()) throw InvalidArgument("measure has zero total mass");
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.kx, a.ky, a.atom.p.x, a.atom.p.y, a.atom.w) <
           std::tie(b.kx, b.ky, b.atom.p.x, b.atom.p.y, b.atom.w);
  });
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    CompensatedSum2 w;
    while (j < keyed.size() && keyed[j].kx == keyed[i].kx && keyed[j].ky == keyed[i].ky) {
      w.add({keyed[j].atom.w, 0.0});
      ++j;
    }
    atoms_.push_back({keyed[i].atom.p, w.value().x});
    i = j;
  }
  const double total = compensated_total(atoms_);
  for (auto& a : atoms_) a.w /= total;
}

EmpiricalMeasure EmpiricalMeasure::dirac(const TorusPoint& p) { return EmpiricalMeasure({{p, 1.0}}); }

EmpiricalMeasure EmpiricalMeasure::uniform_grid(int n, Vec2 offset) {
  if (n < 1) throw InvalidArgument("grid size must be >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      atoms.push_back({TorusPoint::from({static_cast<double>(i) / n + offset.x, static_cast<double>(j) / n + offset.y}),
                       1.0});
    }
  }
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure EmpiricalMeasure::circle_x(double x0, int n) {
  if (n < 1) throw InvalidArgument("circle sample count must be >= 1");
  std::vector<Atom> atoms;
  for (int j = 0; j < n; ++j) atoms.push_back({TorusPoint::from({x0, static_cast<double>(j) / n}), 1.0});
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure EmpiricalMeasure::circle_y(double y0, int n) {
  if (n < 1) throw InvalidArgument("circle sample count must be >= 1");
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({TorusPoint::from({static_cast<double>(i) / n, y0}), 1.0});
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure EmpiricalMeasure::uniform_on(const std::vector<TorusPoint>& points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p, 1.0});
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure EmpiricalMeasure::mix(const EmpiricalMeasure& a, const EmpiricalMeasure& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("mixing weight must lie in [0, 1]");
  std::vector<Atom> atoms;
  for (const auto& x : a.atoms_) atoms.push_back({x.p, x.w * (1.0 - t)});
  for (const auto& x : b.atoms_) atoms.push_back({x.p, x.w * t});
  return EmpiricalMeasure(std::move(atoms));
}

double EmpiricalMeasure::total_mass() const { return compensated_total(atoms_); }

EmpiricalMeasure EmpiricalMeasure::merged(double quantum) const { return EmpiricalMeasure(atoms_, quantum); }

EmpiricalMeasure EmpiricalMeasure::coarsened(int cells) const {
  if (cells < 1) throw InvalidArgument("coarsening grid must be >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    const double cx = (std::floor(a.p.x * cells) + 0.5) / cells;
    const double cy = (std::floor(a.p.y * cells) + 0.5) / cells;
    atoms.push_back({TorusPoint::from({cx, cy}), a.w});
  }
  return EmpiricalMeasure(std::move(atoms), 0.25 / cells);
}

// ---------------------------------------------------------------------------

EmpiricalMeasure pushforward(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu, double quantum) {
  const auto& src = mu.atoms();
  std::vector<Atom> out(src.size());
  parallel_for(src.size(), [&](std::size_t i) { out[i] = {g.apply_torus(w, src[i].p), src[i].w}; });
  return EmpiricalMeasure(std::move(out), quantum);
}

Vec2 rotation_vector(const MapGroup& g, const EmpiricalMeasure& mu, const LiftedWord& lw) {
  g.require_isotopic(lw.word);
  const auto& atoms = mu.atoms();
  std::vector<Vec2> disp(atoms.size());
  parallel_for(atoms.size(), [&](std::size_t i) {
    const Vec2 p = atoms[i].p.lift();
    disp[i] = g.apply_lift(lw, p) - p;
  });
  CompensatedSum2 s;
  for (std::size_t i = 0; i < atoms.size(); ++i) s.add(atoms[i].w * disp[i]);
  return s.value();
}

const std::array<std::pair<int, int>, 12>& test_frequencies() {
  static const std::array<std::pair<int, int>, 12> f = {{
      {0, 1}, {0, 2}, {1, -2}, {1, -1}, {1, 0}, {1, 1}, {1, 2}, {2, -2}, {2, -1}, {2, 0}, {2, 1}, {2, 2},
  }};
  return f;
}

double invariance_defect(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu) {
  const auto& atoms = mu.atoms();
  std::vector<TorusPoint> image(atoms.size());
  parallel_for(atoms.size(), [&](std::size_t i) { image[i] = g.apply_torus(w, atoms[i].p); });
  double defect = 0.0;
  for (const auto& [j, k] : test_frequencies()) {
    CompensatedSum2 diff;  // (sin, cos) differences
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double t0 = kTwoPi * (j * atoms[i].p.x + k * atoms[i].p.y);
      const double t1 = kTwoPi * (j * image[i].x + k * image[i].y);
      diff.add(atoms[i].w * Vec2{std::sin(t1) - std::sin(t0), std::cos(t1) - std::cos(t0)});
    }
    const Vec2 d = diff.value();
    defect = std::max({defect, std::abs(d.x), std::abs(d.y)});
  }
  return defect;
}

// ---------------------------------------------------------------------------

BirkhoffRecord birkhoff_mean(const MapGroup& g, const LiftedWord& lw, const TorusPoint& seed, std::int64_t n,
                             DisplacementConvention conv) {
  if (conv == DisplacementConvention::isotopic) g.require_isotopic(lw.word);
  if (n < 1) throw InvalidArgument("iterate count must be >= 1");
  const std::int64_t tail = std::max<std::int64_t>(1, n / 10);
  std::vector<Vec2> partial;
  partial.reserve(static_cast<std::size_t>(tail) + 1);
  CompensatedSum2 s;
  Vec2 p = seed.lift();
  for (std::int64_t k = 1; k <= n; ++k) {
    const Vec2 d = g.apply_lift(lw, p) - p;
    s.add(d);
    p = TorusPoint::from(p + d).lift();
    if (k >= n - tail) partial.push_back(s.value() / static_cast<double>(k));
  }
  BirkhoffRecord r;
  r.seed = seed;
  r.n = n;
  r.mean = s.value() / static_cast<double>(n);
  for (const auto& m : partial) r.tail_spread = std::max(r.tail_spread, (m - r.mean).norm());
  return r;
}

RotationSetEstimate estimate_rotation_set(const MapGroup& g, const LiftedWord& lw,
                                          const std::vector<TorusPoint>& seeds, std::int64_t n,
                                          DisplacementConvention conv) {
  if (conv == DisplacementConvention::isotopic) g.require_isotopic(lw.word);
  RotationSetEstimate est;
  est.n = n;
  est.samples.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { est.samples[i] = birkhoff_mean(g, lw, seeds[i], n, conv).mean; });
  est.hull = convex_hull(est.samples);
  return est;
}

std::vector<TorusPoint> seed_grid(int n) {
  if (n < 1) throw InvalidArgument("seed grid size must be >= 1");
  std::vector<TorusPoint> seeds;
  seeds.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) seeds.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  }
  return seeds;
}

KrylovResult krylov_bogolyubov(const MapGroup& g, const Word& w, const TorusPoint& seed, std::int64_t n,
                               std::int64_t window) {
  if (window < 1 || n < window) throw InvalidArgument("need n >= window >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(window));
  TorusPoint p = seed;
  for (std::int64_t k = 0; k < n; ++k) {
    if (k >= n - window) atoms.push_back({p, 1.0});
    p = g.apply_torus(w, p);
  }
  EmpiricalMeasure mu(std::move(atoms));
  const double defect = invariance_defect(g, w, mu);
  return {std::move(mu), defect};
}

IrrotationalResult irrotational_lift(const MapGroup& g, const LiftedWord& lw, const std::vector<TorusPoint>& seeds,
                                     std::int64_t n, double tol) {
  IrrotationalResult r{std::nullopt, {}, estimate_rotation_set(g, lw, seeds, n), 0.0, {}};
  r.hull_diameter = diameter(r.estimate.hull);
  r.hull_centroid = centroid(r.estimate.hull);
  const IntVec2 v{static_cast<std::int64_t>(std::llround(r.hull_centroid.x)),
                  static_cast<std::int64_t>(std::llround(r.hull_centroid.y))};
  if (r.hull_diameter < tol && (r.hull_centroid - v.to_real()).norm() < tol) {
    r.shift = v;
    r.lift = lw.translated(-v);
  }
  return r;
}

double distortion_ratio(const MapGroup& g, const LiftedWord& lw, std::int64_t n,
                        const std::vector<std::pair<Vec2, Vec2>>& pairs) {
  g.require_isotopic(lw.word);
  if (n < 1) throw InvalidArgument("iterate count must be >= 1");
  auto total_displacement = [&](const Vec2& start) {
    CompensatedSum2 s;
    Vec2 p = TorusPoint::from(start).lift();
    for (std::int64_t k = 0; k < n; ++k) {
      const Vec2 d = g.apply_lift(lw, p) - p;
      s.add(d);
      p = TorusPoint::from(p + d).lift();
    }
    return s.value();
  };
  std::vector<double> ratio(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    ratio[i] = (total_displacement(pairs[i].first) - total_displacement(pairs[i].second)).norm() /
               static_cast<double>(n);
  });
  double worst = 0.0;
  for (double r : ratio) worst = std::max(worst, r);
  return worst;
}

}  // namespace rotor
