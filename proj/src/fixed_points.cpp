#include "rotor/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>

#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

using Field = std::function<std::vector<double>(const Vec2&)>;

constexpr double kFdStep = 1e-6;
constexpr int kNewtonSteps = 50;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Vec2 wrapped(const Vec2& d) { return {d.x - std::floor(d.x + 0.5), d.y - std::floor(d.y + 0.5)}; }

Field torus_field(const MapGroup& g, const std::vector<Word>& ws) {
  return [&g, ws](const Vec2& p) {
    std::vector<double> out;
    out.reserve(2 * ws.size());
    const TorusPoint tp = TorusPoint::from(p);
    for (const auto& w : ws) {
      const Vec2 d = wrapped(g.apply_torus(w, tp).lift() - tp.lift());
      out.push_back(d.x);
      out.push_back(d.y);
    }
    return out;
  };
}

Field lift_field(const MapGroup& g, const LiftedWord& lw) {
  return [&g, lw](const Vec2& p) {
    const Vec2 q = TorusPoint::from(p).lift();
    const Vec2 d = g.apply_lift(lw, q) - q;
    return std::vector<double>{d.x, d.y};
  };
}

struct Refined {
  bool converged = false;
  Vec2 p;
  double residual = 0.0;
};

// Damped Gauss-Newton with a central-difference Jacobian; the small ridge term
// keeps steps defined where the zero set is a curve.
Refined newton(const Field& f, Vec2 z, double tol) {
  std::vector<double> fz = f(z);
  double r = norm(fz);
  for (int it = 0; it < kNewtonSteps && r > 1e-15; ++it) {
    const std::size_t m = fz.size();
    std::vector<double> jx(m), jy(m);
    {
      const auto a = f(z + Vec2{kFdStep, 0.0});
      const auto b = f(z - Vec2{kFdStep, 0.0});
      const auto c = f(z + Vec2{0.0, kFdStep});
      const auto d = f(z - Vec2{0.0, kFdStep});
      for (std::size_t i = 0; i < m; ++i) {
        jx[i] = (a[i] - b[i]) / (2 * kFdStep);
        jy[i] = (c[i] - d[i]) / (2 * kFdStep);
      }
    }
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
      a11 += jx[i] * jx[i];
      a12 += jx[i] * jy[i];
      a22 += jy[i] * jy[i];
      b1 += jx[i] * fz[i];
      b2 += jy[i] * fz[i];
    }
    const double ridge = 1e-12 * (a11 + a22);
    a11 += ridge;
    a22 += ridge;
    const double det = a11 * a22 - a12 * a12;
    if (!(det > 0.0)) break;
    Vec2 step{-(a22 * b1 - a12 * b2) / det, -(-a12 * b1 + a11 * b2) / det};
    bool improved = false;
    for (int half = 0; half < 12; ++half) {
      const Vec2 cand = z + step;
      auto fc = f(cand);
      const double rc = norm(fc);
      if (rc < r) {
        z = cand;
        fz = std::move(fc);
        r = rc;
        improved = true;
        break;
      }
      step = 0.5 * step;
    }
    if (!improved) break;
  }
  const TorusPoint tp = TorusPoint::from(z);
  const double res = norm(f(tp.lift()));
  return {res < tol, tp.lift(), res};
}

struct Scan {
  int n = 0;
  std::vector<std::vector<double>> values;
  std::vector<double> norms;
  double max_norm = 0.0;
};

Scan scan_grid(const Field& f, int n) {
  Scan s;
  s.n = n;
  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  s.values.resize(total);
  s.norms.resize(total);
  parallel_for(total, [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(n));
    const int j = static_cast<int>(k % static_cast<std::size_t>(n));
    s.values[k] = f({static_cast<double>(i) / n, static_cast<double>(j) / n});
    s.norms[k] = norm(s.values[k]);
  });
  for (double v : s.norms) s.max_norm = std::max(s.max_norm, v);
  return s;
}

std::size_t idx(int n, int i, int j) {
  i = ((i % n) + n) % n;
  j = ((j % n) + n) % n;
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
}

void dedupe_into(std::vector<FixedPoint>& out, const Refined& r, double radius) {
  const TorusPoint tp = TorusPoint::from(r.p);
  for (const auto& q : out) {
    if (torus_diff(q.p, tp).norm() < radius) return;
  }
  out.push_back({tp, r.residual, std::nullopt});
}

bool near(const std::vector<FixedPoint>& pts, const TorusPoint& p, double radius) {
  for (const auto& q : pts) {
    if (torus_diff(q.p, p).norm() < radius) return true;
  }
  return false;
}

FixedPointReport search(const Field& f, int grid_n, double tol) {
  if (grid_n < 8) throw InvalidArgument("grid_n must be >= 8");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  FixedPointReport rep;
  rep.grid_n = grid_n;
  rep.tol = tol;
  rep.newton_steps = kNewtonSteps;

  const Scan s = scan_grid(f, grid_n);
  if (s.max_norm < tol) {
    rep.all_fixed = true;
    return rep;
  }
  const int n = grid_n;
  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

  // A node is near the zero set when its value is small against the local variation.
  std::vector<char> nearzero(total, 0);
  std::vector<char> minimum(total, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = idx(n, i, j);
      double variation = 0.0;
      bool is_min = true;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::size_t q = idx(n, i + di, j + dj);
          if (std::abs(di) + std::abs(dj) == 1) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < s.values[k].size(); ++c) {
              const double d = s.values[k][c] - s.values[q][c];
              d2 += d * d;
            }
            variation = std::max(variation, std::sqrt(d2));
          }
          if (s.norms[q] < s.norms[k]) is_min = false;
        }
      }
      nearzero[k] = s.norms[k] < tol || s.norms[k] <= 0.5 * variation;
      minimum[k] = is_min;
    }
  }

  // 8-connected components of near-zero nodes, with wrap-around.
  std::vector<int> label(total, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t k = 0; k < total; ++k) {
    if (!nearzero[k] || label[k] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::deque<std::size_t> queue{k};
    label[k] = id;
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      comps[static_cast<std::size_t>(id)].push_back(c);
      const int ci = static_cast<int>(c / static_cast<std::size_t>(n));
      const int cj = static_cast<int>(c % static_cast<std::size_t>(n));
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const std::size_t q = idx(n, ci + di, cj + dj);
          if (nearzero[q] && label[q] < 0) {
            label[q] = id;
            queue.push_back(q);
          }
        }
      }
    }
  }

  // Candidates in grid order: every near-zero node and every local minimum.
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < total; ++k) {
    if (nearzero[k] || minimum[k]) cand.push_back(k);
  }
  std::vector<Refined> refined(cand.size());
  parallel_for(cand.size(), [&](std::size_t c) {
    const std::size_t k = cand[c];
    const Vec2 start{static_cast<double>(k / static_cast<std::size_t>(n)) / n,
                     static_cast<double>(k % static_cast<std::size_t>(n)) / n};
    refined[c] = newton(f, start, tol);
  });

  const double radius = 10.0 * tol;
  std::vector<FixedChain> chains(comps.size());
  std::vector<FixedPoint> isolated;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    if (!refined[c].converged) continue;
    const int id = label[cand[c]];
    if (id >= 0 && comps[static_cast<std::size_t>(id)].size() >= 8) {
      dedupe_into(chains[static_cast<std::size_t>(id)].nodes, refined[c], radius);
    } else {
      dedupe_into(isolated, refined[c], radius);
    }
  }
  for (std::size_t id = 0; id < comps.size(); ++id) {
    if (comps[id].size() < 8 || chains[id].nodes.empty()) continue;
    chains[id].grid_cells = comps[id].size();
    auto& nodes = chains[id].nodes;
    std::sort(nodes.begin(), nodes.end(), [](const FixedPoint& a, const FixedPoint& b) {
      return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
    });
    rep.chains.push_back(std::move(chains[id]));
  }
  for (const auto& p : isolated) {
    bool on_chain = false;
    for (const auto& ch : rep.chains) on_chain = on_chain || near(ch.nodes, p.p, std::max(radius, 2.0 / n));
    if (!on_chain) rep.points.push_back(p);
  }
  std::sort(rep.points.begin(), rep.points.end(), [](const FixedPoint& a, const FixedPoint& b) {
    return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
  });
  return rep;
}

}  // namespace

std::vector<FixedPoint> FixedPointReport::all_points() const {
  std::vector<FixedPoint> out = points;
  for (const auto& c : chains) out.insert(out.end(), c.nodes.begin(), c.nodes.end());
  return out;
}

FixedPointReport find_fixed_points(const MapGroup& g, const Word& w, int grid_n, double tol) {
  g.require_isotopic(w);
  return search(torus_field(g, {w}), grid_n, tol);
}

FixedPointReport find_lift_fixed_points(const MapGroup& g, const LiftedWord& lw, int grid_n, double tol) {
  g.require_isotopic(lw.word);
  return search(lift_field(g, lw), grid_n, tol);
}

FixedPointReport common_fixed_points(const MapGroup& g, const std::vector<Word>& ws, int grid_n, double tol) {
  if (ws.empty()) throw InvalidArgument("need at least one word");
  return search(torus_field(g, ws), grid_n, tol);
}

int fixed_point_index(const MapGroup& g, const Word& w, const TorusPoint& p, double radius, int samples) {
  if (!(radius > 0.0 && radius < 0.25)) throw InvalidArgument("radius must be in (0, 1/4)");
  if (samples < 8) throw InvalidArgument("need at least 8 samples");
  const Field f = torus_field(g, {w});
  std::vector<double> angle(static_cast<std::size_t>(samples) + 1);
  double smallest = INFINITY;
  for (int s = 0; s <= samples; ++s) {
    const double t = 2.0 * std::numbers::pi * s / samples;
    const auto v = f(p.lift() + radius * Vec2{std::cos(t), std::sin(t)});
    smallest = std::min(smallest, std::hypot(v[0], v[1]));
    angle[static_cast<std::size_t>(s)] = std::atan2(v[1], v[0]);
  }
  if (smallest < 1e-13) throw NonIsolated("displacement vanishes on the circle of radius " + std::to_string(radius));
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    double d = angle[static_cast<std::size_t>(s) + 1] - angle[static_cast<std::size_t>(s)];
    d -= 2.0 * std::numbers::pi * std::floor(d / (2.0 * std::numbers::pi) + 0.5);
    if (std::abs(d) > std::numbers::pi / 2) {
      throw AmbiguousWinding("angular increment " + std::to_string(d) + " too large; increase samples");
    }
    total += d;
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double k = std::round(turns);
  if (std::abs(total - 2.0 * std::numbers::pi * k) >= 0.1) {
    throw AmbiguousWinding("total angle " + std::to_string(total) + " is not a multiple of 2pi");
  }
  return static_cast<int>(k);
}

void attach_indices(const MapGroup& g, const Word& w, FixedPointReport& report, double radius, int samples) {
  for (auto& p : report.points) {
    try {
      p.index = fixed_point_index(g, w, p.p, radius, samples);
    } catch (const NonIsolated&) {
      p.index.reset();
    } catch (const AmbiguousWinding&) {
      p.index.reset();
    }
  }
}

FranksCertificate franks_certificate(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu, double tol,
                                     const FranksOptions& opt) {
  g.require_isotopic(w);
  FranksCertificate c;
  c.defect = invariance_defect(g, w, mu);
  if (!(c.defect < tol)) {
    throw DefectExceeded("measure defect " + std::to_string(c.defect) + " exceeds " + std::to_string(tol));
  }
  const LiftedWord lift(w);
  c.rho = rotation_vector(g, mu, lift);
  c.nearest = {static_cast<std::int64_t>(std::llround(c.rho.x)), static_cast<std::int64_t>(std::llround(c.rho.y))};
  c.rho_distance = (c.rho - c.nearest.to_real()).norm();
  c.rho_zero = c.rho_distance < opt.rho_tol;

  // Ergodicity proxy: Birkhoff means from evenly spaced atoms should agree.
  const auto& atoms = mu.atoms();
  const std::size_t count = std::min<std::size_t>(atoms.size(), static_cast<std::size_t>(std::max(1, opt.proxy_atoms)));
  std::vector<Vec2> means(count);
  parallel_for(count, [&](std::size_t i) {
    const std::size_t a = i * atoms.size() / count;
    means[i] = birkhoff_mean(g, lift, atoms[a].p, opt.proxy_n).mean;
  });
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) c.proxy_spread = std::max(c.proxy_spread, (means[i] - means[j]).norm());
  }
  c.proxy_pass = c.proxy_spread < opt.proxy_tol;

  c.fixed = find_fixed_points(g, w, opt.grid_n, opt.fixed_tol);
  const auto pts = c.fixed.all_points();
  if (c.fixed.all_fixed) {
    c.support_distance = 0.0;
  } else if (!pts.empty()) {
    double best = INFINITY;
    for (const auto& p : pts) {
      for (const auto& a : atoms) best = std::min(best, torus_diff(p.p, a.p).norm());
    }
    c.support_distance = best;
  }

  if (!(c.rho_zero && c.proxy_pass)) {
    c.verdict = "hypothesis_not_met";
    c.note = c.rho_zero ? "ergodicity proxy failed (heuristic)" : "rotation vector is not zero mod Z^2";
    if (!c.fixed.empty()) c.note += "; fixed points exist elsewhere, which is not a contradiction";
  } else if (!c.fixed.empty()) {
    c.verdict = "consistent";
  } else {
    c.verdict = "counterexample";
    c.note = "no fixed point found at grid " + std::to_string(opt.grid_n);
  }
  return c;
}

}  // namespace rotor
