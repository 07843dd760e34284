#include "rotor/ginv.hpp"

#include <algorithm>
#include <cmath>

#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

EmpiricalMeasure cesaro_stage(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu, int length,
                              double quantum) {
  const auto& src = mu.atoms();
  const auto L = static_cast<std::size_t>(length);
  std::vector<Atom> out(src.size() * L);
  parallel_for(src.size(), [&](std::size_t i) {
    TorusPoint p = src[i].p;
    for (std::size_t k = 0; k < L; ++k) {
      out[i * L + k] = {p, src[i].w / static_cast<double>(length)};
      if (k + 1 < L) p = g.apply_torus(w, p);
    }
  });
  EmpiricalMeasure next(std::move(out), quantum);
  if (next.size() > EmpiricalMeasure::kCoarsenThreshold) next = next.coarsened(EmpiricalMeasure::kCoarsenCells);
  return next;
}

double max_defect(const MapGroup& g, const std::vector<Word>& words, const EmpiricalMeasure& mu) {
  double d = 0.0;
  for (const auto& w : words) d = std::max(d, invariance_defect(g, w, mu));
  return d;
}

}  // namespace

ConstructionTrace construct_invariant(const MapGroup& g, const GroupSpec& spec, const std::vector<TrackedLift>& tracked,
                                      const EmpiricalMeasure& mu0, const ConstructionOptions& opt) {
  if (opt.averaging_length < 1) throw InvalidArgument("averaging length must be >= 1");
  if (!spec.declared.empty() && spec.declared.size() != spec.extension.size()) {
    throw InvalidArgument("declared classes do not match the extension generators");
  }
  for (const auto& w : spec.g0) g.require_isotopic(w);
  for (const auto& t : tracked) g.require_isotopic(t.lift.word);

  std::vector<MCGClass> classes;
  for (std::size_t i = 0; i < spec.extension.size(); ++i) {
    classes.push_back(g.linear_part(spec.extension[i]));
    if (!spec.declared.empty() && !(spec.declared[i] == classes.back())) {
      throw InvalidArgument("extension generator " + std::to_string(i + 1) + " has class " + classes.back().str() +
                            ", declared " + spec.declared[i].str());
    }
  }

  ConstructionTrace trace;
  trace.forced = opt.force;
  if (!classes.empty()) {
    const StarStarVerdict v = check_condition_star_star(classes);
    trace.condition_satisfied = v.satisfied;
    if (!v.satisfied) {
      trace.condition_note = "class group fails the spectral condition (" + to_string(v.failure) + ")";
    } else {
      // Each averaged generator must itself avoid non-trivial roots of unity.
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (has_nontrivial_unity_root(classes[i])) {
          trace.condition_satisfied = false;
          trace.condition_note = "extension generator " + std::to_string(i + 1) + " has class " + classes[i].str() +
                                 " with a non-trivial root-of-unity eigenvalue; choose generators with classes " +
                                 "from the witness set instead";
          break;
        }
      }
    }
    if (!trace.condition_satisfied && !opt.force) throw ConditionStarStarViolated(trace.condition_note);
  }

  std::vector<Word> checked = spec.g0;
  const double d0 = max_defect(g, checked, mu0);
  if (!(d0 < opt.tol)) {
    throw DefectExceeded("initial measure has defect " + std::to_string(d0) + " against the base generators (tol " +
                         std::to_string(opt.tol) + ")");
  }

  auto record = [&](const EmpiricalMeasure& mu, double defect, int length) {
    std::vector<Vec2> rho;
    for (const auto& t : tracked) rho.push_back(rotation_vector(g, mu, t.lift));
    trace.rotations.push_back(std::move(rho));
    trace.stage_defects.push_back(defect);
    trace.stage_lengths.push_back(length);
    trace.measures.push_back(mu);
  };
  record(mu0, d0, 0);

  for (const auto& ext : spec.extension) {
    checked.push_back(ext);
    int length = opt.averaging_length;
    EmpiricalMeasure next = cesaro_stage(g, ext, trace.measures.back(), length, opt.merge_quantum);
    double defect = max_defect(g, checked, next);
    for (int k = 0; k < opt.max_doublings && !(defect <= opt.tol); ++k) {
      length *= 2;
      next = cesaro_stage(g, ext, trace.measures.back(), length, opt.merge_quantum);
      defect = max_defect(g, checked, next);
    }
    record(next, defect, length);
  }

  const EmpiricalMeasure& final_mu = trace.measures.back();
  std::vector<Word> all = spec.g0;
  all.insert(all.end(), spec.extension.begin(), spec.extension.end());
  for (const auto& w : all) {
    trace.final_defects.push_back(invariance_defect(g, w, final_mu));
    trace.final_defect = std::max(trace.final_defect, trace.final_defects.back());
  }
  if (trace.final_defect > 10.0 * opt.tol) {
    throw DefectExceeded("final measure has defect " + std::to_string(trace.final_defect) +
                         "; increase the averaging length");
  }
  return trace;
}

RotevResult rotev_residual(const MapGroup& g, const LiftedWord& gl, const LiftedWord& hl, const EmpiricalMeasure& mu,
                           std::int64_t p) {
  g.require_isotopic(hl.word);
  if (p == 0) throw InvalidArgument("p must be non-zero");
  const MCGClass a = g.linear_part(gl.word);
  const LiftedWord comm = g.commutator(g.inverse(gl), hl);

  RotevResult r;
  r.lhs = rotation_vector(g, pushforward(g, power(gl.word, p), mu), hl);

  const Vec2 rho_h = rotation_vector(g, mu, hl);
  const Vec2 rho_c = rotation_vector(g, mu, comm);
  CompensatedSum2 rhs;
  rhs.add(a.pow(p).apply(rho_h));
  if (p >= 1) {
    for (std::int64_t k = 1; k <= p; ++k) rhs.add(a.pow(k).apply(rho_c));
  } else {
    for (std::int64_t k = 1; k <= -p; ++k) rhs.add(-a.pow(-(k - 1)).apply(rho_c));
  }
  r.rhs = rhs.value();
  r.residual = r.lhs - r.rhs;
  return r;
}

BoundedOrbit bounded_orbit_check(const MCGClass& a, const Vec2& rho0, const Vec2& w, int P) {
  if (P < 2) throw InvalidArgument("orbit half-length must be >= 2");
  const MCGClass ainv = a.inverse();
  double inner = rho0.norm();  // max over |p| <= P/2
  double outer = inner;        // max over |p| <= P
  Vec2 fwd = rho0;
  Vec2 bwd = rho0;
  for (int p = 1; p <= P; ++p) {
    fwd = a.apply(fwd + w);
    bwd = ainv.apply(bwd) - w;
    const double m = std::max(fwd.norm(), bwd.norm());
    if (!std::isfinite(m)) return {false, INFINITY};
    outer = std::max(outer, m);
    if (p <= P / 2) inner = std::max(inner, m);
  }
  BoundedOrbit r;
  r.max_norm = outer;
  r.bounded = std::isfinite(outer) && outer <= (1.0 + 1e-6) * inner + 1e-12;
  return r;
}

}  // namespace rotor
