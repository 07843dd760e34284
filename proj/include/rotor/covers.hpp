#pragma once

// The Klein bottle as the quotient of the torus by sigma(x, y) = (x + 1/2, -y),
// and the doubling of annulus maps into torus maps.

#include <vector>

#include "rotor/measures.hpp"

namespace rotor {

TorusPoint sigma(const TorusPoint& p);

/// Max over the n x n grid of the torus distance between w(sigma p) and sigma(w p).
double check_sigma_commute(const MapGroup& g, const Word& w, int grid_n);

EmpiricalMeasure sigma_pushforward(const EmpiricalMeasure& mu);

/// (nu + sigma_* nu) / 2.
EmpiricalMeasure sigma_symmetrize(const EmpiricalMeasure& nu);

struct RhoBar {
  double a = 0.0;  // first rotation coordinate mod 1
  double b = 0.0;  // |second coordinate|
  Vec2 rho;        // the underlying rotation vector
};

/// Throws NotSigmaEquivariant if the commutation defect on a 32 x 32 grid exceeds tol.
RhoBar rho_bar(const MapGroup& g, const EmpiricalMeasure& mu, const LiftedWord& lw, double tol = 1e-9);

/// amplitude * sin(2pi jx x + phase) * poly(y), y in [0, 1].
struct AnnulusTerm {
  double amplitude = 0.0;
  std::int64_t jx = 0;
  double phase = 0.0;
  std::vector<double> poly{1.0};
};

/// (x, y) -> (x + a(x, y), y + b(x, y)) on S^1 x [0, 1].
struct AnnulusMapSpec {
  std::string name;
  std::vector<AnnulusTerm> a;
  std::vector<AnnulusTerm> b;
};

Vec2 annulus_apply(const AnnulusMapSpec& f, const Vec2& p);

/// Torus point of the lower half corresponding to an annulus point: (x, y/2).
TorusPoint annulus_to_double(const Vec2& p);
/// Annulus point covered by a torus point: (x, 2 min(Y, 1 - Y)).
Vec2 double_to_annulus(const TorusPoint& p);

/// Torus generator equal to the rescaled annulus map on y in [0, 1/2] and its
/// mirror on [1/2, 1). Throws BoundaryViolation unless b vanishes on both boundaries.
Generator double_annulus(const AnnulusMapSpec& f);

}  // namespace rotor
