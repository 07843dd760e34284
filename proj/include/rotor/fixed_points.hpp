#pragma once

// Grid search plus Newton refinement for fixed points on the torus, winding
// indices, and the empirical Franks check.

#include <optional>
#include <string>
#include <vector>

#include "rotor/measures.hpp"

namespace rotor {

struct FixedPoint {
  TorusPoint p;
  double residual = 0.0;
  std::optional<int> index;
};

/// Refined samples along a connected curve (or band) of fixed points.
struct FixedChain {
  std::vector<FixedPoint> nodes;
  std::size_t grid_cells = 0;  // near-zero grid nodes in the component
};

struct FixedPointReport {
  std::vector<FixedPoint> points;  // isolated fixed points
  std::vector<FixedChain> chains;  // non-isolated components
  bool all_fixed = false;
  int grid_n = 0;
  double tol = 0.0;
  int newton_steps = 50;

  bool empty() const { return !all_fixed && points.empty() && chains.empty(); }
  /// Every reported point, chains included.
  std::vector<FixedPoint> all_points() const;
};

/// Fixed points of the torus map; the word must be isotopic to the identity.
FixedPointReport find_fixed_points(const MapGroup& g, const Word& w, int grid_n, double tol);

/// Zeros of lw - Id, i.e. fixed points of the given lift, projected to the torus.
FixedPointReport find_lift_fixed_points(const MapGroup& g, const LiftedWord& lw, int grid_n, double tol);

/// Common fixed points of several torus maps (any linear parts), from the stacked
/// field of wrapped displacements.
FixedPointReport common_fixed_points(const MapGroup& g, const std::vector<Word>& ws, int grid_n, double tol);

/// Winding number of the wrapped displacement along the circle of given radius.
/// Throws NonIsolated or AmbiguousWinding.
int fixed_point_index(const MapGroup& g, const Word& w, const TorusPoint& p, double radius, int samples);

/// Attaches indices to the isolated points of a report where the winding is unambiguous.
void attach_indices(const MapGroup& g, const Word& w, FixedPointReport& report, double radius, int samples);

struct FranksOptions {
  double rho_tol = 1e-3;      // |rho - v| below this counts as zero mod Z^2
  double proxy_tol = 1e-3;    // max spread of per-atom Birkhoff means
  std::int64_t proxy_n = 1000;
  int proxy_atoms = 16;
  int grid_n = 64;
  double fixed_tol = 1e-10;
};

struct FranksCertificate {
  double defect = 0.0;
  Vec2 rho;
  IntVec2 nearest{};
  double rho_distance = 0.0;
  bool rho_zero = false;
  double proxy_spread = 0.0;
  bool proxy_pass = false;
  FixedPointReport fixed;
  std::optional<double> support_distance;  // reported only, no conclusion drawn
  std::string verdict;  // "consistent", "hypothesis_not_met" or "counterexample"
  std::string note;
};

/// Throws DefectExceeded when mu is not invariant within tol.
FranksCertificate franks_certificate(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu, double tol,
                                     const FranksOptions& opt = {});

}  // namespace rotor
