#pragma once

// Finitely supported probability measures on the torus, rotation vectors and
// rotation-set estimates.

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rotor/torus_maps.hpp"

namespace rotor {

struct Atom {
  TorusPoint p;
  double w = 0.0;
};

class EmpiricalMeasure {
 public:
  static constexpr double kDefaultQuantum = 1e-12;
  static constexpr std::size_t kCoarsenThreshold = 1'000'000;
  static constexpr int kCoarsenCells = 4096;

  /// Atoms closer than `quantum` (on the canonical grid) are merged; weights
  /// are renormalized. Throws InvalidArgument on negative weights or zero mass.
  explicit EmpiricalMeasure(std::vector<Atom> atoms, double quantum = kDefaultQuantum);

  static EmpiricalMeasure dirac(const TorusPoint& p);
  /// Uniform weights on the points (i/n + ox, j/n + oy).
  static EmpiricalMeasure uniform_grid(int n, Vec2 offset = {});
  /// Uniform weights on (x0, j/n), j < n.
  static EmpiricalMeasure circle_x(double x0, int n);
  /// Uniform weights on (i/n, y0), i < n.
  static EmpiricalMeasure circle_y(double y0, int n);
  static EmpiricalMeasure uniform_on(const std::vector<TorusPoint>& points);
  /// (1 - t) a + t b.
  static EmpiricalMeasure mix(const EmpiricalMeasure& a, const EmpiricalMeasure& b, double t);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

  /// Merge on a coarser grid (used between averaging stages).
  EmpiricalMeasure merged(double quantum) const;
  /// Mass-conserving binning on an n x n grid of cell centres.
  EmpiricalMeasure coarsened(int cells) const;

 private:
  EmpiricalMeasure() = default;
  std::vector<Atom> atoms_;
};

EmpiricalMeasure pushforward(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu,
                             double quantum = EmpiricalMeasure::kDefaultQuantum);

/// Integral of lw - Id against mu.
Vec2 rotation_vector(const MapGroup& g, const EmpiricalMeasure& mu, const LiftedWord& lw);

/// Frequencies (j, k) of the 24 test functions sin/cos 2pi(jx + ky).
const std::array<std::pair<int, int>, 12>& test_frequencies();

/// max_f |int f o w dmu - int f dmu| over the trig test family.
double invariance_defect(const MapGroup& g, const Word& w, const EmpiricalMeasure& mu);

struct BirkhoffRecord {
  TorusPoint seed;
  std::int64_t n = 0;
  Vec2 mean;
  double tail_spread = 0.0;
};

/// How the per-step displacement is measured along a torus orbit.
///   isotopic:           lw - Id, which descends to the torus; requires identity linear part.
///   fundamental_domain: lw(p) - p at the representative p in [0,1)^2, for any linear part.
///                       For the Dehn twist (x, y + x) this gives (0, x).
enum class DisplacementConvention { isotopic, fundamental_domain };

BirkhoffRecord birkhoff_mean(const MapGroup& g, const LiftedWord& lw, const TorusPoint& seed, std::int64_t n,
                             DisplacementConvention conv = DisplacementConvention::isotopic);

struct RotationSetEstimate {
  std::vector<Vec2> samples;
  std::vector<Vec2> hull;
  std::int64_t n = 0;
};

RotationSetEstimate estimate_rotation_set(const MapGroup& g, const LiftedWord& lw,
                                          const std::vector<TorusPoint>& seeds, std::int64_t n,
                                          DisplacementConvention conv = DisplacementConvention::isotopic);

/// Seeds (i/n, j/n), row-major in i.
std::vector<TorusPoint> seed_grid(int n);

struct KrylovResult {
  EmpiricalMeasure measure;
  double defect = 0.0;
};

KrylovResult krylov_bogolyubov(const MapGroup& g, const Word& w, const TorusPoint& seed, std::int64_t n,
                               std::int64_t window);

struct IrrotationalResult {
  std::optional<LiftedWord> lift;  // empty when judged non-irrotational
  IntVec2 shift{};                 // lattice vector removed from the input lift
  RotationSetEstimate estimate;
  double hull_diameter = 0.0;
  Vec2 hull_centroid;
};

/// Resolution-dependent test: hull diameter < tol and centroid within tol of a lattice vector.
IrrotationalResult irrotational_lift(const MapGroup& g, const LiftedWord& lw, const std::vector<TorusPoint>& seeds,
                                     std::int64_t n, double tol);

/// max over pairs of |(f^n x - x) - (f^n y - y)| / n.
double distortion_ratio(const MapGroup& g, const LiftedWord& lw, std::int64_t n,
                        const std::vector<std::pair<Vec2, Vec2>>& pairs);

}  // namespace rotor
