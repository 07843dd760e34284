#pragma once

// Building a measure invariant under a nilpotent group by successive Cesaro
// averages, and checking how rotation vectors move along the way.

#include <string>
#include <vector>

#include "rotor/measures.hpp"

namespace rotor {

struct GroupSpec {
  std::vector<Word> g0;             // generators isotopic to the identity
  std::vector<Word> extension;      // g_1 ... g_n, averaged in this order
  std::vector<MCGClass> declared;   // optional declared classes of the extension generators
};

struct TrackedLift {
  std::string name;
  LiftedWord lift;
};

struct ConstructionOptions {
  int averaging_length = 256;
  int max_doublings = 3;
  double tol = 1e-9;
  double merge_quantum = 1e-10;
  bool force = false;  // run even when the spectral condition fails
};

struct ConstructionTrace {
  std::vector<EmpiricalMeasure> measures;     // mu_0 ... mu_n
  std::vector<double> stage_defects;          // per stage, against all generators seen so far
  std::vector<int> stage_lengths;             // averaging length used for stage j (0 for mu_0)
  std::vector<std::vector<Vec2>> rotations;   // [stage][tracked lift]
  std::vector<double> final_defects;          // final measure vs g0 then extension generators
  double final_defect = 0.0;
  bool condition_satisfied = true;
  std::string condition_note;
  bool forced = false;
};

/// Throws ConditionStarStarViolated (unless forced), NotNilpotent, DefectExceeded.
ConstructionTrace construct_invariant(const MapGroup& g, const GroupSpec& spec, const std::vector<TrackedLift>& tracked,
                                      const EmpiricalMeasure& mu0, const ConstructionOptions& opt = {});

struct RotevResult {
  Vec2 lhs;        // rotation of h under (g^p)_* mu
  Vec2 rhs;        // closed-form prediction from mu alone
  Vec2 residual;   // lhs - rhs
};

/// Compares both sides of the rotation pushforward identity for p != 0.
RotevResult rotev_residual(const MapGroup& g, const LiftedWord& gl, const LiftedWord& hl, const EmpiricalMeasure& mu,
                           std::int64_t p);

struct BoundedOrbit {
  bool bounded = false;
  double max_norm = 0.0;
};

/// Affine orbit rho_{p+1} = A (rho_p + w), rho_{p-1} = A^-1 rho_p - w over |p| <= P.
BoundedOrbit bounded_orbit_check(const MCGClass& a, const Vec2& rho0, const Vec2& w, int P);

}  // namespace rotor
