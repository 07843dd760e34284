#pragma once

// Built-in maps used by the examples and the verification suite.

#include <string>
#include <vector>

#include "rotor/covers.hpp"

namespace rotor::catalog {

inline constexpr double kSkewEpsilon = 0.1;
inline constexpr double kProductS = 0.1;
inline constexpr double kTwistBeta = 0.5;

/// h(x, y) = (x + c sin 4pi x, y + d sin 2pi x).
Generator example_h(double c = 0.05, double d = 0.1);
/// phi(x, y) = (-x, -y).
Generator minus_identity(const std::string& name = "phi");
/// Linear map with no displacement.
Generator linear(const std::string& name, MCGClass m);
/// (x + alpha, y + beta).
Generator translation(const std::string& name, double alpha, double beta);
/// (x + alpha, y + beta + eps sin 2pi x).
Generator skew(const std::string& name, double alpha, double beta, double eps);
/// (x + eps sin 2pi y, y).
Generator skew_x(const std::string& name, double eps);
/// (x + alpha, y + eps sin 4pi x); fails to commute with sigma when eps != 0.
Generator skew_sin4(const std::string& name, double alpha, double eps);
/// (x + s sin 2pi x, y + s sin 2pi y).
Generator product(const std::string& name, double s);
/// The annulus twist (x + beta y (1 - y), y).
AnnulusMapSpec annulus_twist(double beta = kTwistBeta);

inline MCGClass dehn() { return MCGClass::from(1, 0, 1, 1); }
inline MCGClass anosov() { return MCGClass::from(2, 1, 1, 1); }

struct Entry {
  std::string name;
  std::string description;
};

/// Every built-in generator, registered in a fixed order.
MapGroup full_group();
const std::vector<Entry>& entries();

}  // namespace rotor::catalog
