#include "rotor/catalog.hpp"

#include <cmath>
#include <numbers>

namespace rotor::catalog {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Constant term: sin(pi/2) is exactly 1.
DisplacementTerm constant(double v) { return DisplacementTerm::trig(v, 0, 0, kHalfPi); }

// (x + alpha, y + beta + eps sin 2pi j x) has the inverse
// (x - alpha, y - beta - eps sin(2pi j x - 2pi j alpha)).
Generator shear_y(const std::string& name, double alpha, double beta, double eps, std::int64_t j) {
  std::vector<DisplacementTerm> xs, ys{DisplacementTerm::trig(eps, j, 0)};
  std::vector<DisplacementTerm> ixs, iys{DisplacementTerm::trig(-eps, j, 0, -2.0 * std::numbers::pi * j * alpha)};
  if (alpha != 0.0) {
    xs.push_back(constant(alpha));
    ixs.push_back(constant(-alpha));
  }
  if (beta != 0.0) {
    ys.push_back(constant(beta));
    iys.push_back(constant(-beta));
  }
  return Generator(name, MCGClass::identity(), xs, ys)
      .with_closed_inverse(Generator(name + "^-1", MCGClass::identity(), ixs, iys));
}

}  // namespace

Generator example_h(double c, double d) {
  return Generator("h", MCGClass::identity(), {DisplacementTerm::trig(c, 2, 0)}, {DisplacementTerm::trig(d, 1, 0)});
}

Generator minus_identity(const std::string& name) { return Generator(name, MCGClass::from(-1, 0, 0, -1), {}, {}); }

Generator linear(const std::string& name, MCGClass m) { return Generator(name, m, {}, {}); }

Generator translation(const std::string& name, double alpha, double beta) {
  std::vector<DisplacementTerm> xs, ys;
  if (alpha != 0.0) xs.push_back(constant(alpha));
  if (beta != 0.0) ys.push_back(constant(beta));
  return Generator(name, MCGClass::identity(), xs, ys);
}

Generator skew(const std::string& name, double alpha, double beta, double eps) {
  return shear_y(name, alpha, beta, eps, 1);
}

Generator skew_x(const std::string& name, double eps) {
  return Generator(name, MCGClass::identity(), {DisplacementTerm::trig(eps, 0, 1)}, {});
}

Generator skew_sin4(const std::string& name, double alpha, double eps) {
  return shear_y(name, alpha, 0.0, eps, 2);
}

Generator product(const std::string& name, double s) {
  return Generator(name, MCGClass::identity(), {DisplacementTerm::trig(s, 1, 0)}, {DisplacementTerm::trig(s, 0, 1)});
}

AnnulusMapSpec annulus_twist(double beta) {
  AnnulusMapSpec f;
  f.name = "twist";
  f.a.push_back({1.0, 0, kHalfPi, {0.0, beta, -beta}});
  return f;
}

MapGroup full_group() {
  MapGroup g;
  g.add(example_h());
  g.add(minus_identity("phi"));
  g.add(linear("dehn", dehn()));
  g.add(linear("anosov", anosov()));
  g.add(translation("rot_irr", std::numbers::sqrt2 - 1.0, std::numbers::sqrt3 - 1.0));
  g.add(translation("rot_half", 0.5, 0.0));
  g.add(skew("skew", 0.0, 0.0, kSkewEpsilon));
  g.add(skew("skew_irr", std::numbers::sqrt2 - 1.0, std::numbers::sqrt3 - 1.0, kSkewEpsilon));
  g.add(skew_x("skew_x", kSkewEpsilon));
  g.add(product("product", kProductS));
  g.add(double_annulus(annulus_twist()));
  return g;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"h", "(x + 0.05 sin 4pi x, y + 0.1 sin 2pi x); fixes the circles x = 0 and x = 1/2"},
      {"phi", "(-x, -y), class -Id"},
      {"dehn", "(x, y + x), class (1,0;1,1)"},
      {"anosov", "(2x + y, x + y), class (2,1;1,1)"},
      {"rot_irr", "translation by (sqrt2 - 1, sqrt3 - 1)"},
      {"rot_half", "translation by (1/2, 0)"},
      {"skew", "(x, y + 0.1 sin 2pi x)"},
      {"skew_irr", "(x + sqrt2 - 1, y + sqrt3 - 1 + 0.1 sin 2pi x)"},
      {"skew_x", "(x + 0.1 sin 2pi y, y)"},
      {"product", "(x + 0.1 sin 2pi x, y + 0.1 sin 2pi y); four isolated fixed points"},
      {"twist", "double of the annulus twist (x + 0.5 y(1 - y), y)"},
  };
  return e;
}

}  // namespace rotor::catalog
