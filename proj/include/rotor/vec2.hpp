#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>

namespace rotor {

/// A real 2-vector: plane points, displacements and rotation vectors.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm_inf() const {
    const double ax = x < 0 ? -x : x;
    const double ay = y < 0 ? -y : y;
    return ax > ay ? ax : ay;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << '(' << v.x << ", " << v.y << ')';
}

/// Points of the universal cover R^2.
using PlanePoint = Vec2;

/// Integer 2-vector: deck translations T_v.
struct IntVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr IntVec2 operator+(IntVec2 a, IntVec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr IntVec2 operator-(IntVec2 a, IntVec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr IntVec2 operator-(IntVec2 a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(const IntVec2&, const IntVec2&) = default;

  constexpr Vec2 to_real() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

/// Neumaier compensated accumulator for 2-vectors.
class CompensatedSum2 {
 public:
  void add(const Vec2& v) {
    add_one(sum_.x, comp_.x, v.x);
    add_one(sum_.y, comp_.y, v.y);
  }
  Vec2 value() const { return sum_ + comp_; }

 private:
  static void add_one(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  Vec2 sum_{};
  Vec2 comp_{};
};

}  // namespace rotor
