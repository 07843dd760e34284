#pragma once

// Torus maps given by a linear class plus a periodic displacement, words in
// such generators, and their lifts to the plane.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rotor/mcg.hpp"
#include "rotor/vec2.hpp"

namespace rotor {

/// Canonical representative in [0,1)^2.
struct TorusPoint {
  double x = 0.0;
  double y = 0.0;

  static TorusPoint from(const Vec2& p);
  static double reduce(double t);
  Vec2 lift() const { return {x, y}; }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Shortest signed difference a - b on the circle, in [-1/2, 1/2).
double circle_diff(double a, double b);

/// Difference of two torus points as the shortest plane vector.
Vec2 torus_diff(const TorusPoint& a, const TorusPoint& b);

/// One displacement summand
///   amplitude * sin(2pi(jx*x + ky*y) + phase) * poly(u) * sign(y)
/// where u = 2*min(frac y, 1 - frac y) and sign(y) is -1 on [1/2, 1) when
/// mirror_odd is set. With the default poly {1} and mirror_odd unset this is
/// an ordinary trigonometric term.
struct DisplacementTerm {
  double amplitude = 0.0;
  std::int64_t jx = 0;
  std::int64_t ky = 0;
  double phase = 0.0;
  std::vector<double> tent_poly{1.0};
  bool mirror_odd = false;

  static DisplacementTerm trig(double amplitude, std::int64_t jx, std::int64_t ky, double phase = 0.0) {
    return {amplitude, jx, ky, phase, {1.0}, false};
  }

  bool is_trig() const { return !mirror_odd && tent_poly.size() == 1 && tent_poly[0] == 1.0; }
  double value(const Vec2& p) const;
  Vec2 gradient(const Vec2& p) const;
  /// Upper bound of |d/dx| + |d/dy| over the plane.
  double derivative_bound() const;
};

/// g(p) = L p + (P(p), Q(p)) on the plane, descending to the torus.
class Generator {
 public:
  enum class InverseMode { newton, closed };

  Generator(std::string name, MCGClass linear, std::vector<DisplacementTerm> x_terms,
            std::vector<DisplacementTerm> y_terms);

  /// Attach an explicit inverse; checked by a round trip on a grid.
  Generator with_closed_inverse(const Generator& inverse) const;

  const std::string& name() const { return name_; }
  const MCGClass& linear() const { return linear_; }
  const std::vector<DisplacementTerm>& x_terms() const { return x_terms_; }
  const std::vector<DisplacementTerm>& y_terms() const { return y_terms_; }
  InverseMode inverse_mode() const { return inverse_ ? InverseMode::closed : InverseMode::newton; }

  Vec2 displacement(const Vec2& p) const;
  /// Jacobian of the displacement, row major (dP/dx, dP/dy, dQ/dx, dQ/dy).
  std::array<double, 4> displacement_jacobian(const Vec2& p) const;
  Vec2 apply(const Vec2& p) const { return linear_.apply(p) + displacement(p); }
  /// Throws NewtonDivergence when the iteration does not reach the residual target.
  Vec2 apply_inverse(const Vec2& q) const;

  /// Lipschitz bound of L^-1 o displacement in the max norm; < 1 certifies invertibility.
  double contraction_bound() const;
  bool certified() const { return inverse_ != nullptr || contraction_bound() < 1.0; }

 private:
  Vec2 newton_inverse(const Vec2& q) const;

  std::string name_;
  MCGClass linear_;
  MCGClass linear_inv_;
  std::vector<DisplacementTerm> x_terms_;
  std::vector<DisplacementTerm> y_terms_;
  std::shared_ptr<const Generator> inverse_;
};

struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word; letters are applied right to left.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word letter(int gen, int sign = 1) { return Word({Letter{gen, sign}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

Word compose(const Word& a, const Word& b);
Word inverse(const Word& w);
Word commutator(const Word& h, const Word& g);  // h g h^-1 g^-1
Word power(const Word& w, std::int64_t k);

/// T_v composed with the word's lift.
struct LiftedWord {
  Word word;
  IntVec2 translation{};

  LiftedWord() = default;
  LiftedWord(Word w, IntVec2 v = {}) : word(std::move(w)), translation(v) {}
  LiftedWord translated(IntVec2 v) const { return {word, translation + v}; }
};

/// Registry of generators that words refer to by index.
class MapGroup {
 public:
  /// Throws InvalidArgument if the generator is neither certified nor given a closed inverse.
  int add(Generator g);
  const Generator& generator(int i) const;
  std::optional<int> find(const std::string& name) const;
  std::size_t size() const { return gens_.size(); }

  MCGClass linear_part(const Word& w) const;

  Vec2 apply_lift(const LiftedWord& lw, const Vec2& p) const;
  TorusPoint apply_torus(const Word& w, const TorusPoint& p) const;

  /// lw(p) - p; requires identity linear part.
  Vec2 displacement_field(const LiftedWord& lw, const TorusPoint& p) const;
  void require_isotopic(const Word& w) const;

  LiftedWord compose(const LiftedWord& a, const LiftedWord& b) const;
  LiftedWord inverse(const LiftedWord& lw) const;
  LiftedWord commutator(const LiftedWord& h, const LiftedWord& g) const;
  LiftedWord power(const LiftedWord& lw, std::int64_t k) const;

 private:
  Vec2 apply_letter(const Letter& l, const Vec2& p) const;
  std::vector<Generator> gens_;
};

}  // namespace rotor
