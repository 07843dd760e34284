#pragma once

// Exact GL(2,Z) algebra for mapping classes of the torus.

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotor/vec2.hpp"

namespace rotor {

/// A 2x2 integer matrix with determinant +-1, acting on column vectors.
class MCGClass {
 public:
  /// Throws NotUnimodular unless |ad - bc| = 1.
  static MCGClass from(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static MCGClass identity() { return MCGClass(1, 0, 0, 1); }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }
  std::int64_t det() const { return a_ * d_ - b_ * c_; }
  std::int64_t trace() const { return a_ + d_; }
  std::int64_t max_abs_entry() const;

  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
  bool is_minus_identity() const { return a_ == -1 && b_ == 0 && c_ == 0 && d_ == -1; }

  /// Overflow-checked product; throws IntegerOverflow.
  MCGClass operator*(const MCGClass& o) const;
  MCGClass operator-() const { return MCGClass(-a_, -b_, -c_, -d_); }
  MCGClass inverse() const;
  MCGClass pow(std::int64_t k) const;

  Vec2 apply(const Vec2& v) const {
    return {static_cast<double>(a_) * v.x + static_cast<double>(b_) * v.y,
            static_cast<double>(c_) * v.x + static_cast<double>(d_) * v.y};
  }
  IntVec2 apply(const IntVec2& v) const;

  std::string str() const;
  friend auto operator<=>(const MCGClass&, const MCGClass&) = default;

 private:
  MCGClass(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
      : a_(a), b_(b), c_(c), d_(d) {}
  std::int64_t a_, b_, c_, d_;
};

enum class SpectralTag {
  identity,
  minus_identity,
  complex_order4,
  complex_order6,
  complex_order3,
  eigen_minus1_parabolic,
  dehn_twist,
  reflection_det_minus1_tr0,
  hyperbolic,
  other_real_split,
};

std::string to_string(SpectralTag tag);

struct SpectralClass {
  SpectralTag tag;
  std::array<std::complex<double>, 2> eigenvalues;
};

/// Exact classification from (trace, det, A = +-Id).
SpectralClass spectral_class(const MCGClass& a);

/// Does A have an eigenvalue that is a root of unity other than 1?
bool has_nontrivial_unity_root(const MCGClass& a);

/// No eigenvalue on the unit circle.
bool is_anosov(const MCGClass& a);

/// Non-identity unipotent class (trace 2, det 1).
bool is_dehn_twist(const MCGClass& a);

/// Smallest k >= 1 with A^k = Id, or nullopt for infinite order.
std::optional<int> torsion_order(const MCGClass& a);

struct ClosureResult {
  bool infinite = false;
  std::vector<MCGClass> elements;  // sorted; valid only when !infinite
};

/// Breadth-first closure under products and inverses.
ClosureResult closure(const std::vector<MCGClass>& gens, std::int64_t entry_bound = 1'000'000,
                      std::size_t count_bound = 10'000);

/// The eight-element dihedral group listed in the nilpotent classification.
const std::vector<MCGClass>& dihedral_h_list();

enum class SubgroupTag { trivial, cyclic, pair, dihedral_H_conjugate, not_nilpotent, undecided };

std::string to_string(SubgroupTag tag);

/// 2x2 rational matrix used as a GL(2,Q) conjugator witness.
struct RationalMatrix {
  std::array<std::int64_t, 4> num{};
  std::array<std::int64_t, 4> den{1, 1, 1, 1};
  std::string str() const;
};

struct SubgroupForm {
  SubgroupTag tag = SubgroupTag::undecided;
  bool finite = false;
  std::size_t order = 0;                 // group order when finite
  std::optional<MCGClass> generator;     // N for cyclic / pair forms
  std::optional<RationalMatrix> conjugator;  // X with X^-1 g X in H, dihedral form
  std::vector<MCGClass> commutator_chain;    // non-nilpotency witness
  std::string note;
};

SubgroupForm classify_nilpotent(const std::vector<MCGClass>& gens);

enum class StarStarFailure { none, nontrivial_finite, minus_dehn, dehn_and_minus_identity };

std::string to_string(StarStarFailure f);

struct StarStarVerdict {
  bool satisfied = false;
  std::vector<MCGClass> witness;  // S with <G0, S> = G, each passing the per-element test
  StarStarFailure failure = StarStarFailure::none;
  SubgroupForm form;
};

/// Throws NotNilpotent when the generated group is not (certifiably) nilpotent.
StarStarVerdict check_condition_star_star(const std::vector<MCGClass>& gens);

struct FiniteIndexResult {
  std::vector<MCGClass> h_generators;  // generators of [H]; empty = trivial class group
  int index = 1;
  std::string quotient;                // "trivial", "C2", "C3", "C4", "C6", "D2", "D4"
  bool within_c6 = true;
  bool within_d4 = true;
};

FiniteIndexResult finite_index_subgroup(const std::vector<MCGClass>& gens);

}  // namespace rotor
