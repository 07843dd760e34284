#include "rotor/mcg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/rational.hpp>

#include "rotor/errors.hpp"

namespace rotor {

namespace {

using i64 = std::int64_t;
using Q = boost::rational<i64>;

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow("matrix product entry");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow("matrix product entry");
  return r;
}

MCGClass commutator(const MCGClass& h, const MCGClass& g) {
  return h * g * h.inverse() * g.inverse();
}

}  // namespace

// ---------------------------------------------------------------------------
// MCGClass

MCGClass MCGClass::from(i64 a, i64 b, i64 c, i64 d) {
  const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1 && det != -1) {
    std::ostringstream os;
    os << "determinant of (" << a << "," << b << ";" << c << "," << d << ") is not +-1";
    throw NotUnimodular(os.str());
  }
  return MCGClass(a, b, c, d);
}

i64 MCGClass::max_abs_entry() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

MCGClass MCGClass::operator*(const MCGClass& o) const {
  return MCGClass(checked_add(checked_mul(a_, o.a_), checked_mul(b_, o.c_)),
                  checked_add(checked_mul(a_, o.b_), checked_mul(b_, o.d_)),
                  checked_add(checked_mul(c_, o.a_), checked_mul(d_, o.c_)),
                  checked_add(checked_mul(c_, o.b_), checked_mul(d_, o.d_)));
}

MCGClass MCGClass::inverse() const {
  // det = +-1, so the adjugate divided by det is integral.
  const i64 dt = det();
  return MCGClass(d_ * dt, -b_ * dt, -c_ * dt, a_ * dt);
}

MCGClass MCGClass::pow(i64 k) const {
  MCGClass base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  MCGClass result = identity();
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

IntVec2 MCGClass::apply(const IntVec2& v) const {
  return {checked_add(checked_mul(a_, v.x), checked_mul(b_, v.y)),
          checked_add(checked_mul(c_, v.x), checked_mul(d_, v.y))};
}

std::string MCGClass::str() const {
  std::ostringstream os;
  os << '(' << a_ << ',' << b_ << ';' << c_ << ',' << d_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Spectral data

std::string to_string(SpectralTag tag) {
  switch (tag) {
    case SpectralTag::identity: return "identity";
    case SpectralTag::minus_identity: return "minus_identity";
    case SpectralTag::complex_order4: return "complex_order4";
    case SpectralTag::complex_order6: return "complex_order6";
    case SpectralTag::complex_order3: return "complex_order3";
    case SpectralTag::eigen_minus1_parabolic: return "eigen_minus1_parabolic";
    case SpectralTag::dehn_twist: return "dehn_twist";
    case SpectralTag::reflection_det_minus1_tr0: return "reflection_det_minus1_tr0";
    case SpectralTag::hyperbolic: return "hyperbolic";
    case SpectralTag::other_real_split: return "other_real_split";
  }
  return "unknown";
}

SpectralClass spectral_class(const MCGClass& m) {
  const i64 tr = m.trace();
  const i64 det = m.det();
  // Roots of l^2 - tr l + det.
  const double t = static_cast<double>(tr);
  const double disc = t * t - 4.0 * static_cast<double>(det);
  std::array<std::complex<double>, 2> ev;
  if (disc >= 0) {
    const double s = std::sqrt(disc);
    ev = {std::complex<double>((t + s) / 2.0, 0.0), std::complex<double>((t - s) / 2.0, 0.0)};
  } else {
    const double s = std::sqrt(-disc);
    ev = {std::complex<double>(t / 2.0, s / 2.0), std::complex<double>(t / 2.0, -s / 2.0)};
  }

  SpectralTag tag;
  if (det == 1) {
    switch (tr) {
      case 2: tag = m.is_identity() ? SpectralTag::identity : SpectralTag::dehn_twist; break;
      case -2:
        tag = m.is_minus_identity() ? SpectralTag::minus_identity
                                    : SpectralTag::eigen_minus1_parabolic;
        break;
      case 0: tag = SpectralTag::complex_order4; break;
      case 1: tag = SpectralTag::complex_order6; break;
      case -1: tag = SpectralTag::complex_order3; break;
      default: tag = SpectralTag::hyperbolic; break;
    }
  } else {
    tag = tr == 0 ? SpectralTag::reflection_det_minus1_tr0 : SpectralTag::other_real_split;
  }
  return {tag, ev};
}

bool has_nontrivial_unity_root(const MCGClass& m) {
  const i64 tr = m.trace();
  if (m.det() == 1) return tr >= -2 && tr <= 1;
  return tr == 0;
}

bool is_anosov(const MCGClass& m) {
  const i64 tr = m.trace();
  if (m.det() == 1) return tr > 2 || tr < -2;
  return tr != 0;
}

bool is_dehn_twist(const MCGClass& m) {
  return m.det() == 1 && m.trace() == 2 && !m.is_identity();
}

std::optional<int> torsion_order(const MCGClass& m) {
  // Roots of unity force |tr| <= 2 (det 1) or tr = 0 (det -1).
  if (is_anosov(m)) return std::nullopt;
  // Finite orders in GL(2,Z) divide 4 or 6, so powering to 12 is exhaustive.
  MCGClass p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p.is_identity()) return k;
    p = p * m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closure

ClosureResult closure(const std::vector<MCGClass>& gens, i64 entry_bound, std::size_t count_bound) {
  if (entry_bound < 1 || count_bound < 1) throw InvalidArgument("closure bounds must be >= 1");
  // A finite subgroup of GL(2,Z) has at most 12 elements.
  constexpr std::size_t kMaxFiniteOrder = 12;

  std::vector<MCGClass> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  std::set<MCGClass> seen{MCGClass::identity()};
  std::deque<MCGClass> queue{MCGClass::identity()};
  ClosureResult result;
  while (!queue.empty()) {
    const MCGClass x = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      MCGClass y = MCGClass::identity();
      try {
        y = x * s;
      } catch (const IntegerOverflow&) {
        result.infinite = true;
        return result;
      }
      if (seen.count(y)) continue;
      if (y.max_abs_entry() > entry_bound || seen.size() + 1 > count_bound ||
          seen.size() + 1 > kMaxFiniteOrder) {
        result.infinite = true;
        return result;
      }
      seen.insert(y);
      queue.push_back(y);
    }
  }
  result.elements.assign(seen.begin(), seen.end());
  return result;
}

const std::vector<MCGClass>& dihedral_h_list() {
  static const std::vector<MCGClass> h = {
      MCGClass::from(1, 0, 0, 1),   MCGClass::from(-1, 0, 0, -1), MCGClass::from(1, 0, 0, -1),
      MCGClass::from(-1, 0, 0, 1),  MCGClass::from(0, -1, 1, 0),  MCGClass::from(0, 1, -1, 0),
      MCGClass::from(0, 1, 1, 0),   MCGClass::from(0, -1, -1, 0),
  };
  return h;
}

// ---------------------------------------------------------------------------
// Classification of nilpotent subgroups

std::string to_string(SubgroupTag tag) {
  switch (tag) {
    case SubgroupTag::trivial: return "trivial";
    case SubgroupTag::cyclic: return "cyclic";
    case SubgroupTag::pair: return "pair";
    case SubgroupTag::dihedral_H_conjugate: return "dihedral_H_conjugate";
    case SubgroupTag::not_nilpotent: return "not_nilpotent";
    case SubgroupTag::undecided: return "undecided";
  }
  return "unknown";
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < 4; ++i) {
    os << num[i];
    if (den[i] != 1) os << '/' << den[i];
    os << (i == 1 ? ";" : (i == 3 ? ")" : ","));
  }
  return os.str();
}

namespace {

using QMat = std::array<Q, 4>;

QMat to_q(const MCGClass& m) { return {Q(m.a()), Q(m.b()), Q(m.c()), Q(m.d())}; }

QMat qmul(const QMat& x, const QMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

std::optional<QMat> qinverse(const QMat& x) {
  const Q det = x[0] * x[3] - x[1] * x[2];
  if (det == Q(0)) return std::nullopt;
  return QMat{x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
}

// Nullspace of an m x 4 rational system, by reduced row echelon form.
std::vector<std::array<Q, 4>> nullspace(std::vector<std::array<Q, 4>> rows) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int col = 0; col < 4 && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == Q(0)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Q p = rows[r][col];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == Q(0)) continue;
      const Q f = rows[i][col];
      for (int j = 0; j < 4; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<std::array<Q, 4>> basis;
  for (int free = 0; free < 4; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::array<Q, 4> v{Q(0), Q(0), Q(0), Q(0)};
    v[free] = Q(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][free];
    basis.push_back(v);
  }
  return basis;
}

// Equations for g X = X h, X = (x0 x1; x2 x3).
void append_intertwiner_rows(const MCGClass& g, const MCGClass& h,
                             std::vector<std::array<Q, 4>>& rows) {
  const QMat G = to_q(g);
  const QMat H = to_q(h);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::array<Q, 4> row{Q(0), Q(0), Q(0), Q(0)};
      // (G X)_{ij} = sum_k G_{ik} X_{kj}
      for (int k = 0; k < 2; ++k) row[k * 2 + j] += G[i * 2 + k];
      // (X H)_{ij} = sum_k X_{ik} H_{kj}
      for (int k = 0; k < 2; ++k) row[i * 2 + k] -= H[k * 2 + j];
      rows.push_back(row);
    }
  }
}

RationalMatrix to_rational_matrix(const QMat& x) {
  // Scale to a primitive integer matrix.
  i64 l = 1;
  for (const auto& q : x) l = std::lcm(l, q.denominator());
  std::array<i64, 4> ints{};
  i64 g = 0;
  for (int i = 0; i < 4; ++i) {
    ints[i] = (x[i] * Q(l)).numerator();
    g = std::gcd(g, ints[i]);
  }
  RationalMatrix out;
  for (int i = 0; i < 4; ++i) out.num[i] = g == 0 ? 0 : ints[i] / g;
  return out;
}

std::optional<RationalMatrix> find_h_conjugator(const std::vector<MCGClass>& group) {
  const auto& h = dihedral_h_list();
  const std::set<MCGClass> hset(h.begin(), h.end());
  // Two elements that generate the whole group.
  std::optional<std::pair<MCGClass, MCGClass>> gens;
  for (std::size_t i = 0; i < group.size() && !gens; ++i) {
    for (std::size_t j = i + 1; j < group.size() && !gens; ++j) {
      const auto c = closure({group[i], group[j]});
      if (!c.infinite && c.elements.size() == group.size()) gens = {group[i], group[j]};
    }
  }
  if (!gens) return std::nullopt;

  for (const auto& ha : h) {
    if (ha.trace() != gens->first.trace() || ha.det() != gens->first.det()) continue;
    for (const auto& hb : h) {
      if (hb.trace() != gens->second.trace() || hb.det() != gens->second.det()) continue;
      std::vector<std::array<Q, 4>> rows;
      append_intertwiner_rows(gens->first, ha, rows);
      append_intertwiner_rows(gens->second, hb, rows);
      const auto basis = nullspace(rows);
      // Try basis vectors and small combinations for an invertible intertwiner.
      std::vector<QMat> candidates;
      for (const auto& b : basis) candidates.push_back(b);
      if (basis.size() >= 2) {
        for (int s = -2; s <= 2; ++s) {
          QMat c;
          for (int k = 0; k < 4; ++k) c[k] = basis[0][k] + Q(s) * basis[1][k];
          candidates.push_back(c);
        }
      }
      for (const auto& x : candidates) {
        const auto xinv = qinverse(x);
        if (!xinv) continue;
        std::set<MCGClass> image;
        bool integral = true;
        for (const auto& m : group) {
          const QMat y = qmul(qmul(*xinv, to_q(m)), x);
          for (const auto& q : y) integral = integral && q.denominator() == 1;
          if (!integral) break;
          const i64 a = y[0].numerator(), b = y[1].numerator(), c = y[2].numerator(),
                    d = y[3].numerator();
          const i64 det = a * d - b * c;
          if (det != 1 && det != -1) {
            integral = false;
            break;
          }
          image.insert(MCGClass::from(a, b, c, d));
        }
        if (integral && image == hset) return to_rational_matrix(x);
      }
    }
  }
  return std::nullopt;
}

// Lower central series on a finite group; returns a non-nilpotency witness chain if any.
std::optional<std::vector<MCGClass>> finite_non_nilpotent_witness(const std::vector<MCGClass>& group) {
  std::vector<MCGClass> term = group;
  for (int depth = 0; depth < 8; ++depth) {
    std::vector<MCGClass> comms;
    for (const auto& x : group) {
      for (const auto& y : term) comms.push_back(commutator(x, y));
    }
    const auto next = closure(comms);
    if (next.elements.size() == 1) return std::nullopt;
    if (next.elements == term) {
      // Stable non-trivial term: build a chain of non-identity commutators.
      std::vector<MCGClass> chain;
      std::optional<MCGClass> c;
      for (const auto& t : term) {
        for (const auto& x : group) {
          if (!commutator(x, t).is_identity()) {
            c = t;
            break;
          }
        }
        if (c) break;
      }
      if (!c) return std::vector<MCGClass>{};
      chain.push_back(*c);
      for (int k = 0; k < 4; ++k) {
        bool extended = false;
        for (const auto& x : group) {
          const MCGClass n = commutator(x, chain.back());
          if (!n.is_identity()) {
            chain.push_back(n);
            extended = true;
            break;
          }
        }
        if (!extended) break;
      }
      return chain;
    }
    term = next.elements;
  }
  return std::nullopt;
}

// Real-valued "logarithm" along the infinite cyclic direction shared by a
// commuting family containing `reference` (infinite order).
class CommonLog {
 public:
  explicit CommonLog(const MCGClass& reference) {
    const i64 tr = reference.trace();
    if (reference.det() == 1 && (tr == 2 || tr == -2)) {
      unipotent_ = true;
      const i64 s = tr > 0 ? 1 : -1;
      nil_ = {s * reference.a() - 1, s * reference.b(), s * reference.c(), s * reference.d() - 1};
    } else {
      const auto sc = spectral_class(reference);
      const double lambda = std::abs(sc.eigenvalues[0].real()) >= std::abs(sc.eigenvalues[1].real())
                                ? sc.eigenvalues[0].real()
                                : sc.eigenvalues[1].real();
      // Eigenvector of (a - l, b; c, d - l).
      const double a = static_cast<double>(reference.a()) - lambda;
      const double b = static_cast<double>(reference.b());
      const double c = static_cast<double>(reference.c());
      const double d = static_cast<double>(reference.d()) - lambda;
      if (std::abs(a) + std::abs(b) >= std::abs(c) + std::abs(d)) {
        v_ = {-b, a};
      } else {
        v_ = {-d, c};
      }
      v_ = v_ / v_.norm();
    }
  }

  double operator()(const MCGClass& m) const {
    if (unipotent_) {
      const i64 s = m.trace() >= 0 ? 1 : -1;
      const std::array<i64, 4> n = {s * m.a() - 1, s * m.b(), s * m.c(), s * m.d() - 1};
      for (int k = 0; k < 4; ++k) {
        if (nil_[k] != 0) return static_cast<double>(n[k]) / static_cast<double>(nil_[k]);
      }
      return 0.0;
    }
    const Vec2 w = m.apply(v_);
    const double lambda = w.x * v_.x + w.y * v_.y;
    return std::log(std::abs(lambda));
  }

 private:
  bool unipotent_ = false;
  std::array<i64, 4> nil_{};
  Vec2 v_{};
};

bool all_commute(const std::vector<MCGClass>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
    }
  }
  return true;
}

// Euclidean reduction of an infinite abelian virtually-cyclic group to <N> or <N, -Id>.
SubgroupForm reduce_abelian_infinite(const std::vector<MCGClass>& gens) {
  SubgroupForm form;
  form.finite = false;
  std::vector<MCGClass> infinite;
  bool minus_identity = false;
  for (const auto& g : gens) {
    if (torsion_order(g)) {
      if (g.is_minus_identity()) {
        minus_identity = true;
      } else if (!g.is_identity()) {
        form.tag = SubgroupTag::undecided;
        form.note = "torsion element " + g.str() + " commuting with an infinite-order class";
        return form;
      }
    } else {
      infinite.push_back(g);
    }
  }
  if (infinite.empty()) {
    form.tag = SubgroupTag::undecided;
    return form;
  }
  const CommonLog log(infinite.front());
  try {
    for (int iter = 0; infinite.size() > 1; ++iter) {
      if (iter > 500) {
        form.tag = SubgroupTag::undecided;
        form.note = "Euclidean reduction did not terminate";
        return form;
      }
      std::sort(infinite.begin(), infinite.end(), [&](const MCGClass& x, const MCGClass& y) {
        return std::abs(log(x)) < std::abs(log(y));
      });
      const MCGClass a = infinite[0];
      const MCGClass b = infinite[1];
      const auto q = static_cast<i64>(std::llround(log(b) / log(a)));
      const MCGClass r = b * a.pow(-q);
      infinite.erase(infinite.begin() + 1);
      if (torsion_order(r)) {
        if (r.is_minus_identity()) {
          minus_identity = true;
        } else if (!r.is_identity()) {
          form.tag = SubgroupTag::undecided;
          form.note = "unexpected torsion " + r.str();
          return form;
        }
      } else {
        infinite.push_back(r);
      }
    }
  } catch (const IntegerOverflow&) {
    form.tag = SubgroupTag::undecided;
    form.note = "integer overflow during reduction";
    return form;
  }

  MCGClass n = infinite.front();
  if (minus_identity && n.trace() < 0) n = -n;
  // Exact verification: every generator is +-N^k (sign only in the pair form).
  const double ln = log(n);
  for (const auto& g : gens) {
    if (g.is_identity() || (minus_identity && g.is_minus_identity())) continue;
    const auto k = static_cast<i64>(std::llround(log(g) / ln));
    const MCGClass p = n.pow(k);
    if (!(p == g) && !(minus_identity && -p == g)) {
      form.tag = SubgroupTag::undecided;
      form.note = "generator " + g.str() + " is not a power of " + n.str();
      return form;
    }
  }
  form.tag = minus_identity ? SubgroupTag::pair : SubgroupTag::cyclic;
  form.generator = n;
  return form;
}

}  // namespace

SubgroupForm classify_nilpotent(const std::vector<MCGClass>& input) {
  std::vector<MCGClass> gens;
  for (const auto& g : input) {
    if (!g.is_identity()) gens.push_back(g);
  }
  SubgroupForm form;
  if (gens.empty()) {
    form.tag = SubgroupTag::trivial;
    form.finite = true;
    form.order = 1;
    return form;
  }

  const auto cl = closure(gens);
  if (!cl.infinite) {
    const auto& group = cl.elements;
    form.finite = true;
    form.order = group.size();
    if (group.size() == 1) {
      form.tag = SubgroupTag::trivial;
      return form;
    }
    for (const auto& g : group) {
      const auto ord = torsion_order(g);
      if (ord && static_cast<std::size_t>(*ord) == group.size()) {
        form.tag = SubgroupTag::cyclic;
        form.generator = g;
        return form;
      }
    }
    if (auto chain = finite_non_nilpotent_witness(group)) {
      form.tag = SubgroupTag::not_nilpotent;
      form.commutator_chain = std::move(*chain);
      return form;
    }
    for (const auto& n : group) {
      if (n.is_identity() || n.is_minus_identity()) continue;
      std::set<MCGClass> span;
      const auto ord = torsion_order(n);
      for (int k = 0; k < *ord; ++k) {
        span.insert(n.pow(k));
        span.insert(-n.pow(k));
      }
      if (span == std::set<MCGClass>(group.begin(), group.end())) {
        form.tag = SubgroupTag::pair;
        form.generator = n;
        return form;
      }
    }
    if (group.size() == 8) {
      if (auto x = find_h_conjugator(group)) {
        form.tag = SubgroupTag::dihedral_H_conjugate;
        form.conjugator = *x;
        return form;
      }
    }
    form.tag = SubgroupTag::undecided;
    form.note = "finite group of order " + std::to_string(group.size()) + " not matched";
    return form;
  }

  if (all_commute(gens)) return reduce_abelian_infinite(gens);

  // Infinite and non-abelian. Nilpotent subgroups of GL(2,Z) have class <= 2,
  // so a non-trivial commutator of weight 3 certifies non-nilpotency.
  form.finite = false;
  try {
    for (std::size_t i = 0; i < gens.size() && form.commutator_chain.empty(); ++i) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const MCGClass c = commutator(gens[i], gens[j]);
        if (!c.is_identity()) {
          form.commutator_chain.push_back(c);
          break;
        }
      }
    }
    for (int depth = 0; depth < 3 && !form.commutator_chain.empty(); ++depth) {
      bool extended = false;
      for (const auto& g : gens) {
        const MCGClass c = commutator(g, form.commutator_chain.back());
        if (!c.is_identity()) {
          form.commutator_chain.push_back(c);
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
  } catch (const IntegerOverflow&) {
    // keep the chain collected so far
  }
  form.tag = form.commutator_chain.size() >= 2 ? SubgroupTag::not_nilpotent : SubgroupTag::undecided;
  return form;
}

// ---------------------------------------------------------------------------
// Condition (**) and the finite-index subgroup

std::string to_string(StarStarFailure f) {
  switch (f) {
    case StarStarFailure::none: return "none";
    case StarStarFailure::nontrivial_finite: return "nontrivial_finite";
    case StarStarFailure::minus_dehn: return "minus_dehn";
    case StarStarFailure::dehn_and_minus_identity: return "dehn_and_minus_identity";
  }
  return "unknown";
}

StarStarVerdict check_condition_star_star(const std::vector<MCGClass>& gens) {
  StarStarVerdict v;
  v.form = classify_nilpotent(gens);
  switch (v.form.tag) {
    case SubgroupTag::not_nilpotent:
      throw NotNilpotent("generated group is not nilpotent");
    case SubgroupTag::undecided:
      throw NotNilpotent("nilpotency could not be certified: " + v.form.note);
    case SubgroupTag::trivial:
      v.satisfied = true;
      return v;
    default:
      break;
  }
  if (v.form.finite) {
    v.failure = StarStarFailure::nontrivial_finite;
    return v;
  }
  const MCGClass n = *v.form.generator;
  if (v.form.tag == SubgroupTag::cyclic) {
    if (is_dehn_twist(n) || is_anosov(n)) {
      v.satisfied = true;
      v.witness = {n};
    } else if (is_dehn_twist(-n)) {
      v.failure = StarStarFailure::minus_dehn;
    } else {
      throw NotNilpotent("unexpected cyclic generator " + n.str());
    }
    return v;
  }
  // pair <N, -N>
  if (is_anosov(n)) {
    v.satisfied = true;
    v.witness = {n, -n};
  } else if (is_dehn_twist(n) || is_dehn_twist(-n)) {
    v.failure = StarStarFailure::dehn_and_minus_identity;
  } else {
    throw NotNilpotent("unexpected pair generator " + n.str());
  }
  return v;
}

FiniteIndexResult finite_index_subgroup(const std::vector<MCGClass>& gens) {
  const StarStarVerdict v = check_condition_star_star(gens);
  FiniteIndexResult r;
  if (v.satisfied) {
    if (v.form.generator) {
      r.h_generators.push_back(*v.form.generator);
      if (v.form.tag == SubgroupTag::pair) r.h_generators.push_back(-MCGClass::identity());
    }
    r.index = 1;
    r.quotient = "trivial";
    return r;
  }
  switch (v.failure) {
    case StarStarFailure::minus_dehn: {
      const MCGClass n = *v.form.generator;  // -D
      r.h_generators = {n * n};               // D^2
      r.index = 2;
      r.quotient = "C2";
      return r;
    }
    case StarStarFailure::dehn_and_minus_identity: {
      MCGClass n = *v.form.generator;
      if (!is_dehn_twist(n)) n = -n;
      r.h_generators = {n};
      r.index = 2;
      r.quotient = "C2";
      return r;
    }
    case StarStarFailure::nontrivial_finite: {
      r.index = static_cast<int>(v.form.order);
      if (v.form.tag == SubgroupTag::cyclic) {
        r.quotient = "C" + std::to_string(v.form.order);
        r.within_c6 = 6 % v.form.order == 0;
        r.within_d4 = 4 % v.form.order == 0;
      } else if (v.form.tag == SubgroupTag::pair) {
        r.quotient = "D2";
        r.within_c6 = false;
      } else {
        r.quotient = "D4";
        r.within_c6 = false;
      }
      return r;
    }
    case StarStarFailure::none:
      break;
  }
  throw NotNilpotent("unclassified failure of the spectral condition");
}

}  // namespace rotor
