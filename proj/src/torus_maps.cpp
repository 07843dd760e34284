#include "rotor/torus_maps.hpp"

#include <cmath>
#include <numbers>

#include "rotor/errors.hpp"

namespace rotor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSnap = 1e-15;

double tent(double y, double* slope) {
  const double f = y - std::floor(y);
  if (f < 0.5) {
    if (slope) *slope = 2.0;
    return 2.0 * f;
  }
  if (slope) *slope = -2.0;
  return 2.0 * (1.0 - f);
}

double poly_eval(const std::vector<double>& c, double u, double* derivative) {
  double v = 0.0;
  double d = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * u + v;
    v = v * u + c[i];
  }
  if (derivative) *derivative = d;
  return v;
}

}  // namespace

double TorusPoint::reduce(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  if (r < kSnap || 1.0 - r < kSnap) r = 0.0;
  return r;
}

TorusPoint TorusPoint::from(const Vec2& p) { return {reduce(p.x), reduce(p.y)}; }

double circle_diff(double a, double b) {
  double d = a - b;
  d -= std::floor(d + 0.5);
  return d;
}

Vec2 torus_diff(const TorusPoint& a, const TorusPoint& b) {
  return {circle_diff(a.x, b.x), circle_diff(a.y, b.y)};
}

// ---------------------------------------------------------------------------

double DisplacementTerm::value(const Vec2& p) const {
  double v = amplitude * std::sin(kTwoPi * (static_cast<double>(jx) * p.x + static_cast<double>(ky) * p.y) + phase);
  if (is_trig()) return v;
  const double u = tent(p.y, nullptr);
  v *= poly_eval(tent_poly, u, nullptr);
  if (mirror_odd && p.y - std::floor(p.y) >= 0.5) v = -v;
  return v;
}

Vec2 DisplacementTerm::gradient(const Vec2& p) const {
  const double theta = kTwoPi * (static_cast<double>(jx) * p.x + static_cast<double>(ky) * p.y) + phase;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Vec2 g{amplitude * kTwoPi * static_cast<double>(jx) * c,
         amplitude * kTwoPi * static_cast<double>(ky) * c};
  if (is_trig()) return g;
  double slope = 0.0;
  const double u = tent(p.y, &slope);
  double dpoly = 0.0;
  const double pu = poly_eval(tent_poly, u, &dpoly);
  g = g * pu;
  g.y += amplitude * s * dpoly * slope;
  if (mirror_odd && p.y - std::floor(p.y) >= 0.5) g = -g;
  return g;
}

double DisplacementTerm::derivative_bound() const {
  double poly_max = 0.0;
  double dpoly_max = 0.0;
  for (std::size_t i = 0; i < tent_poly.size(); ++i) {
    poly_max += std::abs(tent_poly[i]);
    dpoly_max += static_cast<double>(i) * std::abs(tent_poly[i]);
  }
  const double freq = static_cast<double>(std::abs(jx) + std::abs(ky));
  return std::abs(amplitude) * (kTwoPi * freq * poly_max + 2.0 * dpoly_max);
}

// ---------------------------------------------------------------------------

Generator::Generator(std::string name, MCGClass linear, std::vector<DisplacementTerm> x_terms,
                     std::vector<DisplacementTerm> y_terms)
    : name_(std::move(name)),
      linear_(linear),
      linear_inv_(linear.inverse()),
      x_terms_(std::move(x_terms)),
      y_terms_(std::move(y_terms)) {}

Generator Generator::with_closed_inverse(const Generator& inv) const {
  if (!(inv.linear() == linear_inv_)) {
    throw InvalidArgument("closed inverse of '" + name_ + "' has linear part " + inv.linear().str() +
                          ", expected " + linear_inv_.str());
  }
  constexpr int n = 32;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 p{(i + 0.37) / n, (j + 0.61) / n};
      worst = std::max(worst, (inv.apply(apply(p)) - p).norm_inf());
      worst = std::max(worst, (apply(inv.apply(p)) - p).norm_inf());
    }
  }
  if (!(worst < 1e-10)) {
    throw InvalidArgument("closed inverse of '" + name_ + "' fails the round trip (error " +
                          std::to_string(worst) + ")");
  }
  Generator out = *this;
  out.inverse_ = std::make_shared<const Generator>(inv);
  return out;
}

Vec2 Generator::displacement(const Vec2& p) const {
  Vec2 d;
  for (const auto& t : x_terms_) d.x += t.value(p);
  for (const auto& t : y_terms_) d.y += t.value(p);
  return d;
}

std::array<double, 4> Generator::displacement_jacobian(const Vec2& p) const {
  std::array<double, 4> j{};
  for (const auto& t : x_terms_) {
    const Vec2 g = t.gradient(p);
    j[0] += g.x;
    j[1] += g.y;
  }
  for (const auto& t : y_terms_) {
    const Vec2 g = t.gradient(p);
    j[2] += g.x;
    j[3] += g.y;
  }
  return j;
}

double Generator::contraction_bound() const {
  double px = 0.0;
  double py = 0.0;
  for (const auto& t : x_terms_) px += t.derivative_bound();
  for (const auto& t : y_terms_) py += t.derivative_bound();
  const double linv = std::max(std::abs(linear_inv_.a()) + std::abs(linear_inv_.b()),
                               std::abs(linear_inv_.c()) + std::abs(linear_inv_.d()));
  return static_cast<double>(linv) * std::max(px, py);
}

Vec2 Generator::apply_inverse(const Vec2& q) const {
  if (inverse_) return inverse_->apply(q);
  return newton_inverse(q);
}

Vec2 Generator::newton_inverse(const Vec2& q) const {
  const double target = 1e-12 * std::max(1.0, q.norm_inf());
  Vec2 z = linear_inv_.apply(q);
  if (x_terms_.empty() && y_terms_.empty()) return z;
  const double a = static_cast<double>(linear_.a()), b = static_cast<double>(linear_.b());
  const double c = static_cast<double>(linear_.c()), d = static_cast<double>(linear_.d());
  Vec2 f = apply(z) - q;
  for (int step = 0; step < 60; ++step) {
    const double res = f.norm_inf();
    if (res <= target) return z;
    const auto dj = displacement_jacobian(z);
    const double j00 = a + dj[0], j01 = b + dj[1], j10 = c + dj[2], j11 = d + dj[3];
    const double det = j00 * j11 - j01 * j10;
    Vec2 next;
    bool took = false;
    if (std::abs(det) > 1e-14) {
      next = z - Vec2{(j11 * f.x - j01 * f.y) / det, (-j10 * f.x + j00 * f.y) / det};
      const Vec2 fn = apply(next) - q;
      if (fn.norm_inf() < res) {
        z = next;
        f = fn;
        took = true;
      }
    }
    if (!took) {
      // Fixed-point step z = L^-1 (q - D(z)); contracts for certified generators.
      next = linear_inv_.apply(q - displacement(z));
      z = next;
      f = apply(z) - q;
    }
  }
  if (f.norm_inf() <= target) return z;
  throw NewtonDivergence("inverse of '" + name_ + "' did not converge (residual " +
                         std::to_string(f.norm_inf()) + ")");
}

// ---------------------------------------------------------------------------

Word::Word(std::vector<Letter> letters) {
  for (const auto& l : letters) {
    if (l.sign != 1 && l.sign != -1) throw InvalidArgument("letter exponent must be +1 or -1");
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().sign == -l.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word compose(const Word& a, const Word& b) {
  std::vector<Letter> l = a.letters();
  l.insert(l.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(l));
}

Word inverse(const Word& w) {
  std::vector<Letter> l;
  l.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) l.push_back({it->gen, -it->sign});
  return Word(std::move(l));
}

Word commutator(const Word& h, const Word& g) {
  return compose(compose(h, g), compose(inverse(h), inverse(g)));
}

Word power(const Word& w, std::int64_t k) {
  const Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (std::int64_t i = 0; i < std::abs(k); ++i) out = compose(out, base);
  return out;
}

// ---------------------------------------------------------------------------

int MapGroup::add(Generator g) {
  if (!g.certified()) {
    throw InvalidArgument("generator '" + g.name() + "' is not certified invertible (contraction bound " +
                          std::to_string(g.contraction_bound()) + ") and has no closed inverse");
  }
  if (find(g.name())) throw InvalidArgument("duplicate generator name '" + g.name() + "'");
  gens_.push_back(std::move(g));
  return static_cast<int>(gens_.size()) - 1;
}

const Generator& MapGroup::generator(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= gens_.size()) {
    throw InvalidArgument("generator index " + std::to_string(i) + " out of range");
  }
  return gens_[static_cast<std::size_t>(i)];
}

std::optional<int> MapGroup::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name() == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

MCGClass MapGroup::linear_part(const Word& w) const {
  MCGClass m = MCGClass::identity();
  for (const auto& l : w.letters()) {
    const MCGClass& a = generator(l.gen).linear();
    m = m * (l.sign > 0 ? a : a.inverse());
  }
  return m;
}

Vec2 MapGroup::apply_letter(const Letter& l, const Vec2& p) const {
  const Generator& g = generator(l.gen);
  return l.sign > 0 ? g.apply(p) : g.apply_inverse(p);
}

Vec2 MapGroup::apply_lift(const LiftedWord& lw, const Vec2& p) const {
  Vec2 q = p;
  const auto& ls = lw.word.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) q = apply_letter(*it, q);
  return q + lw.translation.to_real();
}

TorusPoint MapGroup::apply_torus(const Word& w, const TorusPoint& p) const {
  Vec2 q = p.lift();
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) q = TorusPoint::from(apply_letter(*it, q)).lift();
  return TorusPoint::from(q);
}

void MapGroup::require_isotopic(const Word& w) const {
  const MCGClass m = linear_part(w);
  if (!m.is_identity()) {
    throw NotIsotopicToIdentity("word has linear part " + m.str());
  }
}

Vec2 MapGroup::displacement_field(const LiftedWord& lw, const TorusPoint& p) const {
  require_isotopic(lw.word);
  const Vec2 q = p.lift();
  return apply_lift(lw, q) - q;
}

LiftedWord MapGroup::compose(const LiftedWord& a, const LiftedWord& b) const {
  const IntVec2 v = a.translation + linear_part(a.word).apply(b.translation);
  return {rotor::compose(a.word, b.word), v};
}

LiftedWord MapGroup::inverse(const LiftedWord& lw) const {
  const IntVec2 v = -linear_part(lw.word).inverse().apply(lw.translation);
  return {rotor::inverse(lw.word), v};
}

LiftedWord MapGroup::commutator(const LiftedWord& h, const LiftedWord& g) const {
  return compose(compose(h, g), compose(inverse(h), inverse(g)));
}

LiftedWord MapGroup::power(const LiftedWord& lw, std::int64_t k) const {
  const LiftedWord base = k < 0 ? inverse(lw) : lw;
  LiftedWord out;
  for (std::int64_t i = 0; i < std::abs(k); ++i) out = compose(out, base);
  return out;
}

}  // namespace rotor
