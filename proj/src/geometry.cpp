#include "rotor/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rotor {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  if (len2 == 0.0) return (p - a).norm();
  double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double distance_to_convex(const Vec2& p, const std::vector<Vec2>& hull) {
  if (hull.empty()) return INFINITY;
  if (hull.size() == 1) return (p - hull[0]).norm();
  if (hull.size() == 2) return segment_distance(p, hull[0], hull[1]);
  bool inside = true;
  double best = INFINITY;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

double hausdorff_convex(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  // The distance to a convex set is convex, so the suprema sit at vertices.
  double d = 0.0;
  for (const auto& p : a) d = std::max(d, distance_to_convex(p, b));
  for (const auto& p : b) d = std::max(d, distance_to_convex(p, a));
  return d;
}

bool hull_contains(const std::vector<Vec2>& outer, const std::vector<Vec2>& inner, double tol) {
  for (const auto& p : inner) {
    if (distance_to_convex(p, outer) > tol) return false;
  }
  return true;
}

Vec2 centroid(const std::vector<Vec2>& points) {
  CompensatedSum2 s;
  for (const auto& p : points) s.add(p);
  return points.empty() ? Vec2{} : s.value() / static_cast<double>(points.size());
}

double diameter(const std::vector<Vec2>& points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, (points[i] - points[j]).norm());
  }
  return d;
}

}  // namespace rotor
