#pragma once

#include <vector>

#include "rotor/vec2.hpp"

namespace rotor {

/// Convex hull by the monotone chain, counter-clockwise, without collinear
/// interior vertices. Degenerate inputs give one or two vertices.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Euclidean distance from p to the convex polygon (0 inside).
double distance_to_convex(const Vec2& p, const std::vector<Vec2>& hull);

/// Hausdorff distance between two convex polygons given by their vertices.
double hausdorff_convex(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// True if every vertex of inner lies in outer up to tol.
bool hull_contains(const std::vector<Vec2>& outer, const std::vector<Vec2>& inner, double tol);

Vec2 centroid(const std::vector<Vec2>& points);

double diameter(const std::vector<Vec2>& points);

}  // namespace rotor
