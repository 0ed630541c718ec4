#pragma once

// Planar convex-polygon helpers: hulls, half-plane intersection, distances.

#include <span>
#include <vector>

#include "wulff/sphere.hpp"

namespace wulff {

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// {x : x . normal <= offset}, with a unit normal.
struct HalfPlane {
  Vec2 normal;
  double offset;
};

/// Counterclockwise hull; points within `rel_tol * scale` of an edge line are
/// treated as collinear and dropped from the vertex list.
std::vector<Vec2> convex_hull_2d(std::span<const Vec2> points, double rel_tol = 1e-12);

/// Intersection of half-planes by sorting directions and walking the envelope
/// with a deque. Directions must surround the origin and every offset must be
/// positive. Equal directions keep the tightest offset, first occurrence on ties.
std::vector<Vec2> intersect_halfplanes(std::span<const HalfPlane> planes);

double polygon_area(std::span<const Vec2> poly);

/// Signed inward depth of p in a counterclockwise convex polygon
/// (positive inside, negative outside).
double depth_in_polygon(const Vec2& p, std::span<const Vec2> poly);

/// Euclidean distance from p to a convex polygon (0 when inside).
double distance_to_polygon(const Vec2& p, std::span<const Vec2> poly);

/// Closest point of a convex polygon to p.
Vec2 closest_point_on_polygon(const Vec2& p, std::span<const Vec2> poly);

/// Intersection of the ray t*dir (t > 0) with the boundary of a convex polygon
/// containing the origin.
Vec2 ray_exit_point(const Vec2& dir, std::span<const Vec2> poly);

}  // namespace wulff
