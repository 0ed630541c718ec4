#pragma once

#include <array>
#include <span>
#include <vector>

#include "wulff/sphere.hpp"

namespace wulff {

/// Triangulated 3D convex hull with outward unit normals.
struct Hull3 {
  std::vector<Vec3> points;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec3> normals;
  std::vector<double> offsets;  // normal . x <= offset inside
};

/// Incremental hull. Points closer than `rel_eps * scale` to a face plane are
/// not considered to see it, so coplanar points never split a facet.
Hull3 convex_hull_3d(std::span<const Vec3> points, double rel_eps = 1e-12);

/// min over faces of (offset - normal . p): positive inside, ~0 on the boundary.
double hull_depth(const Hull3& hull, const Vec3& p);

}  // namespace wulff
