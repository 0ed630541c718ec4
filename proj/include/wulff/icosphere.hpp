#pragma once

#include <array>
#include <vector>

#include "wulff/sphere.hpp"

namespace wulff {

/// Subdivided icosahedron on S^2; level L has 10*4^L + 2 nodes.
struct Icosphere {
  int level = 0;
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 3>> faces;  // counterclockwise seen from outside
  std::vector<std::array<int, 2>> edges;
};

Icosphere make_icosphere(int level);

/// Smallest icosphere with at least `min_nodes` nodes (level capped at 7).
Icosphere icosphere_with_at_least(int min_nodes);

/// Uniform directions on S^1: angle 2*pi*k/n, k = 0..n-1.
std::vector<Vec2> circle_grid(int n);

}  // namespace wulff
