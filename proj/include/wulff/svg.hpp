#pragma once

// Deterministic SVG 1.1 figures: planar polygons in direct coordinates and
// spherical bodies in orthographic projection.

#include <string>
#include <vector>

#include "wulff/spherical_body.hpp"

namespace wulff::svg {

struct Style {
  std::string stroke;
  std::string fill = "none";
};

struct PlanarLayer {
  std::vector<Vec2> polygon;
  Style style;
};

std::string planar(const std::vector<PlanarLayer>& layers, bool mark_origin);

struct SphereLayer {
  const SphericalBody* body;
  Style style;
};

/// Orthographic view along `view` (the sphere outline is drawn as well).
std::string spherical(const std::vector<SphereLayer>& layers, const Vec3& view, int samples = 720);

}  // namespace wulff::svg
