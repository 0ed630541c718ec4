#pragma once

// Hausdorff distances between spherical bodies and planar polygons, and the
// polar isometry check.

#include "wulff/spherical_body.hpp"
#include "wulff/wulff_shape.hpp"

namespace wulff {

inline constexpr int kHausdorffSamples = 2048;
inline constexpr int kOracleFactor = 10;

struct DistanceResult {
  double value = 0.0;
  Eigen::VectorXd witness_a;
  Eigen::VectorXd witness_b;
  int samples = 0;
};

/// Max over m boundary samples of `a` of the distance to `b` (nested in m).
DistanceResult directed_hausdorff_sph(const SphericalBody& a, const SphericalBody& b, int m);
DistanceResult hausdorff_sph(const SphericalBody& a, const SphericalBody& b, int m = kHausdorffSamples);

/// Exact for convex polygons: the farthest point is always a vertex.
DistanceResult hausdorff_planar(const WulffPolygon& a, const WulffPolygon& b);

struct IsometryResult {
  double residual;
  double h;
  double h_polar;
  Vec3 common_interior;
};

/// |h(C1, C2) - h(C1°, C2°)|; throws NotHemispherical when no common interior
/// point with both bodies in its open hemisphere can be certified.
IsometryResult polar_isometry_residual(const SphericalBody& c1, const SphericalBody& c2,
                                       int m = kHausdorffSamples);

}  // namespace wulff
