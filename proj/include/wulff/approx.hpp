#pragma once

// Constant-width constructions on S^2 and the large-width approximation
// pipeline (polar, approximate by a ball hull, polar back).

#include <span>

#include "wulff/spherical_body.hpp"

namespace wulff {

/// Reuleaux-type body: k (odd) vertices on a common colatitude about +z, each
/// boundary arc of radius tau centered at the opposite vertex.
SphericalBody reuleaux_regular(int k, double tau);

/// Intersection of the caps cap(p, tau) over the given points.
SphericalBody ball_hull(std::span<const Vec3> points, double tau);

struct Census {
  int arcs = 0;      // small arcs of the expected radius
  int segments = 0;  // great segments
  int vertices = 0;  // corners between pieces
  int other = 0;
};
Census feature_census(const SphericalBody& c, double arc_radius, double tol = 1e-6);

struct PipelineReport {
  double tau = 0.0;
  double eps = 0.0;
  double achieved = 0.0;         // h(input, output)
  double dual_achieved = 0.0;    // h on the polar side, when applicable
  double width_deviation = 0.0;  // max - min width of the output
  double output_width = 0.0;
  Census census;
  int samples = 0;  // boundary sample count m of the final ball hull
  bool tolerance_met = false;
  bool census_ok = false;
  bool success = false;
};

struct ApproxOptions {
  double eps = 0.05;
  double tol_w = 1e-3;
  int m_start = 64;
  int m_cap = 1 << 14;
  int hausdorff_samples = 2048;
  double input_width_tol = 1e-6;
  /// Throw ToleranceNotMet instead of returning an unmet report.
  bool strict = true;
};

struct ApproxResult {
  SphericalBody body;
  PipelineReport report;
};

/// Ball hull of doubling boundary samples until h <= eps and the width
/// deviation is <= tol_w. Input must have constant width below pi/2.
ApproxResult approximate_cw_small(const SphericalBody& c, const ApproxOptions& opt);

/// Input must have constant width above pi/2.
ApproxResult theorem2_pipeline(const SphericalBody& c, const ApproxOptions& opt);

}  // namespace wulff
