#pragma once

// Wulff shapes, dual Wulff shapes, the inversion/central-projection maps and
// the apex checks built on them.

#include <optional>
#include <span>
#include <vector>

#include "wulff/integrand.hpp"

namespace wulff {

/// Planar Wulff shape: counterclockwise vertices plus the generating directions.
struct WulffPolygon {
  std::vector<Vec2> vertices;
  std::vector<Vec2> directions;
};

/// Convex hull of the inverted graph of a planar integrand.
struct DualWulff {
  std::vector<Vec2> vertices;         // counterclockwise, collinear points dropped
  std::vector<Vec2> inverted_points;  // inv(theta_k, gamma(theta_k)) in grid order
  double boundary_residual = 0.0;     // deepest inverted point inside the hull
};

/// 2-plane through the origin containing P, selected by a rotation about P.
struct SectionPlane {
  UnitVec3 apex;
  double rotation;
  /// Unit vector orthogonal to P spanning the plane together with P.
  Vec3 direction() const;
};

struct ApexReport {
  bool apex = false;
  double min_cone_width = 0.0;  // over sections (n = 2) or the single cone (n = 1)
  double threshold = 0.0;
  int sections = 0;             // sampled planes; the definition quantifies over all
  std::vector<double> cone_widths;
};

struct Theorem1Options {
  double search_delta = 0.5;  // largest cap probed for the cap law and flatness
  double tol = 1e-8;          // relative: tol*gamma(P) for the cap law, tol/gamma(P) for flatness
  int grid = 720;             // Wulff directions for apex detection
  int sections = 16;
  double apex_tol = 1e-6;     // normal-cone width floor (radians)
};

struct Theorem1Report {
  bool cap_law = false;
  double cap_delta = 0.0;           // radius on which the cap law holds to rounding
  double cap_residual = 0.0;
  bool local_max = false;
  double local_max_delta = 0.0;
  bool apex = false;
  ApexReport apex_detail;
  bool dual_flat = false;
  double flat_delta = 0.0;
  double flatness_residual = 0.0;   // deviation from the prescribed hyperplane
  double tls_residual = 0.0;        // total-least-squares plane residual on the same cap
  double resolution = 0.0;          // smallest certifiable cap radius
  bool agree = false;
};

struct FlatPatch {
  Eigen::VectorXd center;  // foot point M of the patch's affine span
  Eigen::VectorXd normal;  // outward unit normal, parallel to M
  double residual = 0.0;   // TLS residual of the patch points
  int points = 0;
};

struct FlatDiskResult {
  bool found = false;
  std::vector<FlatPatch> patches;
};

// --- inversion and projections ---

/// (theta, r) -> (-theta, 1/r), i.e. x -> -x/|x|^2.
Eigen::VectorXd invert_point(const Eigen::VectorXd& x);
/// Central projection of the upper open hemisphere of S^{n+1} onto {x_{n+2} = 1}.
Eigen::VectorXd alpha_n(const Eigen::VectorXd& p);
Eigen::VectorXd alpha_n_inv(const Eigen::VectorXd& y);
/// Spherical blow-up: (N - (N.p) p) / sqrt(1 - (N.p)^2).
Eigen::VectorXd psi_n(const Eigen::VectorXd& p);
/// |Id^-1 . alpha_N . Psi_N . alpha_N^-1 . Id (x) - invert_point(x)|.
double inversion_identity_residual(const Eigen::VectorXd& x);

// --- constructions ---

WulffPolygon wulff_from_directions(const ConvexIntegrand& g, std::span<const Vec2> directions);
/// Intersection of the N half-planes {x . theta_k <= gamma(theta_k)}, N >= 8.
WulffPolygon build_wulff(const ConvexIntegrand& g, int n_dirs);
DualWulff build_dual_wulff(const ConvexIntegrand& g, int n_dirs);

/// Angular width of the outward normal cone at boundary point v (0 on edge interiors).
double normal_cone_width(const WulffPolygon& w, const Vec2& v);

ApexReport detect_apex_report(const ConvexIntegrand& g, const Eigen::VectorXd& p, int sections = 16,
                              double tol = 1e-6, int grid = 720);
bool detect_apex(const ConvexIntegrand& g, const Eigen::VectorXd& p, int sections = 16, double tol = 1e-6,
                 int grid = 720);

Theorem1Report theorem1_report(const ConvexIntegrand& g, const Eigen::VectorXd& p,
                               const Theorem1Options& opt = {});

/// Flat patches of the dual Wulff boundary whose affine span has normal
/// parallel to its foot point M (M in the relative interior of the patch).
FlatDiskResult corollary_flat_disk(const ConvexIntegrand& g, int grid, double tol = 1e-8);

}  // namespace wulff
