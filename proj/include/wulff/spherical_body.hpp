#pragma once

// Convex bodies on S^2 stored as a closed chain of circle-arc features.
//
// Every feature is a piece of a circle with center c and spherical radius
// rho in [0, pi/2], traversed counterclockwise about c (seen from outside the
// sphere) with the body on the c side. rho = pi/2 is a great segment and
// rho = 0 a vertex. The point curve of a feature is
//   p(phi) = cos(rho) c + sin(rho) (cos(phi) e1 + sin(phi) e2),  phi in [0, sweep],
// and its normal curve (centers of the supporting hemispheres) is the circle
// with the same center, radius pi/2 - rho and frame (-e1, -e2). Polarity swaps
// the two curves, so duality is an exact feature-wise map.

#include <span>
#include <vector>

#include "wulff/sphere.hpp"

namespace wulff {

enum class FeatureKind { SmallArc, GreatSegment, Vertex };
const char* to_string(FeatureKind k);

/// Location and value of an extremum over a feature parameter interval.
struct Extremum {
  double value;
  double phi;
};

struct ArcFeature {
  Vec3 center;
  double rho;
  Vec3 e1;  // unit, orthogonal to center
  Vec3 e2;  // center x e1
  double sweep;
  double cos_rho, sin_rho;

  static ArcFeature make(const Vec3& center, double rho, const Vec3& e1, double sweep);
  /// Arc of the circle (c, rho) from `from` counterclockwise to `to`.
  /// `full_turn` selects 2*pi when the endpoints coincide.
  static ArcFeature arc(const Vec3& c, double rho, const Vec3& from, const Vec3& to, bool full_turn = false);
  /// Vertex at v whose supporting-hemisphere centers turn from n_in to n_out.
  static ArcFeature vertex(const Vec3& v, const Vec3& n_in, const Vec3& n_out);

  FeatureKind kind() const;
  Vec3 point(double phi) const;
  Vec3 normal(double phi) const;
  /// Unit forward tangent of the point curve; undefined for vertices.
  Vec3 tangent(double phi) const;
  Vec3 from() const { return point(0.0); }
  Vec3 to() const { return point(sweep); }
  Vec3 normal_in() const { return normal(0.0); }
  Vec3 normal_out() const { return normal(sweep); }
  double length() const { return sin_rho * sweep; }
  ArcFeature dual() const;

  Extremum min_point_dot(const Vec3& x) const;
  Extremum max_point_dot(const Vec3& x) const;
  Extremum min_normal_dot(const Vec3& x) const;
};

struct ArcSpec {
  Vec3 center;
  double rho;
  Vec3 from;
  Vec3 to;
};

struct BoundarySample {
  Vec3 point;
  int feature;
  double phi;
};

class SphericalBody {
 public:
  /// Checks chain closure, normal continuity and hemisphericity about `witness`.
  SphericalBody(std::vector<ArcFeature> features, const Vec3& witness);

  static SphericalBody cap(const UnitVec3& c, double rho);
  /// Convex polygon from counterclockwise vertices.
  static SphericalBody polygon(std::span<const Vec3> ccw_vertices);
  /// Chain of arcs; vertex features are inserted at every non-smooth junction.
  static SphericalBody from_arcs(std::span<const ArcSpec> arcs, const Vec3& witness);

  const std::vector<ArcFeature>& features() const noexcept { return features_; }
  const Vec3& witness() const noexcept { return witness_; }
  std::size_t size() const noexcept { return features_.size(); }

  bool contains(const Vec3& x, double tol = kAngleEps) const;
  /// Spherical distance from x to the body (0 inside).
  double distance_to(const Vec3& x) const;
  /// Boundary point nearest to x together with its angle.
  std::pair<Vec3, double> nearest_boundary(const Vec3& x) const;
  /// Boundary point farthest from x together with its angle.
  std::pair<Vec3, double> farthest_boundary(const Vec3& x) const;
  /// Signed angular depth of x: asin(min over supporting centers of u.x).
  double depth(const Vec3& x) const;
  double perimeter() const;

  /// m arclength-uniform samples (nested in m) followed by every vertex.
  std::vector<BoundarySample> boundary_samples(int m) const;

  /// Throws on broken invariants. `deep` adds an O(F^2) convexity scan.
  void validate(bool deep) const;

  std::vector<Vec3> vertices() const;

 private:
  std::vector<ArcFeature> features_;
  Vec3 witness_;
};

/// Spherical convex hull of hemispherical points (a spherical polygon).
SphericalBody s_conv(std::span<const Vec3> points);

SphericalBody polar_dual(const SphericalBody& c);

struct SupportSet {
  bool unique;
  Vec3 first;
  Vec3 second;  // equals first when unique
};
SupportSet supporting_hemispheres(const SphericalBody& c, const Vec3& p);

/// Width with respect to the supporting hemisphere H(p).
double width_wrt(const SphericalBody& c, const Vec3& p);

struct WidthReport {
  std::vector<double> params;  // arclength along the support-center curve
  std::vector<Vec3> centers;
  std::vector<double> widths;
  double min = 0.0;
  double max = 0.0;
  Vec3 argmin_p = Vec3::Zero();
  Vec3 argmin_q = Vec3::Zero();
  Vec3 argmax_p = Vec3::Zero();
};

inline constexpr int kWidthSamples = 1024;
WidthReport thickness(const SphericalBody& c, int samples = kWidthSamples);

struct ConstantWidth {
  bool constant;
  double tau;
  WidthReport report;
};
ConstantWidth is_constant_width(const SphericalBody& c, double tol, int samples = kWidthSamples);

struct VertexAngle {
  double angle;
  double normal_gap;
};
VertexAngle vertex_angle_identity(const SphericalBody& c, const Vec3& v);

struct CapWitness {
  Vec3 center;
  double delta;
};
/// Cap contained in both the body and its polar, of near-maximal radius.
CapWitness interior_cap_witness(const SphericalBody& c);

}  // namespace wulff
