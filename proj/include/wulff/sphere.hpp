#pragma once

// Primitives on S^1 and S^2: unit vectors, geodesic arcs, hemispheres, caps
// and lunes.

#include <cmath>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <numbers>

#include "wulff/error.hpp"

namespace wulff {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Global angular epsilon (radians) shared by all predicates.
inline constexpr double kAngleEps = 1e-9;
/// Constructors accept inputs whose norm lies within this band around 1.
inline constexpr double kNormBand = 1e-6;

template <int N>
class UnitVec {
 public:
  using Vector = Eigen::Matrix<double, N, 1>;

  /// Normalizes `v`; throws unless |v| lies in [1 - kNormBand, 1 + kNormBand].
  explicit UnitVec(const Vector& v) {
    const double n = v.norm();
    if (!(std::abs(n - 1.0) <= kNormBand)) {
      throw Error(Errc::InvalidArgument, "UnitVec: input norm outside unit band");
    }
    v_ = v / n;
  }

  /// Direction of an arbitrary nonzero vector.
  static UnitVec normalized(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(Errc::InvalidArgument, "UnitVec: cannot normalize zero vector");
    }
    return UnitVec(v / n, Trusted{});
  }

  const Vector& vec() const noexcept { return v_; }
  double operator[](int i) const { return v_[i]; }
  double dot(const UnitVec& o) const { return v_.dot(o.v_); }
  UnitVec operator-() const { return UnitVec(-v_, Trusted{}); }

 private:
  struct Trusted {};
  UnitVec(const Vector& v, Trusted) : v_(v) {}
  Vector v_;
};

using UnitVec2 = UnitVec<2>;
using UnitVec3 = UnitVec<3>;

struct Hemisphere {
  UnitVec3 center;
};

class Cap {
 public:
  /// radius must lie in (0, pi/2].
  Cap(UnitVec3 center, double radius);
  const UnitVec3& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

 private:
  UnitVec3 center_;
  double radius_;
};

class Lune {
 public:
  /// Throws Errc::InvalidLune for equal or antipodal centers.
  Lune(Hemisphere a, Hemisphere b);
  const Hemisphere& first() const noexcept { return a_; }
  const Hemisphere& second() const noexcept { return b_; }

 private:
  Hemisphere a_, b_;
};

/// Angle between two unit vectors, evaluated with atan2 for accuracy near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);
double angle_between(const Vec2& a, const Vec2& b);

template <int N>
double sph_dist(const UnitVec<N>& p, const UnitVec<N>& q) {
  return angle_between(p.vec(), q.vec());
}

/// Constant-speed point on the shorter arc from p to q; throws for antipodes.
template <int N>
UnitVec<N> arc_point(const UnitVec<N>& p, const UnitVec<N>& q, double t);

double lune_thickness(const Lune& lune);

/// Angle at p between the geodesics pa and pb.
double vertex_angle(const UnitVec3& p, const UnitVec3& a, const UnitVec3& b);

bool cap_contains(const Cap& cap, const UnitVec3& q, double tol = kAngleEps);

/// Right-handed orthonormal pair (e1, e2) with e1 x e2 = n.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n);

/// Rotates v about unit axis k by angle a (Rodrigues).
Vec3 rotate_about(const Vec3& v, const Vec3& k, double a);

}  // namespace wulff
