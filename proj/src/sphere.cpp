#include "wulff/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace wulff {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::InvalidLune: return "invalid-lune";
    case Errc::Degenerate: return "degenerate";
    case Errc::NotOnBoundary: return "not-on-boundary";
    case Errc::NotHemispherical: return "not-hemispherical";
    case Errc::NotSupporting: return "not-supporting";
    case Errc::InvalidIntegrand: return "invalid-integrand";
    case Errc::InvalidBody: return "invalid-body";
    case Errc::SolverFailure: return "solver-failure";
    case Errc::ToleranceNotMet: return "tolerance-not-met";
    case Errc::CensusFailure: return "census-failure";
    case Errc::Schema: return "schema";
  }
  return "unknown";
}

Cap::Cap(UnitVec3 center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0 && radius <= kHalfPi + kAngleEps)) {
    throw Error(Errc::InvalidArgument, "Cap: radius must lie in (0, pi/2]");
  }
  radius_ = std::min(radius, kHalfPi);
}

Lune::Lune(Hemisphere a, Hemisphere b) : a_(a), b_(b) {
  const double d = sph_dist(a.center, b.center);
  if (d <= kAngleEps || d >= kPi - kAngleEps) {
    throw Error(Errc::InvalidLune, "Lune: centers must be distinct and non-antipodal");
  }
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double angle_between(const Vec2& a, const Vec2& b) {
  return std::atan2(std::abs(a.x() * b.y() - a.y() * b.x()), a.dot(b));
}

template <int N>
UnitVec<N> arc_point(const UnitVec<N>& p, const UnitVec<N>& q, double t) {
  if (t < 0.0 || t > 1.0) {
    throw Error(Errc::InvalidArgument, "arc_point: t outside [0, 1]");
  }
  const double total = sph_dist(p, q);
  if (total >= kPi - kAngleEps) {
    throw Error(Errc::InvalidArgument, "arc_point: antipodal endpoints");
  }
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  if (total < 1e-15) return p;
  // Orthonormal direction from p toward q in their common plane.
  typename UnitVec<N>::Vector w = q.vec() - p.dot(q) * p.vec();
  w.normalize();
  const double a = t * total;
  return UnitVec<N>::normalized(std::cos(a) * p.vec() + std::sin(a) * w);
}

template UnitVec<2> arc_point(const UnitVec<2>&, const UnitVec<2>&, double);
template UnitVec<3> arc_point(const UnitVec<3>&, const UnitVec<3>&, double);

double lune_thickness(const Lune& lune) {
  return kPi - sph_dist(lune.first().center, lune.second().center);
}

double vertex_angle(const UnitVec3& p, const UnitVec3& a, const UnitVec3& b) {
  const Vec3& pv = p.vec();
  const Vec3 ta = a.vec() - pv.dot(a.vec()) * pv;
  const Vec3 tb = b.vec() - pv.dot(b.vec()) * pv;
  if (ta.norm() < kAngleEps || tb.norm() < kAngleEps) {
    throw Error(Errc::Degenerate, "vertex_angle: endpoint coincides with +-P");
  }
  return angle_between(ta, tb);
}

bool cap_contains(const Cap& cap, const UnitVec3& q, double tol) {
  return sph_dist(cap.center(), q) <= cap.radius() + tol;
}

std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
  const Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = (helper - helper.dot(n) * n).normalized();
  Vec3 e2 = n.cross(e1);
  return {e1, e2};
}

Vec3 rotate_about(const Vec3& v, const Vec3& k, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return v * c + k.cross(v) * s + k * (k.dot(v)) * (1.0 - c);
}

}  // namespace wulff
