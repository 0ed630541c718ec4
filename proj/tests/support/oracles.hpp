#pragma once

// Independent brute-force references used by unit and acceptance tests. None
// of these reuse the library's hull, envelope or closed-form routines.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wulff/planar.hpp"
#include "wulff/sphere.hpp"
#include "wulff/spherical_body.hpp"

namespace oracle {

using wulff::Vec2;
using wulff::Vec3;
constexpr double kPi = wulff::kPi;

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

/// Uniform-ish point in cap(center, radius).
inline Vec3 random_in_cap(std::mt19937_64& rng, const Vec3& center, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double a = 2.0 * kPi * u(rng);
  const auto [e1, e2] = wulff::tangent_frame(center);
  return std::cos(r) * center + std::sin(r) * (std::cos(a) * e1 + std::sin(a) * e2);
}

/// pts[i] lies on the boundary of the hull iff the directions to all other
/// points leave an angular gap of at least pi - tol.
inline bool on_hull_boundary_angular(const std::vector<Vec2>& pts, std::size_t i, double tol) {
  std::vector<double> ang;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const Vec2 d = pts[j] - pts[i];
    if (d.norm() > 1e-14) ang.push_back(std::atan2(d.y(), d.x()));
  }
  if (ang.size() < 2) return true;
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2.0 * kPi - ang.back();
  for (std::size_t k = 1; k < ang.size(); ++k) gap = std::max(gap, ang[k] - ang[k - 1]);
  return gap >= kPi - tol;
}

/// Vertices of {x : x.n_i <= d_i} from every feasible pairwise line crossing,
/// sorted counterclockwise about their centroid.
inline std::vector<Vec2> halfplane_vertices_bruteforce(const std::vector<wulff::HalfPlane>& hp, double tol = 1e-9) {
  std::vector<Vec2> v;
  for (std::size_t i = 0; i < hp.size(); ++i)
    for (std::size_t j = i + 1; j < hp.size(); ++j) {
      Eigen::Matrix2d A;
      A << hp[i].normal.transpose(), hp[j].normal.transpose();
      if (std::abs(A.determinant()) < 1e-12) continue;
      const Vec2 x = A.inverse() * Vec2(hp[i].offset, hp[j].offset);
      bool ok = true;
      for (const auto& h : hp)
        if (x.dot(h.normal) > h.offset + tol) ok = false;
      if (!ok) continue;
      bool dup = false;
      for (const auto& y : v)
        if ((y - x).norm() < 1e-8) dup = true;
      if (!dup) v.push_back(x);
    }
  Vec2 c = Vec2::Zero();
  for (const auto& p : v) c += p;
  c /= static_cast<double>(std::max<std::size_t>(1, v.size()));
  std::sort(v.begin(), v.end(), [&](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  return v;
}

/// Symmetric max-min distance between two finite point sets.
template <class V>
double point_set_distance(const std::vector<V>& a, const std::vector<V>& b) {
  auto directed = [](const std::vector<V>& x, const std::vector<V>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Dense boundary points of the spherical polygon with the given vertices.
inline std::vector<Vec3> polygon_boundary(const std::vector<Vec3>& v, int per_edge) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % v.size()];
    const double w = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
    for (int k = 0; k < per_edge; ++k) {
      const double t = static_cast<double>(k) / per_edge;
      out.push_back(((std::sin((1 - t) * w) * a + std::sin(t * w) * b) / std::sin(w)).normalized());
    }
  }
  return out;
}

/// Membership in a spherical polygon: inside every edge hemisphere.
inline bool in_polygon(const std::vector<Vec3>& v, const Vec3& x, double tol = 1e-12) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].cross(v[(i + 1) % v.size()]).normalized().dot(x) < -tol) return false;
  return true;
}

/// Polar of a spherical polygon as an intersection of hemispheres H(v_i),
/// computed in the gnomonic chart at an interior point w by brute-force
/// half-plane intersection.
inline std::vector<Vec3> polygon_polar_vertices(const std::vector<Vec3>& v, const Vec3& w) {
  const auto [e1, e2] = wulff::tangent_frame(w);
  std::vector<wulff::HalfPlane> hp;
  // x = w + a e1 + b e2 satisfies v.x >= 0  <=>  -(v.e1, v.e2).(a, b) <= v.w.
  for (const auto& p : v) {
    const Vec2 n(-p.dot(e1), -p.dot(e2));
    hp.push_back({n / n.norm(), p.dot(w) / n.norm()});
  }
  std::vector<Vec3> out;
  for (const auto& q : halfplane_vertices_bruteforce(hp)) out.push_back((w + q.x() * e1 + q.y() * e2).normalized());
  return out;
}

/// Normalized vertex mean; interior to any convex spherical polygon.
inline Vec3 vertex_centroid(const std::vector<Vec3>& v) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : v) c += p;
  return c.normalized();
}

/// Width range of a spherical polygon: widths at dense support centers P on
/// the polar boundary, each as pi minus the farthest polar boundary point.
/// The farthest point may sit inside a polar edge, so both sides are dense.
inline std::pair<double, double> polygon_width_range(const std::vector<Vec3>& v, int per_edge) {
  std::vector<Vec3> poles;
  for (std::size_t i = 0; i < v.size(); ++i) poles.push_back(v[i].cross(v[(i + 1) % v.size()]).normalized());
  const auto dense = polygon_boundary(poles, per_edge);
  double lo = 1e300, hi = -1e300;
  for (const auto& p : dense) {
    double far = 0.0;
    for (const auto& q : dense) far = std::max(far, std::atan2(p.cross(q).norm(), p.dot(q)));
    lo = std::min(lo, kPi - far);
    hi = std::max(hi, kPi - far);
  }
  return {lo, hi};
}

/// Point-cloud Hausdorff distance between two bodies given dense boundary
/// samples and membership predicates.
template <class InA, class InB>
double hausdorff_dense(const std::vector<Vec3>& a, const std::vector<Vec3>& b, InA&& in_a, InB&& in_b) {
  auto ang = [](const Vec3& p, const Vec3& q) { return std::atan2(p.cross(q).norm(), p.dot(q)); };
  auto directed = [&](const std::vector<Vec3>& x, const std::vector<Vec3>& y, auto&& in_y) {
    double worst = 0.0;
    for (const auto& p : x) {
      if (in_y(p)) continue;
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, ang(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b, in_b), directed(b, a, in_a));
}

/// Random convex spherical polygon: hull of k points in cap(center, radius).
inline wulff::SphericalBody random_polygon(std::mt19937_64& rng, const Vec3& center, double radius, int k = 8) {
  for (;;) {
    std::vector<Vec3> pts;
    for (int i = 0; i < k; ++i) pts.push_back(random_in_cap(rng, center, radius));
    try {
      return wulff::s_conv(pts);
    } catch (const wulff::Error&) {
    }
  }
}

}  // namespace oracle
