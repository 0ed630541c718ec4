#include "wulff/metrics.hpp"

#include <algorithm>

#include "wulff/planar.hpp"

namespace wulff {

DistanceResult directed_hausdorff_sph(const SphericalBody& a, const SphericalBody& b, int m) {
  DistanceResult r;
  r.samples = m;
  r.witness_a = a.features().front().from();
  r.witness_b = r.witness_a;
  bool first = true;
  for (const auto& s : a.boundary_samples(m)) {
    if (b.contains(s.point, 0.0)) {
      if (first) {
        r.witness_a = s.point;
        r.witness_b = s.point;
        first = false;
      }
      continue;
    }
    const auto [q, d] = b.nearest_boundary(s.point);
    // Strict comparison keeps the lowest sample index on ties.
    if (first || d > r.value) {
      r.value = d;
      r.witness_a = s.point;
      r.witness_b = q;
      first = false;
    }
  }
  return r;
}

DistanceResult hausdorff_sph(const SphericalBody& a, const SphericalBody& b, int m) {
  DistanceResult ab = directed_hausdorff_sph(a, b, m);
  DistanceResult ba = directed_hausdorff_sph(b, a, m);
  if (ba.value > ab.value) {
    std::swap(ba.witness_a, ba.witness_b);
    return ba;
  }
  return ab;
}

namespace {

DistanceResult directed_planar(const WulffPolygon& a, const WulffPolygon& b) {
  DistanceResult r;
  r.samples = static_cast<int>(a.vertices.size());
  r.witness_a = a.vertices.front();
  r.witness_b = closest_point_on_polygon(a.vertices.front(), b.vertices);
  r.value = -1.0;
  for (const auto& v : a.vertices) {
    const Vec2 q = closest_point_on_polygon(v, b.vertices);
    const double d = depth_in_polygon(v, b.vertices) >= 0.0 ? 0.0 : (v - q).norm();
    if (d > r.value) {
      r.value = d;
      r.witness_a = v;
      r.witness_b = d > 0.0 ? q : v;
    }
  }
  return r;
}

}  // namespace

DistanceResult hausdorff_planar(const WulffPolygon& a, const WulffPolygon& b) {
  if (a.vertices.size() < 3 || b.vertices.size() < 3) throw Error(Errc::Degenerate, "polygon needs three vertices");
  DistanceResult ab = directed_planar(a, b);
  DistanceResult ba = directed_planar(b, a);
  if (ba.value > ab.value) {
    std::swap(ba.witness_a, ba.witness_b);
    return ba;
  }
  return ab;
}

namespace {

// Margin of p inside the host body and inside its polar (positive when interior to both).
double interior_margin(const SphericalBody& host, const Vec3& p) {
  return std::min(host.depth(p), kHalfPi - host.farthest_boundary(p).second);
}

// Pattern search for a point interior to both bodies and both polars.
std::pair<Vec3, double> common_interior(const SphericalBody& c1, const SphericalBody& c2) {
  auto score = [&](const Vec3& p) { return std::min(interior_margin(c1, p), interior_margin(c2, p)); };
  Vec3 best_p = c1.witness();
  double best = -1e300;
  for (const Vec3& start : {c1.witness(), c2.witness(), Vec3((c1.witness() + c2.witness()).normalized())}) {
    if (!start.allFinite()) continue;
    Vec3 p = start;
    double s = score(p);
    double step = 0.25;
    for (int it = 0; it < 20000 && step > 1e-9; ++it) {
      const auto [e1, e2] = tangent_frame(p);
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        const double a = kPi * k / 4.0;
        const Vec3 q = (std::cos(step) * p + std::sin(step) * (std::cos(a) * e1 + std::sin(a) * e2)).normalized();
        const double t = score(q);
        if (t > s) {
          s = t;
          p = q;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (s > best) {
      best = s;
      best_p = p;
    }
  }
  return {best_p, best};
}

}  // namespace

IsometryResult polar_isometry_residual(const SphericalBody& c1, const SphericalBody& c2, int m) {
  const auto [p, margin] = common_interior(c1, c2);
  if (!(margin > 0.0)) {
    throw Error(Errc::NotHemispherical, "no common interior point of both bodies and both polars");
  }
  const double h = hausdorff_sph(c1, c2, m).value;
  const double hp = hausdorff_sph(polar_dual(c1), polar_dual(c2), m).value;
  return {std::abs(h - hp), h, hp, p};
}

}  // namespace wulff
