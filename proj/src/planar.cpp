#include "wulff/planar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace wulff {

namespace {

double scale_of(std::span<const Vec2> pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

Vec2 line_intersection(const HalfPlane& a, const HalfPlane& b) {
  const double det = cross2(a.normal, b.normal);
  return Vec2((a.offset * b.normal.y() - b.offset * a.normal.y()) / det,
              (a.normal.x() * b.offset - b.normal.x() * a.offset) / det);
}

}  // namespace

std::vector<Vec2> convex_hull_2d(std::span<const Vec2> points, double rel_tol) {
  std::vector<Vec2> pts(points.begin(), points.end());
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const double tol = rel_tol * scale_of(pts) * scale_of(pts);
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= tol) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= tol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Vec2> intersect_halfplanes(std::span<const HalfPlane> planes) {
  if (planes.size() < 3) {
    throw Error(Errc::Degenerate, "half-plane intersection needs at least three planes");
  }
  std::vector<std::size_t> order(planes.size());
  std::iota(order.begin(), order.end(), 0);
  auto angle = [&](std::size_t i) { return std::atan2(planes[i].normal.y(), planes[i].normal.x()); };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return angle(a) < angle(b); });

  std::vector<HalfPlane> hp;
  hp.reserve(order.size());
  double scale = 0.0;
  for (std::size_t idx : order) {
    const HalfPlane& h = planes[idx];
    if (!(h.offset > 0.0)) {
      throw Error(Errc::Degenerate, "half-plane intersection requires the origin strictly inside");
    }
    scale = std::max(scale, h.offset);
    if (!hp.empty() && std::abs(angle(idx) - std::atan2(hp.back().normal.y(), hp.back().normal.x())) < 1e-15) {
      if (h.offset < hp.back().offset) hp.back() = h;
      continue;
    }
    hp.push_back(h);
  }
  const double eps = 1e-13 * scale;
  auto outside = [&](const HalfPlane& h, const Vec2& p) { return p.dot(h.normal) > h.offset - eps; };

  std::deque<HalfPlane> dq;
  for (const auto& h : hp) {
    while (dq.size() >= 2 && outside(h, line_intersection(dq[dq.size() - 1], dq[dq.size() - 2]))) dq.pop_back();
    while (dq.size() >= 2 && outside(h, line_intersection(dq[0], dq[1]))) dq.pop_front();
    dq.push_back(h);
  }
  while (dq.size() >= 3 && outside(dq.front(), line_intersection(dq[dq.size() - 1], dq[dq.size() - 2]))) dq.pop_back();
  while (dq.size() >= 3 && outside(dq.back(), line_intersection(dq[0], dq[1]))) dq.pop_front();
  if (dq.size() < 3) {
    throw Error(Errc::Degenerate, "half-plane intersection is empty or unbounded");
  }
  std::vector<Vec2> verts;
  verts.reserve(dq.size());
  for (std::size_t i = 0; i < dq.size(); ++i) {
    const HalfPlane& a = dq[i];
    const HalfPlane& b = dq[(i + 1) % dq.size()];
    if (cross2(a.normal, b.normal) <= 0.0) {
      throw Error(Errc::Degenerate, "half-plane intersection is unbounded");
    }
    verts.push_back(line_intersection(a, b));
  }
  // Concurrent constraints leave clusters of coincident vertices.
  std::vector<Vec2> merged;
  const double merge_tol = 1e-10 * scale;
  for (const auto& v : verts) {
    if (merged.empty() || (v - merged.back()).norm() > merge_tol) merged.push_back(v);
  }
  while (merged.size() > 1 && (merged.front() - merged.back()).norm() <= merge_tol) merged.pop_back();
  if (merged.size() < 3) throw Error(Errc::Degenerate, "half-plane intersection collapsed");
  return merged;
}

double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

double depth_in_polygon(const Vec2& p, std::span<const Vec2> poly) {
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2 e = poly[(i + 1) % poly.size()] - a;
    depth = std::min(depth, cross2(e, p - a) / e.norm());
  }
  return depth;
}

Vec2 closest_point_on_polygon(const Vec2& p, std::span<const Vec2> poly) {
  if (depth_in_polygon(p, poly) >= 0.0) return p;
  Vec2 best = poly[0];
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2 e = poly[(i + 1) % poly.size()] - a;
    const double t = std::clamp((p - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
    const Vec2 q = a + t * e;
    const double d = (p - q).norm();
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

double distance_to_polygon(const Vec2& p, std::span<const Vec2> poly) {
  return (p - closest_point_on_polygon(p, poly)).norm();
}

Vec2 ray_exit_point(const Vec2& dir, std::span<const Vec2> poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2 e = poly[(i + 1) % poly.size()] - a;
    const double den = cross2(dir, e);
    if (std::abs(den) < 1e-300) continue;
    // Solve t*dir = a + s*e.
    const double t = cross2(a, e) / den;
    const double s = cross2(a, dir) / den;
    if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
  }
  if (!std::isfinite(best)) throw Error(Errc::Degenerate, "ray does not exit polygon");
  return best * dir;
}

}  // namespace wulff
