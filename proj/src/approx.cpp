#include "wulff/approx.hpp"

#include <algorithm>
#include <cmath>

#include "wulff/metrics.hpp"

namespace wulff {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct Interval {
  double lo, hi;
};

// Intersects a sorted disjoint interval list in [0, 2pi) with [s, s + len].
std::vector<Interval> intersect(const std::vector<Interval>& cur, double s, double len) {
  std::vector<Interval> allowed;
  if (s + len <= kTwoPi) {
    allowed.push_back({s, s + len});
  } else {
    allowed.push_back({0.0, s + len - kTwoPi});
    allowed.push_back({s, kTwoPi});
  }
  std::vector<Interval> out;
  for (const auto& a : cur)
    for (const auto& b : allowed) {
      const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
      if (hi > lo) out.push_back({lo, hi});
    }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

struct Piece {
  int circle;
  double lo, hi;
  double order;
};

// Intersection of the two tau-circles about p and q nearest to `hint`.
Vec3 circle_meet(const Vec3& p, const Vec3& q, double tau, const Vec3& hint) {
  const double c = p.dot(q);
  const Vec3 n = p.cross(q);
  const double nn = n.norm();
  if (nn < 1e-15) return hint;
  const double alpha = std::cos(tau) / (1.0 + c);
  const double b2 = 1.0 - alpha * alpha * 2.0 * (1.0 + c);
  const double beta = std::sqrt(std::max(0.0, b2));
  const Vec3 base = alpha * (p + q);
  const Vec3 x1 = (base + beta * n / nn).normalized(), x2 = (base - beta * n / nn).normalized();
  return (x1 - hint).norm() <= (x2 - hint).norm() ? x1 : x2;
}

double ccw_sweep(const Vec3& c, const Vec3& from, const Vec3& to) {
  const Vec3 fp = from - from.dot(c) * c, tp = to - to.dot(c) * c;
  const Vec3 e1 = fp.normalized(), e2 = c.cross(e1);
  double a = std::atan2(tp.dot(e2), tp.dot(e1));
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

SphericalBody reuleaux_regular(int k, double tau) {
  if (k < 3 || k % 2 == 0) throw Error(Errc::InvalidArgument, "Reuleaux body needs an odd vertex count >= 3");
  if (!(tau > 0.0 && tau < kHalfPi)) throw Error(Errc::InvalidArgument, "Reuleaux width must lie in (0, pi/2)");
  const int m = (k - 1) / 2;
  auto vert = [&](double theta, int j) {
    const double lon = kTwoPi * j / k;
    return Vec3(std::sin(theta) * std::cos(lon), std::sin(theta) * std::sin(lon), std::cos(theta));
  };
  auto gap = [&](double theta) { return angle_between(vert(theta, 0), vert(theta, m)) - tau; };
  double lo = 0.0, hi = kHalfPi;
  if (!(gap(hi) > 0.0)) throw Error(Errc::SolverFailure, "Reuleaux colatitude bracket failed");
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (gap(mid) > 0.0 ? hi : lo) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  if (std::abs(gap(theta)) > 1e-12) throw Error(Errc::SolverFailure, "Reuleaux colatitude solve did not converge");
  std::vector<Vec3> v;
  for (int j = 0; j < k; ++j) v.push_back(vert(theta, j));
  std::vector<ArcSpec> arcs;
  for (int i = 0; i < k; ++i) arcs.push_back({v[(i + m + 1) % k], tau, v[i], v[(i + 1) % k]});
  return SphericalBody::from_arcs(arcs, Vec3::UnitZ());
}

SphericalBody ball_hull(std::span<const Vec3> points_in, double tau) {
  if (!(tau > 0.0 && tau < kHalfPi)) throw Error(Errc::InvalidArgument, "ball hull radius must lie in (0, pi/2)");
  std::vector<Vec3> pts;
  for (const auto& p : points_in) {
    const Vec3 q = p.normalized();
    bool dup = false;
    for (const auto& r : pts)
      if ((r - q).norm() < 1e-12) dup = true;
    if (!dup) pts.push_back(q);
  }
  if (pts.empty()) throw Error(Errc::Degenerate, "ball hull of no points");
  Vec3 w = Vec3::Zero();
  for (const auto& p : pts) w += p;
  if (w.norm() < 1e-12) throw Error(Errc::Degenerate, "ball hull points are not hemispherical");
  w.normalize();
  const double ct = std::cos(tau), st = std::sin(tau);
  for (const auto& p : pts)
    if (p.dot(w) <= ct) throw Error(Errc::Degenerate, "ball hull has empty interior about the point mean");

  const int n = static_cast<int>(pts.size());
  if (n == 1) return SphericalBody::cap(UnitVec3::normalized(pts[0]), tau);

  const auto [f1, f2] = tangent_frame(w);
  std::vector<Piece> pieces;
  for (int i = 0; i < n; ++i) {
    const auto [e1, e2] = tangent_frame(pts[i]);
    std::vector<Interval> cur{{0.0, kTwoPi}};
    for (int j = 0; j < n && !cur.empty(); ++j) {
      if (j == i) continue;
      const double a = e1.dot(pts[j]), b = e2.dot(pts[j]);
      const double R = std::hypot(a, b);
      const double K = ct * (1.0 - pts[i].dot(pts[j])) / st;
      if (K > R) {
        cur.clear();
        break;
      }
      if (K <= -R) continue;
      const double half = std::acos(K / R);
      double s = std::atan2(b, a) - half;
      s = std::fmod(s, kTwoPi);
      if (s < 0.0) s += kTwoPi;
      cur = intersect(cur, s, 2.0 * half);
    }
    // Merge an interval wrapping through 0.
    if (cur.size() >= 2 && cur.front().lo == 0.0 && cur.back().hi == kTwoPi) {
      cur.front().lo = cur.back().lo - kTwoPi;
      cur.pop_back();
    }
    for (const auto& iv : cur) {
      if (iv.hi - iv.lo < 1e-9) continue;
      const double mid = 0.5 * (iv.lo + iv.hi);
      const Vec3 x = ct * pts[i] + st * (std::cos(mid) * e1 + std::sin(mid) * e2);
      pieces.push_back({i, iv.lo, iv.hi, std::atan2(x.dot(f2), x.dot(f1))});
    }
  }
  if (pieces.size() < 2) {
    if (pieces.size() == 1 && pieces[0].hi - pieces[0].lo >= kTwoPi - 1e-12) {
      return SphericalBody::cap(UnitVec3::normalized(pts[pieces[0].circle]), tau);
    }
    throw Error(Errc::Degenerate, "ball hull boundary is degenerate");
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.order < b.order; });

  auto endpoint = [&](const Piece& pc, double phi) {
    const auto [e1, e2] = tangent_frame(pts[pc.circle]);
    return Vec3(ct * pts[pc.circle] + st * (std::cos(phi) * e1 + std::sin(phi) * e2));
  };
  // Recompute junctions exactly; pieces whose exact span collapses are dropped.
  for (int pass = 0; pass < 64; ++pass) {
    const std::size_t np = pieces.size();
    if (np < 2) throw Error(Errc::Degenerate, "ball hull boundary is degenerate");
    std::vector<Vec3> junction(np);
    for (std::size_t k = 0; k < np; ++k) {
      const Piece& a = pieces[k];
      const Piece& b = pieces[(k + 1) % np];
      const Vec3 hint = (endpoint(a, a.hi) + endpoint(b, b.lo)).normalized();
      junction[k] = circle_meet(pts[a.circle], pts[b.circle], tau, hint);
    }
    std::vector<char> keep(np, 1);
    bool dropped = false;
    for (std::size_t k = 0; k < np; ++k) {
      const Vec3& from = junction[(k + np - 1) % np];
      const Vec3& to = junction[k];
      const double nominal = pieces[k].hi - pieces[k].lo;
      const double exact = ccw_sweep(pts[pieces[k].circle], from, to);
      if (exact < 1e-12 || exact > nominal + 1e-6) {
        keep[k] = 0;
        dropped = true;
      }
    }
    if (!dropped) {
      std::vector<ArcSpec> arcs;
      for (std::size_t k = 0; k < np; ++k) arcs.push_back({pts[pieces[k].circle], tau, junction[(k + np - 1) % np], junction[k]});
      return SphericalBody::from_arcs(arcs, w);
    }
    std::vector<Piece> next;
    for (std::size_t k = 0; k < np; ++k)
      if (keep[k]) next.push_back(pieces[k]);
    pieces.swap(next);
  }
  throw Error(Errc::SolverFailure, "ball hull junction repair did not settle");
}

Census feature_census(const SphericalBody& c, double arc_radius, double tol) {
  Census out;
  for (const auto& f : c.features()) {
    if (std::abs(f.rho - arc_radius) <= tol) {
      ++out.arcs;
    } else if (f.rho >= kHalfPi - tol) {
      ++out.segments;
    } else if (f.kind() == FeatureKind::Vertex) {
      ++out.vertices;
    } else {
      ++out.other;
    }
  }
  return out;
}

namespace {

int width_samples(const SphericalBody& b) { return std::max(kWidthSamples, 2 * static_cast<int>(b.size())); }

ConstantWidth require_constant_width(const SphericalBody& c, const ApproxOptions& opt) {
  ConstantWidth cw = is_constant_width(c, opt.input_width_tol);
  if (!cw.constant) throw Error(Errc::InvalidBody, "input body is not of constant width");
  cw.tau = 0.5 * (cw.report.min + cw.report.max);
  return cw;
}

}  // namespace

ApproxResult approximate_cw_small(const SphericalBody& c, const ApproxOptions& opt) {
  if (!(opt.eps > 0.0) || !(opt.tol_w > 0.0)) throw Error(Errc::InvalidArgument, "eps and tol_w must be positive");
  const ConstantWidth cw = require_constant_width(c, opt);
  if (!(cw.tau < kHalfPi)) throw Error(Errc::InvalidBody, "approximation needs constant width below pi/2");
  PipelineReport rep;
  rep.tau = cw.tau;
  rep.eps = opt.eps;
  for (int m = opt.m_start;; m *= 2) {
    std::vector<Vec3> pts;
    for (const auto& s : c.boundary_samples(m)) pts.push_back(s.point);
    SphericalBody hull = ball_hull(pts, cw.tau);
    const WidthReport wr = thickness(hull, width_samples(hull));
    rep.samples = m;
    rep.achieved = hausdorff_sph(c, hull, opt.hausdorff_samples).value;
    rep.width_deviation = wr.max - wr.min;
    rep.output_width = 0.5 * (wr.max + wr.min);
    rep.census = feature_census(hull, cw.tau);
    rep.tolerance_met = rep.achieved <= opt.eps && rep.width_deviation <= opt.tol_w;
    rep.census_ok = rep.census.other == 0;
    rep.success = rep.tolerance_met && rep.census_ok;
    if (rep.tolerance_met || 2 * m > opt.m_cap) {
      if (!rep.tolerance_met && opt.strict) {
        throw Error(Errc::ToleranceNotMet, "sample cap reached before meeting eps and tol_w");
      }
      return {std::move(hull), rep};
    }
  }
}

ApproxResult theorem2_pipeline(const SphericalBody& c, const ApproxOptions& opt) {
  const ConstantWidth cw = require_constant_width(c, opt);
  if (std::abs(cw.tau - kHalfPi) <= 1e-9) {
    throw Error(Errc::InvalidBody, "width pi/2 bodies are outside the approximation scheme");
  }
  if (!(cw.tau > kHalfPi)) throw Error(Errc::InvalidBody, "pipeline needs constant width above pi/2");
  const SphericalBody d = polar_dual(c);
  const ConstantWidth cwd = require_constant_width(d, opt);
  if (std::abs(cwd.tau - (kPi - cw.tau)) > opt.input_width_tol) {
    throw Error(Errc::SolverFailure, "polar body width does not match pi - tau");
  }
  ApproxOptions sub = opt;
  sub.strict = false;
  for (;;) {
    ApproxResult small = approximate_cw_small(d, sub);
    SphericalBody out = polar_dual(small.body);
    PipelineReport rep;
    rep.tau = cw.tau;
    rep.eps = opt.eps;
    rep.samples = small.report.samples;
    rep.dual_achieved = small.report.achieved;
    rep.achieved = hausdorff_sph(c, out, opt.hausdorff_samples).value;
    const WidthReport wr = thickness(out, width_samples(out));
    rep.width_deviation = wr.max - wr.min;
    rep.output_width = 0.5 * (wr.max + wr.min);
    rep.census = feature_census(out, cw.tau - kHalfPi);
    rep.census_ok = rep.census.other == 0;
    rep.tolerance_met = rep.achieved <= opt.eps && rep.width_deviation <= opt.tol_w;
    rep.success = rep.tolerance_met && rep.census_ok;
    const bool exhausted = 2 * small.report.samples > opt.m_cap;
    if (rep.tolerance_met || exhausted) {
      if (!rep.tolerance_met && opt.strict) {
        throw Error(Errc::ToleranceNotMet, "sample cap reached before meeting eps and tol_w");
      }
      return {std::move(out), rep};
    }
    sub.m_start = 2 * small.report.samples;
  }
}

}  // namespace wulff
