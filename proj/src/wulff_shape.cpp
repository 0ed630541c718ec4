#include "wulff/wulff_shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wulff/hull3.hpp"
#include "wulff/icosphere.hpp"
#include "wulff/planar.hpp"

namespace wulff {

Vec3 SectionPlane::direction() const {
  const auto [e1, e2] = tangent_frame(apex.vec());
  return std::cos(rotation) * e1 + std::sin(rotation) * e2;
}

Eigen::VectorXd invert_point(const Eigen::VectorXd& x) {
  const double r2 = x.squaredNorm();
  if (!(r2 > 0.0)) throw Error(Errc::InvalidArgument, "inversion of the zero vector");
  return -x / r2;
}

Eigen::VectorXd alpha_n(const Eigen::VectorXd& p) {
  const double last = p[p.size() - 1];
  if (!(last > 0.0)) throw Error(Errc::InvalidArgument, "central projection needs N . p > 0");
  return p / last;
}

Eigen::VectorXd alpha_n_inv(const Eigen::VectorXd& y) {
  if (std::abs(y[y.size() - 1] - 1.0) > 1e-12) {
    throw Error(Errc::InvalidArgument, "alpha_N^-1 expects a point of the plane x_{n+2} = 1");
  }
  return y.normalized();
}

Eigen::VectorXd psi_n(const Eigen::VectorXd& p) {
  const double np = p[p.size() - 1];
  const double s2 = 1.0 - np * np;
  if (!(s2 > 1e-24)) throw Error(Errc::InvalidArgument, "spherical blow-up undefined at the poles");
  Eigen::VectorXd out = -np * p;
  out[out.size() - 1] += 1.0;
  return out / std::sqrt(s2);
}

double inversion_identity_residual(const Eigen::VectorXd& x) {
  if (!(x.squaredNorm() > 0.0)) throw Error(Errc::InvalidArgument, "inversion of the zero vector");
  Eigen::VectorXd lifted(x.size() + 1);
  lifted << x, 1.0;
  const Eigen::VectorXd y = alpha_n(psi_n(alpha_n_inv(lifted)));
  return (y.head(x.size()) - invert_point(x)).norm();
}

WulffPolygon wulff_from_directions(const ConvexIntegrand& g, std::span<const Vec2> directions) {
  if (g.dim() != 1) throw Error(Errc::InvalidArgument, "planar Wulff shapes need an n = 1 integrand");
  std::vector<HalfPlane> planes;
  planes.reserve(directions.size());
  for (const auto& d : directions) {
    const Vec2 u = d.normalized();
    planes.push_back({u, g(u)});
  }
  WulffPolygon w;
  w.vertices = intersect_halfplanes(planes);
  w.directions.assign(directions.begin(), directions.end());
  return w;
}

WulffPolygon build_wulff(const ConvexIntegrand& g, int n_dirs) {
  if (n_dirs < 8) throw Error(Errc::InvalidArgument, "Wulff construction needs at least 8 directions");
  const auto dirs = circle_grid(n_dirs);
  return wulff_from_directions(g, dirs);
}

DualWulff build_dual_wulff(const ConvexIntegrand& g, int n_dirs) {
  if (g.dim() != 1) throw Error(Errc::InvalidArgument, "planar dual Wulff shapes need an n = 1 integrand");
  if (n_dirs < 8) throw Error(Errc::InvalidArgument, "dual Wulff construction needs at least 8 directions");
  DualWulff d;
  for (const auto& t : circle_grid(n_dirs)) d.inverted_points.push_back(-t / g(t));
  d.vertices = convex_hull_2d(d.inverted_points, 1e-14);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : d.inverted_points) worst = std::max(worst, depth_in_polygon(p, d.vertices));
  d.boundary_residual = std::max(worst, 0.0);
  return d;
}

double normal_cone_width(const WulffPolygon& w, const Vec2& v) {
  const auto& P = w.vertices;
  double scale = 0.0;
  for (const auto& p : P) scale = std::max(scale, p.norm());
  const double tol = 1e-9 * scale;
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((P[i] - v).norm() <= tol) {
      const Vec2 a = P[(i + n - 1) % n], b = P[(i + 1) % n];
      const Vec2 e_in = (P[i] - a).normalized(), e_out = (b - P[i]).normalized();
      // Exterior angle equals the angle between the adjacent outward normals.
      return std::atan2(cross2(e_in, e_out), e_in.dot(e_out));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = P[i], e = P[(i + 1) % n] - a;
    const double t = (v - a).dot(e) / e.squaredNorm();
    if (t > 0.0 && t < 1.0 && std::abs(cross2(e.normalized(), v - a)) <= tol) return 0.0;
  }
  throw Error(Errc::NotOnBoundary, "normal_cone_width: point is not on the polygon boundary");
}

namespace {

double planar_cone_width_along(const ConvexIntegrand& g1, const Vec2& dir, int grid) {
  const WulffPolygon w = build_wulff(g1, grid);
  const Vec2 b = ray_exit_point(dir, w.vertices);
  return normal_cone_width(w, b);
}

}  // namespace

ApexReport detect_apex_report(const ConvexIntegrand& g, const Eigen::VectorXd& p, int sections, double tol,
                              int grid) {
  ApexReport r;
  r.threshold = std::max(tol, 3.0 * 2.0 * kPi / grid);
  if (g.dim() == 1) {
    if (p.size() != 2) throw Error(Errc::InvalidArgument, "apex direction must be planar for n = 1");
    const double width = planar_cone_width_along(g, Vec2(p).normalized(), grid);
    r.cone_widths = {width};
    r.sections = 1;
  } else {
    if (p.size() != 3) throw Error(Errc::InvalidArgument, "apex direction must be spatial for n = 2");
    if (sections < 8) throw Error(Errc::InvalidArgument, "apex detection needs at least 8 sections");
    const UnitVec3 pu = UnitVec3::normalized(Vec3(p));
    r.sections = sections;
    for (int k = 0; k < sections; ++k) {
      const SectionPlane plane{pu, kPi * k / sections};
      const ConvexIntegrand sec = ConvexIntegrand::section(g, pu, plane.direction());
      r.cone_widths.push_back(planar_cone_width_along(sec, Vec2(1.0, 0.0), grid));
    }
  }
  r.min_cone_width = *std::min_element(r.cone_widths.begin(), r.cone_widths.end());
  r.apex = r.min_cone_width > r.threshold;
  return r;
}

bool detect_apex(const ConvexIntegrand& g, const Eigen::VectorXd& p, int sections, double tol, int grid) {
  return detect_apex_report(g, p, sections, tol, grid).apex;
}

namespace {

// Relative deviation treated as exact equality up to rounding.
constexpr double kExactRel = 1e-12;

std::vector<Eigen::VectorXd> ring(const Eigen::VectorXd& p, double phi) {
  std::vector<Eigen::VectorXd> out;
  if (p.size() == 2) {
    const Eigen::VectorXd w = (Eigen::VectorXd(2) << -p[1], p[0]).finished();
    out.emplace_back(std::cos(phi) * p + std::sin(phi) * w);
    out.emplace_back(std::cos(phi) * p - std::sin(phi) * w);
    return out;
  }
  const auto [e1, e2] = tangent_frame(Vec3(p));
  constexpr int kAz = 64;
  for (int k = 0; k < kAz; ++k) {
    const double psi = 2.0 * kPi * k / kAz;
    out.emplace_back(Eigen::VectorXd(std::cos(phi) * Vec3(p) + std::sin(phi) * (std::cos(psi) * e1 + std::sin(psi) * e2)));
  }
  return out;
}

// Largest radius up to `search` whose rings all keep residual <= tol.
template <class F>
double certified_radius(const Eigen::VectorXd& p, double search, double tol, F&& residual) {
  auto ring_res = [&](double phi) {
    double worst = 0.0;
    for (const auto& q : ring(p, phi)) worst = std::max(worst, residual(q));
    return worst;
  };
  if (residual(p) > tol) return 0.0;
  constexpr int kSteps = 256;
  const double h = search / kSteps;
  for (int j = 1; j <= kSteps; ++j) {
    if (ring_res(j * h) > tol) {
      double lo = (j - 1) * h, hi = j * h;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ring_res(mid) > tol ? hi : lo) = mid;
      }
      return lo;
    }
  }
  return search;
}

template <class F>
double max_on_cap(const Eigen::VectorXd& p, double delta, F&& residual) {
  double worst = residual(p);
  constexpr int kRings = 32;
  for (int j = 1; j <= kRings; ++j)
    for (const auto& q : ring(p, delta * j / kRings)) worst = std::max(worst, residual(q));
  return worst;
}

// Max distance of the points from their total-least-squares hyperplane.
struct PlaneFit {
  Eigen::VectorXd normal;
  double offset;
  double residual;
};

PlaneFit tls_fit(const std::vector<Eigen::VectorXd>& pts) {
  const int d = static_cast<int>(pts.front().size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::VectorXd n = es.eigenvectors().col(0);
  if (n.dot(c) < 0.0) n = -n;
  PlaneFit f{n, n.dot(c), 0.0};
  for (const auto& p : pts) f.residual = std::max(f.residual, std::abs(n.dot(p) - f.offset));
  return f;
}

}  // namespace

Theorem1Report theorem1_report(const ConvexIntegrand& g, const Eigen::VectorXd& p_in, const Theorem1Options& opt) {
  if (p_in.size() != g.dim() + 1) throw Error(Errc::InvalidArgument, "direction dimension mismatch");
  const Eigen::VectorXd p = p_in.normalized();
  const double gp = eval_dyn(g, p);
  Theorem1Report r;
  r.resolution = std::min(opt.search_delta, 3.0 * 2.0 * kPi / opt.grid);

  // Cap law: gamma(Q) = gamma(P) P.Q on a cap around P.
  auto cap_res = [&](const Eigen::VectorXd& q) { return std::abs(eval_dyn(g, q) - gp * p.dot(q)); };
  const double tol1 = opt.tol * gp;
  // The decision uses tol; the reported cap is where the law holds to rounding,
  // so that identities derived from it are exact on the whole cap.
  r.cap_law = certified_radius(p, opt.search_delta, tol1, cap_res) >= r.resolution;
  r.cap_delta = certified_radius(p, opt.search_delta, kExactRel * gp, cap_res);
  r.cap_residual = max_on_cap(p, std::max(r.cap_delta, r.resolution), cap_res);

  // Local maximum on the same cap, and an apex where R_+ P meets dW.
  r.local_max_delta = r.cap_law ? std::max(r.cap_delta, r.resolution) : r.resolution;
  const double local_excess = max_on_cap(p, r.local_max_delta, [&](const Eigen::VectorXd& q) {
    return std::max(0.0, eval_dyn(g, q) - gp);
  });
  r.local_max = local_excess <= tol1;
  r.apex_detail = detect_apex_report(g, p, opt.sections, opt.apex_tol, opt.grid);
  r.apex = r.apex_detail.apex;

  // Flat dual: the inverted graph over the cap lies on {y : y.(-P) = 1/gamma(P)}.
  auto flat_res = [&](const Eigen::VectorXd& q) { return std::abs(p.dot(q) / eval_dyn(g, q) - 1.0 / gp); };
  const double tol3 = opt.tol / gp;
  r.flat_delta = certified_radius(p, opt.search_delta, tol3, flat_res);
  r.dual_flat = r.flat_delta >= r.resolution;
  const double flat_cap = std::max(r.flat_delta, r.resolution);
  r.flatness_residual = max_on_cap(p, flat_cap, flat_res);
  std::vector<Eigen::VectorXd> inv_pts;
  for (const auto& q : cap_samples(p, flat_cap, 16, 16)) inv_pts.push_back(-q / eval_dyn(g, q));
  r.tls_residual = tls_fit(inv_pts).residual;

  const bool cond2 = r.local_max && r.apex;
  r.agree = (r.cap_law == cond2) && (r.cap_law == r.dual_flat);
  return r;
}

namespace {

FlatDiskResult flat_disk_planar(const ConvexIntegrand& g, int grid, double tol) {
  FlatDiskResult out;
  std::vector<Vec2> pts;
  for (const auto& t : circle_grid(grid)) pts.push_back(-t / g(t));
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  const double abs_tol = tol * scale;
  const int n = static_cast<int>(pts.size());
  std::vector<char> straight(n, 0);
  for (int i = 0; i < n; ++i) {
    const Vec2& a = pts[(i + n - 1) % n];
    const Vec2& b = pts[(i + 1) % n];
    const Vec2 e = (b - a).normalized();
    straight[i] = std::abs(cross2(e, pts[i] - a)) <= abs_tol;
  }
  if (std::all_of(straight.begin(), straight.end(), [](char s) { return s; })) return out;
  // Start the cyclic scan just after a non-straight point.
  int start = 0;
  while (straight[start]) ++start;
  for (int k = 1; k <= n; ++k) {
    const int i = (start + k) % n;
    if (!straight[i]) continue;
    int len = 0;
    while (straight[(i + len) % n] && len < n) ++len;
    std::vector<Eigen::VectorXd> run;
    for (int j = -1; j <= len; ++j) run.emplace_back(pts[((i + j) % n + n) % n]);
    k += len - 1;
    PlaneFit fit = tls_fit(run);
    if (fit.residual > abs_tol || fit.offset <= 0.0) continue;
    const Eigen::VectorXd foot = fit.offset * fit.normal;
    const Eigen::VectorXd dir = (run.back() - run.front()).normalized();
    const double t0 = (run.front() - foot).dot(dir), t1 = (run.back() - foot).dot(dir);
    if (t0 < -abs_tol && t1 > abs_tol) {
      out.patches.push_back({foot, fit.normal, fit.residual, static_cast<int>(run.size())});
    }
  }
  out.found = !out.patches.empty();
  return out;
}

FlatDiskResult flat_disk_spatial(const ConvexIntegrand& g, int grid, double tol) {
  FlatDiskResult out;
  std::vector<Vec3> pts;
  for (const auto& t : icosphere_with_at_least(grid).nodes) pts.push_back(-t / g(t));
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  const double abs_tol = tol * scale;
  const Hull3 hull = convex_hull_3d(pts);
  const int nf = static_cast<int>(hull.faces.size());

  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::pair<int, int>, int> edge_face;
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) edge_face[{hull.faces[f][k], hull.faces[f][(k + 1) % 3]}] = f;
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      auto it = edge_face.find({hull.faces[f][(k + 1) % 3], hull.faces[f][k]});
      if (it == edge_face.end()) continue;
      const int h = it->second;
      const bool coplanar = std::abs(hull.offsets[f] - hull.offsets[h]) <= abs_tol &&
                            (hull.normals[f] - hull.normals[h]).norm() * scale <= abs_tol * 10.0;
      if (coplanar) parent[find(f)] = find(h);
    }
  }
  std::map<int, std::vector<int>> clusters;
  for (int f = 0; f < nf; ++f) clusters[find(f)].push_back(f);
  for (const auto& [root, faces] : clusters) {
    std::vector<int> verts;
    for (int f : faces)
      for (int v : hull.faces[f]) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<Eigen::VectorXd> vp;
    for (int v : verts) vp.emplace_back(pts[v]);
    PlaneFit fit = tls_fit(vp);
    if (fit.residual > abs_tol || fit.offset <= 0.0) continue;
    std::vector<Eigen::VectorXd> members;
    for (const auto& p : pts)
      if (std::abs(fit.normal.dot(Eigen::VectorXd(p)) - fit.offset) <= abs_tol) members.emplace_back(p);
    if (members.size() < 4) continue;
    const Vec3 foot = Vec3(fit.offset * fit.normal);
    bool inside = false;
    for (int f : faces) {
      const Vec3 &a = pts[hull.faces[f][0]], &b = pts[hull.faces[f][1]], &c = pts[hull.faces[f][2]];
      const Vec3 n = (b - a).cross(c - a);
      const double s0 = (b - a).cross(foot - a).dot(n), s1 = (c - b).cross(foot - b).dot(n),
                   s2 = (a - c).cross(foot - c).dot(n);
      if (s0 >= 0 && s1 >= 0 && s2 >= 0) inside = true;
    }
    if (inside) out.patches.push_back({Eigen::VectorXd(foot), fit.normal, fit.residual, static_cast<int>(members.size())});
  }
  out.found = !out.patches.empty();
  return out;
}

}  // namespace

FlatDiskResult corollary_flat_disk(const ConvexIntegrand& g, int grid, double tol) {
  if (grid < 16) throw Error(Errc::InvalidArgument, "grid must be at least 16");
  return g.dim() == 1 ? flat_disk_planar(g, grid, tol) : flat_disk_spatial(g, grid, tol);
}

}  // namespace wulff
