#include "wulff/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wulff/hull3.hpp"
#include "wulff/icosphere.hpp"
#include "wulff/planar.hpp"

namespace wulff {

struct ConvexIntegrand::Impl {
  virtual ~Impl() = default;
  virtual int dim() const = 0;
  virtual IntegrandKind kind() const = 0;
  virtual double eval2(const Vec2&) const {
    throw Error(Errc::InvalidArgument, "integrand evaluated on S^1 but defined on S^2");
  }
  virtual double eval3(const Vec3&) const {
    throw Error(Errc::InvalidArgument, "integrand evaluated on S^2 but defined on S^1");
  }
};

namespace {

using Impl = ConvexIntegrand::Impl;

struct ConstantImpl final : Impl {
  int n;
  double value;
  ConstantImpl(int n_, double v) : n(n_), value(v) {}
  int dim() const override { return n; }
  IntegrandKind kind() const override { return IntegrandKind::Constant; }
  double eval2(const Vec2&) const override { return value; }
  double eval3(const Vec3&) const override { return value; }
};

struct PolygonImpl final : Impl {
  std::vector<Vec2> verts;
  int dim() const override { return 1; }
  IntegrandKind kind() const override { return IntegrandKind::Support; }
  double eval2(const Vec2& t) const override {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : verts) h = std::max(h, v.dot(t));
    return h;
  }
};

struct PolytopeImpl final : Impl {
  std::vector<Vec3> verts;
  int dim() const override { return 2; }
  IntegrandKind kind() const override { return IntegrandKind::Support; }
  double eval3(const Vec3& t) const override {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : verts) h = std::max(h, v.dot(t));
    return h;
  }
};

struct EllipsoidImpl final : Impl {
  Eigen::MatrixXd shape;
  int dim() const override { return static_cast<int>(shape.rows()) - 1; }
  IntegrandKind kind() const override { return IntegrandKind::Support; }
  double eval2(const Vec2& t) const override {
    if (shape.rows() != 2) return Impl::eval2(t);
    return (shape.transpose() * t).norm();
  }
  double eval3(const Vec3& t) const override {
    if (shape.rows() != 3) return Impl::eval3(t);
    return (shape.transpose() * t).norm();
  }
};

struct PatchedImpl final : Impl {
  ConvexIntegrand base;
  Eigen::VectorXd p;
  double c;
  PatchedImpl(ConvexIntegrand b, Eigen::VectorXd p_, double c_) : base(std::move(b)), p(std::move(p_)), c(c_) {}
  int dim() const override { return base.dim(); }
  IntegrandKind kind() const override { return IntegrandKind::Patched; }
  double eval2(const Vec2& t) const override {
    return std::max(base(t), std::max(0.0, c * p.dot(t)));
  }
  double eval3(const Vec3& t) const override {
    return std::max(base(t), std::max(0.0, c * p.dot(t)));
  }
};

struct CircleTableImpl final : Impl {
  std::vector<double> values;
  int dim() const override { return 1; }
  IntegrandKind kind() const override { return IntegrandKind::Table; }
  double eval2(const Vec2& t) const override {
    const int m = static_cast<int>(values.size());
    double a = std::atan2(t.y(), t.x());
    if (a < 0.0) a += 2.0 * kPi;
    const double x = a / (2.0 * kPi) * m;
    const int k = std::min(static_cast<int>(std::floor(x)), m - 1);
    const double f = x - k;
    return (1.0 - f) * values[k] + f * values[(k + 1) % m];
  }
};

struct IcoTableImpl final : Impl {
  Icosphere grid;
  std::vector<double> values;
  std::vector<Eigen::Matrix3d> inverse;  // per face, inverse of [a b c]
  int dim() const override { return 2; }
  IntegrandKind kind() const override { return IntegrandKind::Table; }
  double eval3(const Vec3& t) const override {
    int best = -1;
    double best_min = -std::numeric_limits<double>::infinity();
    Vec3 best_w;
    for (std::size_t f = 0; f < grid.faces.size(); ++f) {
      const Vec3 w = inverse[f] * t;
      const double mn = w.minCoeff();
      if (mn > best_min) {
        best_min = mn;
        best = static_cast<int>(f);
        best_w = w;
        if (mn >= 0.0) break;
      }
    }
    const auto& face = grid.faces[best];
    const Vec3 w = best_w.cwiseMax(0.0);
    return (w[0] * values[face[0]] + w[1] * values[face[1]] + w[2] * values[face[2]]) / w.sum();
  }
};

struct SectionImpl final : Impl {
  ConvexIntegrand base;
  Vec3 p, e;
  SectionImpl(ConvexIntegrand b, Vec3 p_, Vec3 e_) : base(std::move(b)), p(p_), e(e_) {}
  int dim() const override { return 1; }
  IntegrandKind kind() const override { return IntegrandKind::Section; }
  double eval2(const Vec2& t) const override { return base(Vec3(t.x() * p + t.y() * e)); }
};

void require_positive_on_grid(const ConvexIntegrand& g) {
  for (const auto& d : direction_grid(g.dim(), g.dim() == 1 ? 720 : 2562)) {
    if (!(eval_dyn(g, d) > 0.0)) {
      throw Error(Errc::InvalidIntegrand, "integrand is not positive: origin not interior to the body");
    }
  }
}

void check_lipschitz(const std::vector<double>& values, const std::vector<std::pair<int, int>>& edges,
                     const std::vector<double>& spacing, double lipschitz) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(Errc::InvalidIntegrand, "table values must be positive");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [a, b] = edges[i];
    if (std::abs(values[a] - values[b]) > lipschitz * spacing[i] * (1.0 + 1e-9) + 1e-12) {
      throw Error(Errc::InvalidIntegrand, "table violates the declared Lipschitz bound");
    }
  }
}

}  // namespace

ConvexIntegrand ConvexIntegrand::constant(int n, double value) {
  if (n != 1 && n != 2) throw Error(Errc::InvalidArgument, "integrand dimension must be 1 or 2");
  if (!(value > 0.0)) throw Error(Errc::InvalidIntegrand, "constant integrand must be positive");
  return ConvexIntegrand(std::make_shared<ConstantImpl>(n, value));
}

ConvexIntegrand ConvexIntegrand::support_polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw Error(Errc::InvalidIntegrand, "polygon needs at least three vertices");
  auto impl = std::make_shared<PolygonImpl>();
  impl->verts = std::move(vertices);
  ConvexIntegrand g(impl);
  require_positive_on_grid(g);
  return g;
}

ConvexIntegrand ConvexIntegrand::support_polytope(std::vector<Vec3> vertices) {
  if (vertices.size() < 4) throw Error(Errc::InvalidIntegrand, "polytope needs at least four vertices");
  auto impl = std::make_shared<PolytopeImpl>();
  impl->verts = std::move(vertices);
  ConvexIntegrand g(impl);
  require_positive_on_grid(g);
  return g;
}

ConvexIntegrand ConvexIntegrand::support_ellipsoid(const Eigen::MatrixXd& shape) {
  if (shape.rows() != shape.cols() || (shape.rows() != 2 && shape.rows() != 3)) {
    throw Error(Errc::InvalidArgument, "ellipsoid shape must be 2x2 or 3x3");
  }
  if (std::abs(shape.determinant()) < 1e-12) throw Error(Errc::InvalidIntegrand, "ellipsoid shape is singular");
  auto impl = std::make_shared<EllipsoidImpl>();
  impl->shape = shape;
  return ConvexIntegrand(impl);
}

ConvexIntegrand ConvexIntegrand::table_circle(std::vector<double> values, double lipschitz) {
  if (values.size() < 3) throw Error(Errc::InvalidIntegrand, "table grid is empty");
  const int m = static_cast<int>(values.size());
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < m; ++k) edges.emplace_back(k, (k + 1) % m);
  check_lipschitz(values, edges, std::vector<double>(m, 2.0 * kPi / m), lipschitz);
  auto impl = std::make_shared<CircleTableImpl>();
  impl->values = std::move(values);
  return ConvexIntegrand(impl);
}

ConvexIntegrand ConvexIntegrand::table_icosphere(int level, std::vector<double> values, double lipschitz) {
  auto impl = std::make_shared<IcoTableImpl>();
  impl->grid = make_icosphere(level);
  if (values.size() != impl->grid.nodes.size()) {
    throw Error(Errc::InvalidIntegrand, "table size does not match icosphere node count");
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<double> spacing;
  for (const auto& e : impl->grid.edges) {
    edges.emplace_back(e[0], e[1]);
    spacing.push_back(angle_between(impl->grid.nodes[e[0]], impl->grid.nodes[e[1]]));
  }
  check_lipschitz(values, edges, spacing, lipschitz);
  for (const auto& f : impl->grid.faces) {
    Eigen::Matrix3d m;
    m << impl->grid.nodes[f[0]], impl->grid.nodes[f[1]], impl->grid.nodes[f[2]];
    impl->inverse.push_back(m.inverse());
  }
  impl->values = std::move(values);
  return ConvexIntegrand(impl);
}

ConvexIntegrand ConvexIntegrand::section(const ConvexIntegrand& base, const UnitVec3& p, const Vec3& e) {
  if (base.dim() != 2) throw Error(Errc::InvalidArgument, "sections are taken of n = 2 integrands");
  if (std::abs(e.norm() - 1.0) > kNormBand || std::abs(e.dot(p.vec())) > 1e-9) {
    throw Error(Errc::InvalidArgument, "section direction must be a unit vector orthogonal to P");
  }
  return ConvexIntegrand(std::make_shared<SectionImpl>(base, p.vec(), e.normalized()));
}

int ConvexIntegrand::dim() const { return impl_->dim(); }
IntegrandKind ConvexIntegrand::kind() const { return impl_->kind(); }
double ConvexIntegrand::operator()(const Vec2& t) const {
  if (dim() != 1) throw Error(Errc::InvalidArgument, "planar direction passed to a spatial integrand");
  return impl_->eval2(t);
}
double ConvexIntegrand::operator()(const Vec3& t) const {
  if (dim() != 2) throw Error(Errc::InvalidArgument, "spatial direction passed to a planar integrand");
  return impl_->eval3(t);
}

const ConvexIntegrand& ConvexIntegrand::patch_base() const {
  auto p = dynamic_cast<const PatchedImpl*>(impl_.get());
  if (!p) throw Error(Errc::InvalidArgument, "integrand is not apex-patched");
  return p->base;
}
const Eigen::VectorXd& ConvexIntegrand::patch_direction() const {
  auto p = dynamic_cast<const PatchedImpl*>(impl_.get());
  if (!p) throw Error(Errc::InvalidArgument, "integrand is not apex-patched");
  return p->p;
}
double ConvexIntegrand::patch_height() const {
  auto p = dynamic_cast<const PatchedImpl*>(impl_.get());
  if (!p) throw Error(Errc::InvalidArgument, "integrand is not apex-patched");
  return p->c;
}

double eval_dyn(const ConvexIntegrand& g, const Eigen::VectorXd& theta) {
  if (theta.size() == 2) return g(Vec2(theta));
  if (theta.size() == 3) return g(Vec3(theta));
  throw Error(Errc::InvalidArgument, "direction must have 2 or 3 components");
}

InvGraphPoint<2> inv_graph_point(const ConvexIntegrand& g, const UnitVec2& theta) {
  return {-theta, 1.0 / g(theta.vec())};
}

InvGraphPoint<3> inv_graph_point(const ConvexIntegrand& g, const UnitVec3& theta) {
  return {-theta, 1.0 / g(theta.vec())};
}

std::vector<Eigen::VectorXd> direction_grid(int n, int grid_size) {
  std::vector<Eigen::VectorXd> out;
  if (n == 1) {
    for (const auto& d : circle_grid(grid_size)) out.emplace_back(d);
  } else if (n == 2) {
    for (const auto& d : icosphere_with_at_least(grid_size).nodes) out.emplace_back(d);
  } else {
    throw Error(Errc::InvalidArgument, "integrand dimension must be 1 or 2");
  }
  return out;
}

ConvexityCheck check_convex_integrand(const ConvexIntegrand& g, int grid_size, double tol) {
  if (grid_size < 16) throw Error(Errc::InvalidArgument, "grid_size must be at least 16");
  const auto dirs = direction_grid(g.dim(), grid_size);
  ConvexityCheck out;
  out.grid_points = static_cast<int>(dirs.size());
  std::vector<double> depth(dirs.size());
  double scale = 0.0;
  if (g.dim() == 1) {
    std::vector<Vec2> pts;
    for (const auto& d : dirs) pts.push_back(-Vec2(d) / g(Vec2(d)));
    for (const auto& p : pts) scale = std::max(scale, p.norm());
    const auto hull = convex_hull_2d(pts, 1e-14);
    for (std::size_t i = 0; i < pts.size(); ++i) depth[i] = depth_in_polygon(pts[i], hull);
  } else {
    std::vector<Vec3> pts;
    for (const auto& d : dirs) pts.push_back(-Vec3(d) / g(Vec3(d)));
    for (const auto& p : pts) scale = std::max(scale, p.norm());
    const auto hull = convex_hull_3d(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) depth[i] = hull_depth(hull, pts[i]);
  }
  out.max_depth = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const double rel = depth[i] / scale;
    if (rel > out.max_depth) {
      out.max_depth = rel;
      out.worst_index = static_cast<int>(i);
    }
  }
  out.convex = out.max_depth <= tol;
  return out;
}

bool is_convex_integrand(const ConvexIntegrand& g, int grid_size, double tol) {
  return check_convex_integrand(g, grid_size, tol).convex;
}

ConvexIntegrand patch_apex(const ConvexIntegrand& base, const Eigen::VectorXd& p, double c) {
  if (p.size() != base.dim() + 1) throw Error(Errc::InvalidArgument, "apex direction has wrong dimension");
  if (std::abs(p.norm() - 1.0) > kNormBand) throw Error(Errc::InvalidArgument, "apex direction must be a unit vector");
  const Eigen::VectorXd pu = p.normalized();
  if (!(c > eval_dyn(base, pu))) {
    throw Error(Errc::InvalidArgument, "apex height must exceed base(P); no apex would be created");
  }
  return ConvexIntegrand(std::make_shared<PatchedImpl>(base, pu, c));
}

namespace {

// First angle along the geodesic P -> direction w where c cos(phi) < base.
double first_crossing(const ConvexIntegrand& base, const Eigen::VectorXd& p, const Eigen::VectorXd& w, double c) {
  auto f = [&](double phi) {
    const Eigen::VectorXd q = std::cos(phi) * p + std::sin(phi) * w;
    return c * std::cos(phi) - eval_dyn(base, q);
  };
  constexpr int kSteps = 2048;
  const double h = kHalfPi / kSteps;
  double lo = 0.0;
  for (int j = 1; j <= kSteps; ++j) {
    double hi = j * h;
    if (f(hi) < 0.0) {
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? lo : hi) = mid;
      }
      return lo;
    }
    lo = hi;
  }
  return kHalfPi;
}

}  // namespace

double patch_cap_radius(const ConvexIntegrand& base, const Eigen::VectorXd& p, double c) {
  const Eigen::VectorXd pu = p.normalized();
  if (!(c > eval_dyn(base, pu))) throw Error(Errc::InvalidArgument, "apex height must exceed base(P)");
  if (base.dim() == 1) {
    const Eigen::VectorXd w = (Eigen::VectorXd(2) << -pu[1], pu[0]).finished();
    return std::min(first_crossing(base, pu, w, c), first_crossing(base, pu, -w, c));
  }
  const auto [e1, e2] = tangent_frame(Vec3(pu));
  auto radius_at = [&](double psi) {
    const Eigen::VectorXd w = Eigen::VectorXd(std::cos(psi) * e1 + std::sin(psi) * e2);
    return first_crossing(base, pu, w, c);
  };
  constexpr int kAz = 180;
  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kAz; ++k) {
    const double r = radius_at(2.0 * kPi * k / kAz);
    if (r < best_r) {
      best_r = r;
      best = k;
    }
  }
  // Golden-section refinement of the minimum inside the bracketing azimuths.
  double a = 2.0 * kPi * (best - 1) / kAz, b = 2.0 * kPi * (best + 1) / kAz;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = radius_at(x1), f2 = radius_at(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = radius_at(x1);
    } else {
      a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = radius_at(x2);
    }
  }
  return std::min({best_r, f1, f2});
}

std::vector<Eigen::VectorXd> cap_samples(const Eigen::VectorXd& p, double delta, int rings, int azimuths) {
  std::vector<Eigen::VectorXd> out{p};
  if (p.size() == 2) {
    const Eigen::VectorXd w = (Eigen::VectorXd(2) << -p[1], p[0]).finished();
    for (int j = 1; j <= rings; ++j) {
      const double phi = delta * j / rings;
      out.emplace_back(std::cos(phi) * p + std::sin(phi) * w);
      out.emplace_back(std::cos(phi) * p - std::sin(phi) * w);
    }
    return out;
  }
  const auto [e1, e2] = tangent_frame(Vec3(p));
  for (int j = 1; j <= rings; ++j) {
    const double phi = delta * j / rings;
    for (int k = 0; k < azimuths; ++k) {
      const double psi = 2.0 * kPi * k / azimuths;
      const Vec3 w = std::cos(psi) * e1 + std::sin(psi) * e2;
      out.emplace_back(Eigen::VectorXd(std::cos(phi) * Vec3(p) + std::sin(phi) * w));
    }
  }
  return out;
}

double sphere_patch_residual(const ConvexIntegrand& g, const Eigen::VectorXd& p, double delta, int grid) {
  if (!(delta > 0.0)) throw Error(Errc::InvalidArgument, "cap radius must be positive");
  const double gp = eval_dyn(g, p);
  const Eigen::VectorXd center = 0.5 * gp * p;
  double worst = 0.0;
  for (const auto& q : cap_samples(p, delta, grid, 2 * grid)) {
    const double r = (eval_dyn(g, q) * q - center).norm();
    worst = std::max(worst, std::abs(r - 0.5 * gp));
  }
  return worst;
}

}  // namespace wulff
