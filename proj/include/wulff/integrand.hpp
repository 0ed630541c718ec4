#pragma once

// Convex integrands gamma: S^n -> R_+ for n = 1 (planar) and n = 2 (spatial).

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wulff/sphere.hpp"

namespace wulff {

enum class IntegrandKind { Constant, Support, Patched, Table, Section };

class ConvexIntegrand {
 public:
  struct Impl;

  /// gamma == value on S^n.
  static ConvexIntegrand constant(int n, double value);
  /// Support function of a convex polygon (n = 1) containing the origin.
  static ConvexIntegrand support_polygon(std::vector<Vec2> vertices);
  /// Support function of a convex polytope (n = 2) containing the origin.
  static ConvexIntegrand support_polytope(std::vector<Vec3> vertices);
  /// Support function of the ellipse/ellipsoid {A u : |u| <= 1}; A is 2x2 or 3x3.
  static ConvexIntegrand support_ellipsoid(const Eigen::MatrixXd& shape);
  /// Tabulated on the uniform circle grid 2*pi*k/M, interpolated linearly in angle.
  static ConvexIntegrand table_circle(std::vector<double> values, double lipschitz);
  /// Tabulated on icosphere nodes, interpolated with gnomonic barycentric weights.
  static ConvexIntegrand table_icosphere(int level, std::vector<double> values, double lipschitz);
  /// Restriction of an n = 2 integrand to the great circle spanned by P and e
  /// (e orthogonal to P), reparametrized as an n = 1 integrand with P -> (1, 0).
  static ConvexIntegrand section(const ConvexIntegrand& base, const UnitVec3& p, const Vec3& e);

  int dim() const;
  IntegrandKind kind() const;

  double operator()(const Vec2& theta) const;
  double operator()(const Vec3& theta) const;

  /// Patched-integrand parameters; throw unless kind() == Patched.
  const ConvexIntegrand& patch_base() const;
  const Eigen::VectorXd& patch_direction() const;
  double patch_height() const;

  explicit ConvexIntegrand(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Point of the inverted graph: inv(theta, gamma(theta)) = (-theta, 1/gamma(theta)).
template <int N>
struct InvGraphPoint {
  UnitVec<N> direction;
  double radius;
  Eigen::Matrix<double, N, 1> point() const { return radius * direction.vec(); }
};

InvGraphPoint<2> inv_graph_point(const ConvexIntegrand& g, const UnitVec2& theta);
InvGraphPoint<3> inv_graph_point(const ConvexIntegrand& g, const UnitVec3& theta);

/// Canonical direction grid: circle_grid(grid_size) for n = 1, the smallest
/// icosphere with at least grid_size nodes for n = 2.
std::vector<Eigen::VectorXd> direction_grid(int n, int grid_size);

struct ConvexityCheck {
  bool convex = false;
  double max_depth = 0.0;   // deepest interior point, relative to hull scale
  int worst_index = -1;     // grid index of the deepest point
  int grid_points = 0;
};

/// Hull-boundary membership of the inverted graph on the canonical grid.
ConvexityCheck check_convex_integrand(const ConvexIntegrand& g, int grid_size, double tol = 1e-9);
bool is_convex_integrand(const ConvexIntegrand& g, int grid_size, double tol = 1e-9);

/// gamma'(theta) = max(base(theta), max(0, c * P . theta)). Requires c > base(P).
ConvexIntegrand patch_apex(const ConvexIntegrand& base, const Eigen::VectorXd& p, double c);

/// Largest delta such that c * (P . Q) >= base(Q) on the closed cap B(P, delta),
/// i.e. the region where the patched integrand obeys the cap-law. For n = 2 the
/// minimum over azimuths is located by a coarse scan refined with golden search.
double patch_cap_radius(const ConvexIntegrand& base, const Eigen::VectorXd& p, double c);

/// max over sampled Q in the closed cap B(P, delta) of
/// | ||gamma(Q) Q - gamma(P) P / 2|| - gamma(P) / 2 |.
double sphere_patch_residual(const ConvexIntegrand& g, const Eigen::VectorXd& p, double delta, int grid = 64);

/// Points of the closed cap B(P, delta): `rings` rings (plus P itself);
/// n = 1 uses both sides of P, n = 2 uses `azimuths` points per ring.
std::vector<Eigen::VectorXd> cap_samples(const Eigen::VectorXd& p, double delta, int rings, int azimuths = 64);

/// Evaluates g at a dynamic-size direction of matching dimension.
double eval_dyn(const ConvexIntegrand& g, const Eigen::VectorXd& theta);

}  // namespace wulff
