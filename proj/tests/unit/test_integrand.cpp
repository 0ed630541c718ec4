#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "wulff/icosphere.hpp"
#include "wulff/integrand.hpp"

using namespace wulff;

namespace {

Eigen::VectorXd v2(double x, double y) { return (Eigen::VectorXd(2) << x, y).finished(); }

ConvexIntegrand square_support() {
  return ConvexIntegrand::support_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
}

ConvexIntegrand sharp_bump() {
  std::vector<double> values;
  for (const auto& t : circle_grid(720)) {
    const double d = std::atan2(t.y(), t.x());
    values.push_back(1.0 + 0.5 * std::exp(-d * d / 0.01));
  }
  return ConvexIntegrand::table_circle(values, 100.0);
}

}  // namespace

TEST(Integrand, ConstantAndPatchedEvaluation) {
  const auto one = ConvexIntegrand::constant(1, 1.0);
  EXPECT_EQ(one(Vec2(0.6, 0.8)), 1.0);
  const auto g = patch_apex(one, v2(1, 0), std::sqrt(2.0));
  EXPECT_NEAR(g(Vec2(1, 0)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g(Vec2(0, 1)), 1.0, 1e-15);
  EXPECT_EQ(g.kind(), IntegrandKind::Patched);
  EXPECT_NEAR(g.patch_height(), std::sqrt(2.0), 0.0);
}

TEST(Integrand, DimensionMismatchThrows) {
  const auto one = ConvexIntegrand::constant(2, 1.0);
  EXPECT_THROW(one(Vec2(1, 0)), Error);
  EXPECT_THROW(ConvexIntegrand::constant(1, 0.0), Error);
}

TEST(Integrand, SupportPositivityRequired) {
  EXPECT_THROW(ConvexIntegrand::support_polygon({{1, 1}, {2, 1}, {2, 2}}), Error);
  EXPECT_NEAR(square_support()(Vec2(std::sqrt(0.5), std::sqrt(0.5))), std::sqrt(2.0), 1e-15);
}

TEST(Integrand, ConvexityExamples) {
  EXPECT_TRUE(is_convex_integrand(ConvexIntegrand::constant(1, 1.0), 720));
  EXPECT_TRUE(is_convex_integrand(ConvexIntegrand::constant(2, 1.0), 2562));
  EXPECT_TRUE(is_convex_integrand(square_support(), 720));
  EXPECT_FALSE(is_convex_integrand(sharp_bump(), 720));
}

TEST(Integrand, ConvexityMatchesAngularGapOracle) {
  for (const auto& g : {square_support(), sharp_bump()}) {
    std::vector<Vec2> inv;
    for (const auto& t : circle_grid(720)) inv.push_back(-t / g(t));
    bool all = true;
    for (std::size_t i = 0; i < inv.size(); ++i) all = all && oracle::on_hull_boundary_angular(inv, i, 1e-9);
    EXPECT_EQ(all, is_convex_integrand(g, 720));
  }
}

TEST(Integrand, ConvexityIsScaleInvariant) {
  std::vector<double> vals, scaled;
  for (const auto& t : circle_grid(360)) {
    vals.push_back(std::hypot(2.0 * t.x(), 0.5 * t.y()));
    scaled.push_back(7.5 * vals.back());
  }
  EXPECT_EQ(is_convex_integrand(ConvexIntegrand::table_circle(vals, 10.0), 360),
            is_convex_integrand(ConvexIntegrand::table_circle(scaled, 100.0), 360));
  EXPECT_EQ(is_convex_integrand(sharp_bump(), 720), false);
}

TEST(Integrand, SupportFunctionsOfRandomBodiesAreConvex) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<Vec3> v;
    for (int i = 0; i < 20; ++i) v.push_back((0.6 + 0.8 * u(rng)) * oracle::random_unit(rng));
    for (int s : {-1, 1})
      for (int a = 0; a < 3; ++a) v.push_back(0.5 * s * Vec3::Unit(a));
    EXPECT_TRUE(is_convex_integrand(ConvexIntegrand::support_polytope(v), 2562));
  }
  Eigen::Matrix2d A;
  A << 2.0, 0.3, 0.3, 0.6;
  EXPECT_TRUE(is_convex_integrand(ConvexIntegrand::support_ellipsoid(A), 720));
}

TEST(Integrand, TableLipschitzViolationRejected) {
  std::vector<double> v(36, 1.0);
  v[5] = 2.0;
  EXPECT_THROW(ConvexIntegrand::table_circle(v, 1.0), Error);
  EXPECT_THROW(ConvexIntegrand::table_circle({1.0, -1.0, 1.0}, 10.0), Error);
  EXPECT_THROW(ConvexIntegrand::table_icosphere(1, std::vector<double>(10, 1.0), 1.0), Error);
}

TEST(Integrand, IcosphereTableInterpolatesNodes) {
  const auto ico = make_icosphere(2);
  std::vector<double> vals;
  for (const auto& p : ico.nodes) vals.push_back(1.0 + 0.1 * p.z());
  const auto g = ConvexIntegrand::table_icosphere(2, vals, 10.0);
  for (std::size_t i = 0; i < ico.nodes.size(); i += 7) EXPECT_NEAR(g(ico.nodes[i]), vals[i], 1e-12);
}

TEST(PatchApex, RejectsNoProtrusion) {
  EXPECT_THROW(patch_apex(ConvexIntegrand::constant(1, 1.0), v2(1, 0), 1.0), Error);
}

TEST(PatchApex, CapRadiusExamples) {
  EXPECT_NEAR(patch_cap_radius(ConvexIntegrand::constant(1, 1.0), v2(1, 0), std::sqrt(2.0)), kPi / 4, 1e-12);
  // 3 cos(phi) = cos(phi) + sin(phi) at tan(phi) = 2.
  EXPECT_NEAR(patch_cap_radius(square_support(), v2(1, 0), 3.0), std::atan(2.0), 1e-12);
}

TEST(PatchApex, CapLawRegionBySampling) {
  const auto base = square_support();
  const auto p = v2(std::cos(0.4), std::sin(0.4));
  const double c = 2.5;
  const auto g = patch_apex(base, p, c);
  const double bmax = std::sqrt(2.0);
  for (const auto& t : circle_grid(720)) {
    if (p.dot(Eigen::VectorXd(t)) > bmax / c) EXPECT_NEAR(g(t), c * p.dot(Eigen::VectorXd(t)), 1e-15);
  }
  EXPECT_TRUE(is_convex_integrand(g, 720));
}

TEST(SpherePatch, Examples) {
  const auto one = ConvexIntegrand::constant(1, 1.0);
  const auto p = v2(0, 1);
  EXPECT_NEAR(sphere_patch_residual(one, p, 1e-6), 0.0, 1e-12);
  EXPECT_NEAR(sphere_patch_residual(one, p, kHalfPi), (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
  const auto g = patch_apex(one, v2(1, 0), std::sqrt(2.0));
  EXPECT_LE(sphere_patch_residual(g, v2(1, 0), kPi / 4), 1e-12);
}

TEST(SpherePatch, SpatialPatchedCase) {
  const auto one = ConvexIntegrand::constant(2, 1.0);
  const Eigen::VectorXd p = Vec3(1, 2, 2).normalized();
  const auto g = patch_apex(one, p, 1.6);
  const double delta = patch_cap_radius(one, p, 1.6);
  EXPECT_NEAR(delta, std::acos(1.0 / 1.6), 1e-9);
  EXPECT_LE(sphere_patch_residual(g, p, delta), 1e-12);
}

TEST(Section, RestrictsToGreatCircle) {
  Eigen::Matrix3d A = Eigen::Vector3d(2.0, 1.0, 0.5).asDiagonal();
  const auto g = ConvexIntegrand::support_ellipsoid(A);
  const auto s = ConvexIntegrand::section(g, UnitVec3(Vec3::UnitX()), Vec3::UnitY());
  EXPECT_EQ(s.dim(), 1);
  EXPECT_NEAR(s(Vec2(1, 0)), 2.0, 1e-15);
  EXPECT_NEAR(s(Vec2(0, 1)), 1.0, 1e-15);
}
