#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "wulff/sphere.hpp"

using namespace wulff;

namespace {
UnitVec3 u3(double x, double y, double z) { return UnitVec3::normalized(Vec3(x, y, z)); }
}  // namespace

TEST(UnitVec, RejectsNormsOutsideBand) {
  EXPECT_NO_THROW(UnitVec3(Vec3(1.0 + 5e-7, 0, 0)));
  EXPECT_THROW(UnitVec3(Vec3(1.01, 0, 0)), Error);
  EXPECT_THROW(UnitVec3::normalized(Vec3::Zero()), Error);
  EXPECT_NEAR(UnitVec3(Vec3(1.0 + 5e-7, 0, 0)).vec().norm(), 1.0, 1e-15);
}

TEST(SphDist, Examples) {
  EXPECT_NEAR(sph_dist(u3(0, 0, 1), u3(1, 0, 0)), kHalfPi, 1e-15);
  const auto p = u3(0.3, -0.2, 0.9);
  EXPECT_EQ(sph_dist(p, p), 0.0);
  EXPECT_NEAR(sph_dist(u3(1, 0, 0), u3(-1, 0, 0)), kPi, 1e-15);
}

TEST(SphDist, IsAMetricOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto a = UnitVec3(oracle::random_unit(rng)), b = UnitVec3(oracle::random_unit(rng)),
               c = UnitVec3(oracle::random_unit(rng));
    EXPECT_NEAR(sph_dist(a, b), sph_dist(b, a), 1e-15);
    EXPECT_LE(sph_dist(a, c), sph_dist(a, b) + sph_dist(b, c) + 1e-12);
    EXPECT_GE(sph_dist(a, b), 0.0);
    EXPECT_LE(sph_dist(a, b), kPi);
  }
}

TEST(SphDist, AccurateForNearbyPoints) {
  const auto p = u3(1, 0, 0);
  const auto q = UnitVec3(Vec3(std::cos(1e-9), std::sin(1e-9), 0));
  EXPECT_NEAR(sph_dist(p, q), 1e-9, 1e-21);
}

TEST(ArcPoint, EndpointsAndMidpoint) {
  const auto p = u3(1, 0, 0), q = u3(0, 1, 0);
  EXPECT_NEAR((arc_point(p, q, 0.0).vec() - p.vec()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((arc_point(p, q, 1.0).vec() - q.vec()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((arc_point(p, q, 0.5).vec() - Vec3(std::sqrt(0.5), std::sqrt(0.5), 0)).norm(), 0.0, 1e-15);
}

TEST(ArcPoint, ConstantSpeed) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto a = UnitVec3(oracle::random_unit(rng)), b = UnitVec3(oracle::random_unit(rng));
    if (sph_dist(a, b) > kPi - 1e-3) continue;
    const double t = u(rng);
    EXPECT_NEAR(sph_dist(a, arc_point(a, b, t)), t * sph_dist(a, b), 1e-12);
  }
}

TEST(ArcPoint, PlanarVersion) {
  const auto p = UnitVec2(Vec2(1, 0)), q = UnitVec2(Vec2(0, 1));
  EXPECT_NEAR(sph_dist(p, arc_point(p, q, 0.25)), kPi / 8, 1e-15);
}

TEST(ArcPoint, RejectsAntipodesAndBadT) {
  EXPECT_THROW(arc_point(u3(1, 0, 0), u3(-1, 0, 0), 0.5), Error);
  EXPECT_THROW(arc_point(u3(1, 0, 0), u3(0, 1, 0), 1.5), Error);
}

TEST(Lune, Thickness) {
  const Lune quarter(Hemisphere{u3(1, 0, 0)}, Hemisphere{u3(0, 1, 0)});
  EXPECT_NEAR(lune_thickness(quarter), kHalfPi, 1e-15);
  const Lune thin(Hemisphere{u3(1, 0, 0)}, Hemisphere{UnitVec3(Vec3(std::cos(0.3), std::sin(0.3), 0))});
  EXPECT_NEAR(lune_thickness(thin), kPi - 0.3, 1e-15);
  EXPECT_NEAR(lune_thickness(thin) + sph_dist(thin.first().center, thin.second().center), kPi, 1e-15);
}

TEST(Lune, RejectsEqualAndAntipodalCenters) {
  try {
    Lune(Hemisphere{u3(0, 0, 1)}, Hemisphere{u3(0, 0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidLune);
  }
  EXPECT_THROW(Lune(Hemisphere{u3(0, 0, 1)}, Hemisphere{u3(0, 0, -1)}), Error);
}

TEST(VertexAngle, Examples) {
  EXPECT_NEAR(vertex_angle(u3(0, 0, 1), u3(1, 0, 0), u3(0, 1, 0)), kHalfPi, 1e-15);
  EXPECT_NEAR(vertex_angle(u3(0, 0, 1), u3(1, 0, 0), u3(1, 0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(vertex_angle(u3(0, 0, 1), u3(1, 0, 0), u3(-1, 0, 0)), kPi, 1e-15);
  EXPECT_THROW(vertex_angle(u3(0, 0, 1), u3(0, 0, -1), u3(1, 0, 0)), Error);
}

TEST(CapTest, Containment) {
  const Cap cap(u3(0, 0, 1), 0.5);
  EXPECT_TRUE(cap_contains(cap, u3(0, 0, 1)));
  EXPECT_TRUE(cap_contains(cap, UnitVec3(Vec3(std::sin(0.5), 0, std::cos(0.5)))));
  EXPECT_FALSE(cap_contains(cap, u3(0, 0, -1)));
  EXPECT_THROW(Cap(u3(0, 0, 1), 0.0), Error);
  EXPECT_THROW(Cap(u3(0, 0, 1), 2.0), Error);
  EXPECT_NO_THROW(Cap(u3(0, 0, 1), kHalfPi));
}

TEST(Frames, TangentFrameIsRightHanded) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vec3 n = oracle::random_unit(rng);
    const auto [e1, e2] = tangent_frame(n);
    EXPECT_NEAR((e1.cross(e2) - n).norm(), 0.0, 1e-14);
    EXPECT_NEAR(e1.dot(n), 0.0, 1e-14);
  }
  EXPECT_NEAR((rotate_about(Vec3::UnitX(), Vec3::UnitZ(), kHalfPi) - Vec3::UnitY()).norm(), 0.0, 1e-15);
}
