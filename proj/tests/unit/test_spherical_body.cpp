#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "wulff/approx.hpp"
#include "wulff/io.hpp"
#include "wulff/spherical_body.hpp"

using namespace wulff;

namespace {

const std::vector<Vec3> kOrthant{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};

SphericalBody orthant() { return s_conv(kOrthant); }

std::vector<Vec3> small_triangle() {
  return {Vec3(0.1, 0.0, 1.0).normalized(), Vec3(-0.05, 0.12, 1.0).normalized(),
          Vec3(-0.07, -0.06, 1.0).normalized()};
}

UnitVec3 uz() { return UnitVec3(Vec3::UnitZ()); }

double ang(const Vec3& a, const Vec3& b) { return angle_between(a, b); }

}  // namespace

TEST(SConv, OrthantTriangle) {
  const auto t = orthant();
  const auto v = t.vertices();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_LT(oracle::point_set_distance(v, kOrthant), 1e-15);
  EXPECT_TRUE(t.contains(Vec3(1, 1, 1).normalized()));
  EXPECT_FALSE(t.contains(Vec3(-1, 1, 1).normalized()));
}

TEST(SConv, RejectsNonHemisphericalAndDegenerate) {
  const std::vector<Vec3> octa{Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitY(), Vec3::UnitZ(),
                               -Vec3::UnitZ()};
  EXPECT_THROW(s_conv(octa), Error);
  const std::vector<Vec3> line{Vec3::UnitX(), Vec3(1, 1, 0).normalized(), Vec3::UnitY()};
  EXPECT_THROW(s_conv(line), Error);
}

TEST(SConv, IdempotentAndContainsInputs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Vec3 c = oracle::random_unit(rng);
    std::vector<Vec3> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(oracle::random_in_cap(rng, c, 1.0));
    const auto h = s_conv(pts);
    for (const auto& p : pts) EXPECT_TRUE(h.contains(p, 1e-9));
    const auto hv = h.vertices();
    const auto h2 = s_conv(hv);
    EXPECT_LT(oracle::point_set_distance(h2.vertices(), hv), 1e-12);
    for (const auto& v : hv) EXPECT_TRUE(oracle::in_polygon(hv, v, 1e-12));
  }
}

TEST(Body, ContainmentMatchesPolygonOracle) {
  std::mt19937_64 rng(12);
  const auto b = oracle::random_polygon(rng, Vec3(0.3, 0.2, 0.9).normalized(), 0.9);
  const auto v = b.vertices();
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const Vec3 x = oracle::random_in_cap(rng, Vec3(0.3, 0.2, 0.9).normalized(), 1.2);
    if (std::abs(b.depth(x)) < 1e-9) continue;
    EXPECT_EQ(b.contains(x), oracle::in_polygon(v, x));
    ++checked;
  }
  EXPECT_GT(checked, 4000);
}

TEST(Body, CapQueries) {
  const auto c = SphericalBody::cap(uz(), 0.5);
  EXPECT_NEAR(c.perimeter(), 2 * kPi * std::sin(0.5), 1e-14);
  EXPECT_NEAR(c.depth(Vec3::UnitZ()), 0.5, 1e-14);
  const Vec3 x = Vec3(std::sin(1.2), 0, std::cos(1.2));
  EXPECT_NEAR(c.distance_to(x), 0.7, 1e-14);
  EXPECT_NEAR(c.farthest_boundary(x).second, 1.7, 1e-14);
  EXPECT_THROW(SphericalBody::cap(uz(), kHalfPi), Error);
  EXPECT_THROW(SphericalBody::cap(uz(), 0.0), Error);
}

TEST(Body, BoundarySamplesNestedAndOnBoundary) {
  std::mt19937_64 rng(13);
  const auto b = oracle::random_polygon(rng, Vec3::UnitZ(), 0.8);
  const auto s64 = b.boundary_samples(64);
  const auto s128 = b.boundary_samples(128);
  for (int i = 0; i < 64; ++i) EXPECT_LT((s64[i].point - s128[2 * i].point).norm(), 1e-12);
  for (const auto& s : s128) EXPECT_NEAR(b.depth(s.point), 0.0, 1e-12);
  EXPECT_EQ(s64.size(), 64u + b.vertices().size());
}

TEST(Polar, CapGivesComplementaryCap) {
  const auto p = polar_dual(SphericalBody::cap(uz(), 0.6));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p.features()[0].rho, kHalfPi - 0.6, 1e-15);
  EXPECT_LT(p.features()[0].center.cross(Vec3::UnitZ()).norm(), 1e-15);
  for (const auto& s : p.boundary_samples(64)) EXPECT_NEAR(ang(s.point, Vec3::UnitZ()), kHalfPi - 0.6, 1e-14);
}

TEST(Polar, OrthantIsSelfDual) {
  const auto p = polar_dual(orthant());
  EXPECT_LT(oracle::point_set_distance(p.vertices(), kOrthant), 1e-14);
}

TEST(Polar, PolygonMatchesGnomonicOracle) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 30; ++t) {
    const Vec3 c = oracle::random_unit(rng);
    const auto b = oracle::random_polygon(rng, c, 0.3 + 0.9 * (t % 5) / 5.0);
    const auto ref = oracle::polygon_polar_vertices(b.vertices(), oracle::vertex_centroid(b.vertices()));
    EXPECT_LT(oracle::point_set_distance(polar_dual(b).vertices(), ref), 1e-9);
  }
}

TEST(Polar, DoublePolarIsIdentity) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 30; ++t) {
    const auto b = oracle::random_polygon(rng, oracle::random_unit(rng), 1.0);
    const auto bb = polar_dual(polar_dual(b));
    EXPECT_LT(oracle::point_set_distance(bb.vertices(), b.vertices()), 1e-12);
  }
}

TEST(Polar, ReversesInclusion) {
  std::mt19937_64 rng(16);
  const auto big = SphericalBody::cap(uz(), 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto b = oracle::random_polygon(rng, Vec3::UnitZ(), 0.9);
    const auto pb = polar_dual(b);
    const auto pbig = polar_dual(big);
    for (const auto& s : pbig.boundary_samples(128)) EXPECT_TRUE(pb.contains(s.point, 1e-9));
  }
}

TEST(Support, HemisphereExamples) {
  const auto t = orthant();
  const auto s = supporting_hemispheres(t, Vec3::UnitX());
  EXPECT_FALSE(s.unique);
  EXPECT_LT(oracle::point_set_distance(std::vector<Vec3>{s.first, s.second},
                                       std::vector<Vec3>{Vec3::UnitY(), Vec3::UnitZ()}),
            1e-14);
  const auto c = SphericalBody::cap(uz(), 0.5);
  const Vec3 q(std::sin(0.5), 0, std::cos(0.5));
  const auto u = supporting_hemispheres(c, q);
  EXPECT_TRUE(u.unique);
  EXPECT_NEAR(ang(u.first, Vec3(-std::cos(0.5), 0, std::sin(0.5))), 0.0, 1e-12);
  EXPECT_THROW(supporting_hemispheres(c, Vec3::UnitZ()), Error);
}

TEST(Support, DualityWithPolarBoundary) {
  std::mt19937_64 rng(17);
  const auto b = oracle::random_polygon(rng, Vec3::UnitZ(), 0.8);
  const auto pb = polar_dual(b);
  for (const auto& s : b.boundary_samples(200)) {
    const auto h = supporting_hemispheres(b, s.point);
    for (const Vec3& u : {h.first, h.second}) {
      EXPECT_NEAR(pb.depth(u), 0.0, 1e-10);
      EXPECT_NEAR(u.dot(s.point), 0.0, 1e-10);
    }
  }
}

TEST(Width, WrtExamples) {
  const auto t = orthant();
  EXPECT_NEAR(width_wrt(t, Vec3(0, 1, 1).normalized()), kHalfPi, 1e-12);
  const auto c = SphericalBody::cap(uz(), 0.5);
  EXPECT_NEAR(width_wrt(c, Vec3(-std::cos(0.5), 0, std::sin(0.5))), 1.0, 1e-12);
  EXPECT_THROW(width_wrt(c, Vec3::UnitZ()), Error);
}

TEST(Width, CapIsConstant) {
  const auto r = is_constant_width(SphericalBody::cap(uz(), 0.4), 1e-9);
  EXPECT_TRUE(r.constant);
  EXPECT_NEAR(r.tau, 0.8, 1e-12);
}

TEST(Width, OrthantIsConstantHalfPi) {
  const auto r = is_constant_width(orthant(), 1e-9);
  EXPECT_TRUE(r.constant);
  EXPECT_NEAR(r.report.min, kHalfPi, 1e-12);
  EXPECT_NEAR(r.report.max, kHalfPi, 1e-12);
}

TEST(Width, IrregularTriangleMatchesOracle) {
  const auto v = small_triangle();
  const auto b = SphericalBody::polygon(v);
  const auto r = thickness(b);
  const auto [lo, hi] = oracle::polygon_width_range(v, 2000);
  EXPECT_FALSE(is_constant_width(b, 1e-6).constant);
  EXPECT_NEAR(r.min, lo, 1e-6);
  EXPECT_NEAR(r.max, hi, 1e-6);
  EXPECT_GE(r.max - r.min, 1e-3);
}

TEST(Width, RandomPolygonsMatchOracle) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto b = oracle::random_polygon(rng, oracle::random_unit(rng), 0.7);
    const auto r = thickness(b);
    const auto [lo, hi] = oracle::polygon_width_range(b.vertices(), 600);
    EXPECT_NEAR(r.min, lo, 1e-5);
    EXPECT_NEAR(r.max, hi, 1e-5);
    EXPECT_LE(r.min, lo + 1e-9);
  }
}

TEST(Width, ReuleauxAndPolarSumToPi) {
  for (int k : {3, 5, 7})
    for (double tau : {0.8, 1.2}) {
      const auto b = reuleaux_regular(k, tau);
      const auto w = thickness(b);
      const auto wp = thickness(polar_dual(b));
      EXPECT_LE(w.max - w.min, 1e-12);
      EXPECT_NEAR(w.min + wp.min, kPi, 1e-12);
    }
}

TEST(VertexAngle, IdentityOnPolygons) {
  const auto t = orthant();
  const auto r = vertex_angle_identity(t, Vec3::UnitX());
  EXPECT_NEAR(r.angle, kHalfPi, 1e-14);
  EXPECT_NEAR(r.normal_gap, kHalfPi, 1e-14);
  std::mt19937_64 rng(19);
  for (int k = 0; k < 20; ++k) {
    const auto b = oracle::random_polygon(rng, oracle::random_unit(rng), 0.9);
    for (const auto& v : b.vertices()) {
      const auto a = vertex_angle_identity(b, v);
      EXPECT_NEAR(a.angle + a.normal_gap, kPi, 1e-12);
    }
  }
  EXPECT_THROW(vertex_angle_identity(t, Vec3(1, 1, 0).normalized()), Error);
}

TEST(Witness, InteriorCapForOrthantAndCaps) {
  const auto w = interior_cap_witness(orthant());
  EXPECT_NEAR(w.delta, std::asin(1.0 / std::sqrt(3.0)), 1e-6);
  EXPECT_LE(w.delta, std::asin(1.0 / std::sqrt(3.0)));
  const auto c = interior_cap_witness(SphericalBody::cap(uz(), 0.5));
  EXPECT_NEAR(c.delta, 0.5, 1e-6);
  EXPECT_LT(ang(c.center, Vec3::UnitZ()), 1e-4);
}

TEST(Validate, RejectsBrokenChains) {
  const auto t = orthant();
  auto f = t.features();
  std::swap(f[1], f[3]);
  EXPECT_THROW(SphericalBody(f, t.witness()), Error);
  EXPECT_THROW(SphericalBody(t.features(), -t.witness()), Error);
  const std::vector<Vec3> cw{Vec3::UnitX(), Vec3::UnitZ(), Vec3::UnitY()};
  EXPECT_THROW(SphericalBody::polygon(cw), Error);
}

TEST(Json, BodyRoundTrip) {
  std::mt19937_64 rng(20);
  for (const auto& b : {oracle::random_polygon(rng, Vec3::UnitZ(), 0.8), reuleaux_regular(5, 1.0),
                        SphericalBody::cap(uz(), 0.3), polar_dual(reuleaux_regular(3, 1.2))}) {
    const auto j = io::body_to_json(b);
    const auto back = io::body_from_json(io::json::parse(j.dump()));
    ASSERT_EQ(back.size(), b.size());
    for (const auto& s : b.boundary_samples(256)) EXPECT_NEAR(back.depth(s.point), 0.0, 1e-12);
  }
}

TEST(Json, GeneratorForms) {
  const auto r = io::body_from_json(io::json::parse(R"({"generator":"reuleaux","k":3,"tau":1.1415926535897931,"polar":true})"));
  EXPECT_NEAR(thickness(r).min, 2.0, 1e-12);
  EXPECT_THROW(io::body_from_json(io::json::parse(R"({"generator":"reuleaux","k":4,"tau":1.0})")), Error);
  try {
    io::body_from_json(io::json::parse(R"({"generator":"blob"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Schema);
  }
}
