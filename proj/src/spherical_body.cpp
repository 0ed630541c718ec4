#include "wulff/spherical_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wulff/planar.hpp"

namespace wulff {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kChainTol = 1e-9;
constexpr double kHemiMargin = 1e-6;

// Extrema of A + a cos(phi) + b sin(phi) over [0, s].
Extremum sinusoid_min(double A, double a, double b, double s) {
  const auto f = [&](double p) { return A + a * std::cos(p) + b * std::sin(p); };
  Extremum best{f(0.0), 0.0};
  const double fs = f(s);
  if (fs < best.value) best = {fs, s};
  const double R = std::hypot(a, b);
  if (R > 0.0) {
    double pm = std::atan2(b, a) + kPi;
    if (pm >= kTwoPi) pm -= kTwoPi;
    if (pm <= s && A - R < best.value) best = {A - R, pm};
  }
  return best;
}

Extremum sinusoid_max(double A, double a, double b, double s) {
  Extremum e = sinusoid_min(-A, -a, -b, s);
  e.value = -e.value;
  return e;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::SmallArc: return "arc";
    case FeatureKind::GreatSegment: return "segment";
    case FeatureKind::Vertex: return "vertex";
  }
  return "?";
}

ArcFeature ArcFeature::make(const Vec3& center, double rho, const Vec3& e1, double sweep) {
  ArcFeature f;
  f.center = center.normalized();
  f.rho = rho;
  f.e1 = (e1 - e1.dot(f.center) * f.center).normalized();
  f.e2 = f.center.cross(f.e1);
  f.sweep = sweep;
  if (rho == 0.0) {
    f.cos_rho = 1.0;
    f.sin_rho = 0.0;
  } else if (rho == kHalfPi) {
    f.cos_rho = 0.0;
    f.sin_rho = 1.0;
  } else {
    f.cos_rho = std::cos(rho);
    f.sin_rho = std::sin(rho);
  }
  return f;
}

ArcFeature ArcFeature::arc(const Vec3& c_in, double rho, const Vec3& from, const Vec3& to, bool full_turn) {
  const Vec3 c = c_in.normalized();
  const Vec3 fp = from - from.dot(c) * c;
  const Vec3 tp = to - to.dot(c) * c;
  if (fp.norm() < 1e-14 || tp.norm() < 1e-14) {
    throw Error(Errc::InvalidBody, "arc endpoint coincides with the circle center");
  }
  const Vec3 e1 = fp.normalized();
  const Vec3 e2 = c.cross(e1);
  double ang = std::atan2(tp.dot(e2), tp.dot(e1));
  if (ang < 0.0) ang += kTwoPi;
  if (ang < 1e-12 || ang > kTwoPi - 1e-12) ang = full_turn ? kTwoPi : 0.0;
  return make(c, rho, e1, ang);
}

ArcFeature ArcFeature::vertex(const Vec3& v_in, const Vec3& n_in, const Vec3& n_out) {
  const Vec3 v = v_in.normalized();
  const double s = std::atan2(v.dot(n_in.cross(n_out)), n_in.dot(n_out));
  return make(v, 0.0, -n_in, s);
}

FeatureKind ArcFeature::kind() const {
  if (rho <= 1e-12) return FeatureKind::Vertex;
  if (rho >= kHalfPi - 1e-12) return FeatureKind::GreatSegment;
  return FeatureKind::SmallArc;
}

Vec3 ArcFeature::point(double phi) const {
  return cos_rho * center + sin_rho * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

Vec3 ArcFeature::normal(double phi) const {
  return sin_rho * center - cos_rho * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

Vec3 ArcFeature::tangent(double phi) const { return -std::sin(phi) * e1 + std::cos(phi) * e2; }

ArcFeature ArcFeature::dual() const {
  ArcFeature d = *this;
  d.rho = rho == 0.0 ? kHalfPi : (rho == kHalfPi ? 0.0 : kHalfPi - rho);
  std::swap(d.cos_rho, d.sin_rho);
  d.e1 = -e1;
  d.e2 = -e2;
  return d;
}

Extremum ArcFeature::min_point_dot(const Vec3& x) const {
  return sinusoid_min(cos_rho * center.dot(x), sin_rho * e1.dot(x), sin_rho * e2.dot(x), sweep);
}

Extremum ArcFeature::max_point_dot(const Vec3& x) const {
  return sinusoid_max(cos_rho * center.dot(x), sin_rho * e1.dot(x), sin_rho * e2.dot(x), sweep);
}

Extremum ArcFeature::min_normal_dot(const Vec3& x) const {
  return sinusoid_min(sin_rho * center.dot(x), -cos_rho * e1.dot(x), -cos_rho * e2.dot(x), sweep);
}

SphericalBody::SphericalBody(std::vector<ArcFeature> features, const Vec3& witness)
    : features_(std::move(features)), witness_(witness.normalized()) {
  validate(false);
}

SphericalBody SphericalBody::cap(const UnitVec3& c, double rho) {
  if (!(rho > 0.0 && rho < kHalfPi - kHemiMargin)) {
    throw Error(Errc::InvalidArgument, "cap body radius must lie in (0, pi/2)");
  }
  const auto [e1, e2] = tangent_frame(c.vec());
  (void)e2;
  return SphericalBody({ArcFeature::make(c.vec(), rho, e1, kTwoPi)}, c.vec());
}

SphericalBody SphericalBody::polygon(std::span<const Vec3> vin) {
  const std::size_t n = vin.size();
  if (n < 3) throw Error(Errc::Degenerate, "polygon needs at least three vertices");
  std::vector<Vec3> v;
  for (const auto& p : vin) v.push_back(p.normalized());
  std::vector<Vec3> poles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 cr = v[i].cross(v[(i + 1) % n]);
    if (cr.norm() < 1e-14) throw Error(Errc::Degenerate, "polygon has repeated or antipodal vertices");
    poles[i] = cr.normalized();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (poles[i].dot(v[j]) < -1e-12) throw Error(Errc::InvalidBody, "polygon is not convex and counterclockwise");
  std::vector<ArcFeature> f;
  Vec3 w = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(ArcFeature::vertex(v[i], poles[(i + n - 1) % n], poles[i]));
    f.push_back(ArcFeature::arc(poles[i], kHalfPi, v[i], v[(i + 1) % n]));
    w += v[i];
  }
  if (w.norm() < 1e-12) throw Error(Errc::NotHemispherical, "polygon vertices sum to zero");
  return SphericalBody(std::move(f), w);
}

SphericalBody SphericalBody::from_arcs(std::span<const ArcSpec> arcs, const Vec3& witness) {
  if (arcs.empty()) throw Error(Errc::InvalidBody, "empty arc chain");
  std::vector<ArcFeature> a;
  for (const auto& s : arcs) a.push_back(ArcFeature::arc(s.center, s.rho, s.from, s.to, arcs.size() == 1));
  std::vector<ArcFeature> f;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ArcFeature& prev = a[(i + n - 1) % n];
    const Vec3 n_in = prev.normal_out(), n_out = a[i].normal_in();
    if (angle_between(n_in, n_out) > 1e-12) {
      const ArcFeature vx = ArcFeature::vertex(a[i].from(), n_in, n_out);
      if (!(vx.sweep > 0.0)) throw Error(Errc::InvalidBody, "reflex junction in arc chain");
      f.push_back(vx);
    }
    f.push_back(a[i]);
  }
  return SphericalBody(std::move(f), witness);
}

bool SphericalBody::contains(const Vec3& x, double tol) const {
  for (const auto& f : features_)
    if (f.min_normal_dot(x).value < -tol) return false;
  return true;
}

double SphericalBody::depth(const Vec3& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : features_) m = std::min(m, f.min_normal_dot(x).value);
  return std::asin(clamp_unit(m));
}

std::pair<Vec3, double> SphericalBody::nearest_boundary(const Vec3& x) const {
  Extremum best{-std::numeric_limits<double>::infinity(), 0.0};
  int bi = 0;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const Extremum e = features_[i].max_point_dot(x);
    if (e.value > best.value) {
      best = e;
      bi = static_cast<int>(i);
    }
  }
  const Vec3 p = features_[bi].point(best.phi);
  return {p, angle_between(x, p)};
}

std::pair<Vec3, double> SphericalBody::farthest_boundary(const Vec3& x) const {
  Extremum best{std::numeric_limits<double>::infinity(), 0.0};
  int bi = 0;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const Extremum e = features_[i].min_point_dot(x);
    if (e.value < best.value) {
      best = e;
      bi = static_cast<int>(i);
    }
  }
  const Vec3 p = features_[bi].point(best.phi);
  return {p, angle_between(x, p)};
}

double SphericalBody::distance_to(const Vec3& x) const {
  if (contains(x, 0.0)) return 0.0;
  return nearest_boundary(x).second;
}

double SphericalBody::perimeter() const {
  double L = 0.0;
  for (const auto& f : features_) L += f.length();
  return L;
}

std::vector<BoundarySample> SphericalBody::boundary_samples(int m) const {
  if (m < 1) throw Error(Errc::InvalidArgument, "sample count must be positive");
  std::vector<double> cum(features_.size() + 1, 0.0);
  for (std::size_t i = 0; i < features_.size(); ++i) cum[i + 1] = cum[i] + features_[i].length();
  const double L = cum.back();
  std::vector<BoundarySample> out;
  out.reserve(m + features_.size());
  std::size_t fi = 0;
  for (int k = 0; k < m; ++k) {
    const double s = L * (static_cast<double>(k) / m);
    while (fi + 1 < features_.size() && (cum[fi + 1] <= s || features_[fi].sin_rho == 0.0)) ++fi;
    const ArcFeature& f = features_[fi];
    const double phi = std::min(f.sweep, (s - cum[fi]) / f.sin_rho);
    out.push_back({f.point(phi), static_cast<int>(fi), phi});
  }
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i].sin_rho == 0.0) out.push_back({features_[i].center, static_cast<int>(i), 0.0});
  return out;
}

void SphericalBody::validate(bool deep) const {
  const std::size_t n = features_.size();
  if (n == 0) throw Error(Errc::InvalidBody, "body has no features");
  for (const auto& f : features_) {
    if (!(f.rho >= 0.0 && f.rho <= kHalfPi)) throw Error(Errc::InvalidBody, "feature radius outside [0, pi/2]");
    if (!(f.sweep > 0.0 && f.sweep <= kTwoPi + 1e-12)) throw Error(Errc::InvalidBody, "feature sweep outside (0, 2pi]");
    if (f.kind() == FeatureKind::Vertex && !(f.sweep < kPi)) {
      throw Error(Errc::InvalidBody, "vertex normal cone must be narrower than pi");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ArcFeature& a = features_[i];
    const ArcFeature& b = features_[(i + 1) % n];
    if ((a.to() - b.from()).norm() > kChainTol) throw Error(Errc::InvalidBody, "boundary chain does not close");
    if ((a.normal_out() - b.normal_in()).norm() > kChainTol) {
      throw Error(Errc::InvalidBody, "supporting normals jump without a vertex feature");
    }
  }
  if (farthest_boundary(witness_).second > kHalfPi - kHemiMargin) {
    throw Error(Errc::NotHemispherical, "body does not fit in the witness hemisphere");
  }
  if (depth(witness_) < kHemiMargin) throw Error(Errc::InvalidBody, "witness is not an interior point");
  if (deep) {
    for (const auto& f : features_) {
      for (double t : {0.0, 0.5, 1.0}) {
        const Vec3 u = f.normal(t * f.sweep);
        for (const auto& g : features_)
          if (g.min_point_dot(u).value < -kChainTol) throw Error(Errc::InvalidBody, "body is not convex");
      }
    }
  }
}

std::vector<Vec3> SphericalBody::vertices() const {
  std::vector<Vec3> out;
  for (const auto& f : features_)
    if (f.kind() == FeatureKind::Vertex) out.push_back(f.center);
  return out;
}

SphericalBody s_conv(std::span<const Vec3> pts_in) {
  if (pts_in.size() < 3) throw Error(Errc::Degenerate, "hull needs at least three points");
  std::vector<Vec3> pts;
  Vec3 w = Vec3::Zero();
  for (const auto& p : pts_in) {
    pts.push_back(p.normalized());
    w += pts.back();
  }
  w = w.norm() > 1e-12 ? w.normalized() : pts.front();
  bool ok = false;
  for (int it = 0; it < 10000 && !ok; ++it) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].dot(w) < pts[worst].dot(w)) worst = i;
    if (pts[worst].dot(w) > 1e-12) {
      ok = true;
    } else {
      w = (w + pts[worst]).normalized();
    }
  }
  if (!ok) throw Error(Errc::NotHemispherical, "points are not contained in an open hemisphere");
  const auto [e1, e2] = tangent_frame(w);
  std::vector<Vec2> proj;
  for (const auto& p : pts) proj.emplace_back(p.dot(e1) / p.dot(w), p.dot(e2) / p.dot(w));
  const auto hull = convex_hull_2d(proj, 1e-12);
  double scale = 0.0;
  for (const auto& q : proj) scale = std::max(scale, q.norm());
  if (hull.size() < 3 || polygon_area(hull) <= 1e-14 * std::max(1.0, scale * scale)) {
    throw Error(Errc::Degenerate, "spherical hull has empty interior");
  }
  std::vector<Vec3> verts;
  for (const auto& q : hull) verts.push_back((w + q.x() * e1 + q.y() * e2).normalized());
  return SphericalBody::polygon(verts);
}

SphericalBody polar_dual(const SphericalBody& c) {
  std::vector<ArcFeature> f;
  f.reserve(c.size());
  for (const auto& a : c.features()) f.push_back(a.dual());
  return SphericalBody(std::move(f), c.witness());
}

SupportSet supporting_hemispheres(const SphericalBody& c, const Vec3& p_in) {
  const Vec3 p = p_in.normalized();
  for (const auto& f : c.features()) {
    if (f.kind() == FeatureKind::Vertex && angle_between(f.center, p) <= kChainTol) {
      return {false, f.normal_in(), f.normal_out()};
    }
  }
  for (const auto& f : c.features()) {
    if (f.kind() == FeatureKind::Vertex) continue;
    if (std::abs(angle_between(f.center, p) - f.rho) > kChainTol) continue;
    double phi = std::atan2(p.dot(f.e2), p.dot(f.e1));
    if (phi < 0.0) phi += kTwoPi;
    const double slack = kChainTol / f.sin_rho;
    if (phi > f.sweep + slack && phi < kTwoPi - slack) continue;
    if (phi > f.sweep + slack) phi = 0.0;
    phi = std::min(phi, f.sweep);
    const Vec3 u = f.normal(phi);
    return {true, u, u};
  }
  throw Error(Errc::NotOnBoundary, "point is not on the body boundary");
}

double width_wrt(const SphericalBody& c, const Vec3& p_in) {
  const Vec3 p = p_in.normalized();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : c.features()) m = std::min(m, f.min_point_dot(p).value);
  if (std::abs(m) > kChainTol) throw Error(Errc::NotSupporting, "hemisphere does not support the body");
  return kPi - polar_dual(c).farthest_boundary(p).second;
}

WidthReport thickness(const SphericalBody& c, int samples) {
  const SphericalBody d = polar_dual(c);
  const auto& feats = d.features();
  std::vector<double> cum(feats.size() + 1, 0.0);
  for (std::size_t i = 0; i < feats.size(); ++i) cum[i + 1] = cum[i] + feats[i].length();
  const double L = cum.back();

  auto width_at = [&](const Vec3& p) { return kPi - d.farthest_boundary(p).second; };
  const auto S = d.boundary_samples(samples);
  std::vector<std::size_t> order(S.size());
  std::iota(order.begin(), order.end(), 0);
  auto param = [&](const BoundarySample& s) { return cum[s.feature] + s.phi * feats[s.feature].sin_rho; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return param(S[a]) < param(S[b]); });

  WidthReport r;
  std::size_t imin = 0, imax = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& s = S[order[k]];
    r.params.push_back(param(s));
    r.centers.push_back(s.point);
    r.widths.push_back(width_at(s.point));
    if (r.widths[k] < r.widths[imin]) imin = k;
    if (r.widths[k] > r.widths[imax]) imax = k;
  }
  r.min = r.widths[imin];
  r.max = r.widths[imax];
  r.argmin_p = r.centers[imin];
  r.argmax_p = r.centers[imax];

  auto refine = [&](std::size_t k, double sign) {
    const auto& s = S[order[k]];
    const ArcFeature& f = feats[s.feature];
    if (f.sin_rho == 0.0) return;
    const double h = (L / samples) / f.sin_rho;
    const double lo = std::max(0.0, s.phi - h), hi = std::min(f.sweep, s.phi + h);
    const double phi = golden_max([&](double t) { return sign * width_at(f.point(t)); }, lo, hi, 1e-10);
    const Vec3 p = f.point(phi);
    const double w = width_at(p);
    if (sign < 0.0 && w < r.min) {
      r.min = w;
      r.argmin_p = p;
    }
    if (sign > 0.0 && w > r.max) {
      r.max = w;
      r.argmax_p = p;
    }
  };
  refine(imin, -1.0);
  refine(imax, 1.0);
  r.argmin_q = d.farthest_boundary(r.argmin_p).first;
  return r;
}

ConstantWidth is_constant_width(const SphericalBody& c, double tol, int samples) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  WidthReport r = thickness(c, samples);
  const bool constant = r.max - r.min <= tol;
  const double tau = r.min;
  return {constant, tau, std::move(r)};
}

VertexAngle vertex_angle_identity(const SphericalBody& c, const Vec3& v_in) {
  const Vec3 v = v_in.normalized();
  const auto& f = c.features();
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].kind() != FeatureKind::Vertex || angle_between(f[i].center, v) > kChainTol) continue;
    const ArcFeature& in = f[(i + n - 1) % n];
    const ArcFeature& out = f[(i + 1) % n];
    const Vec3 back = -in.tangent(in.sweep);
    const Vec3 fwd = out.tangent(0.0);
    return {angle_between(back, fwd), angle_between(f[i].normal_in(), f[i].normal_out())};
  }
  throw Error(Errc::Degenerate, "point is not a vertex of the body");
}

CapWitness interior_cap_witness(const SphericalBody& c) {
  auto score = [&](const Vec3& p) {
    return std::min(c.depth(p), kHalfPi - c.farthest_boundary(p).second);
  };
  Vec3 p = c.witness();
  double best = score(p);
  double step = 0.25;
  constexpr int kDirs = 8;
  for (int it = 0; it < 20000 && step > 1e-11; ++it) {
    const auto [e1, e2] = tangent_frame(p);
    bool moved = false;
    for (int k = 0; k < kDirs; ++k) {
      const double a = kTwoPi * k / kDirs;
      const Vec3 q = (std::cos(step) * p + std::sin(step) * (std::cos(a) * e1 + std::sin(a) * e2)).normalized();
      const double s = score(q);
      if (s > best) {
        best = s;
        p = q;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  if (!(best > 0.0)) throw Error(Errc::SolverFailure, "no cap fits inside the body and its polar");

  const double delta = best * (1.0 - 1e-9);
  const SphericalBody polar = polar_dual(c);
  const auto [e1, e2] = tangent_frame(p);
  for (int ring = 1; ring <= 8; ++ring) {
    const double r = delta * ring / 8.0;
    for (int k = 0; k < 25; ++k) {
      const double a = kTwoPi * k / 25.0;
      const Vec3 q = std::cos(r) * p + std::sin(r) * (std::cos(a) * e1 + std::sin(a) * e2);
      if (!c.contains(q, 1e-12) || !polar.contains(q, 1e-12)) {
        throw Error(Errc::SolverFailure, "interior cap witness failed verification");
      }
    }
  }
  return {p, delta};
}

}  // namespace wulff
