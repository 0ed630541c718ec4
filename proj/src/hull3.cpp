#include "wulff/hull3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace wulff {

namespace {

struct Face {
  std::array<int, 3> v;
  Vec3 n;
  double d;
  bool alive = true;
};

class Builder {
 public:
  Builder(std::span<const Vec3> pts, double eps) : pts_(pts), eps_(eps) {}

  Face make_face(int a, int b, int c) const {
    Face f;
    f.v = {a, b, c};
    Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    f.n = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
    f.d = f.n.dot(pts_[a]);
    return f;
  }

  void add_face(int a, int b, int c) {
    faces_.push_back(make_face(a, b, c));
    const int id = static_cast<int>(faces_.size()) - 1;
    for (int k = 0; k < 3; ++k) edge_[key(faces_[id].v[k], faces_[id].v[(k + 1) % 3])] = id;
  }

  void init(const std::array<int, 4>& t) {
    const Vec3 centroid = (pts_[t[0]] + pts_[t[1]] + pts_[t[2]] + pts_[t[3]]) / 4.0;
    const std::array<std::array<int, 3>, 4> tri = {{{t[0], t[1], t[2]}, {t[0], t[3], t[1]},
                                                    {t[1], t[3], t[2]}, {t[2], t[3], t[0]}}};
    for (auto f : tri) {
      Face probe = make_face(f[0], f[1], f[2]);
      if (probe.n.dot(centroid) > probe.d) std::swap(f[1], f[2]);
      add_face(f[0], f[1], f[2]);
    }
  }

  void insert(int p) {
    const Vec3& x = pts_[p];
    int seed = -1;
    double best = eps_;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!faces_[i].alive) continue;
      const double h = faces_[i].n.dot(x) - faces_[i].d;
      if (h > best) {
        best = h;
        seed = static_cast<int>(i);
      }
    }
    if (seed < 0) return;
    // Connected visible region grown from the most visible face.
    std::vector<int> visible{seed};
    std::vector<char> mark(faces_.size(), 0);
    mark[seed] = 1;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const Face& f = faces_[visible[q]];
      for (int k = 0; k < 3; ++k) {
        auto it = edge_.find(key(f.v[(k + 1) % 3], f.v[k]));
        if (it == edge_.end()) continue;
        const int g = it->second;
        if (mark[g] || !faces_[g].alive) continue;
        if (faces_[g].n.dot(x) - faces_[g].d > eps_) {
          mark[g] = 1;
          visible.push_back(g);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int fi : visible) {
      const Face& f = faces_[fi];
      for (int k = 0; k < 3; ++k) {
        const int a = f.v[k], b = f.v[(k + 1) % 3];
        auto it = edge_.find(key(b, a));
        if (it == edge_.end() || !mark[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (int fi : visible) {
      faces_[fi].alive = false;
      const Face& f = faces_[fi];
      for (int k = 0; k < 3; ++k) {
        auto it = edge_.find(key(f.v[k], f.v[(k + 1) % 3]));
        if (it != edge_.end() && it->second == fi) edge_.erase(it);
      }
    }
    for (auto [a, b] : horizon) add_face(a, b, p);
  }

  Hull3 finish() const {
    Hull3 h;
    h.points.assign(pts_.begin(), pts_.end());
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      h.faces.push_back(f.v);
      h.normals.push_back(f.n);
      h.offsets.push_back(f.d);
    }
    return h;
  }

 private:
  static long long key(int a, int b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); }

  std::span<const Vec3> pts_;
  double eps_;
  std::vector<Face> faces_;
  std::unordered_map<long long, int> edge_;
};

}  // namespace

Hull3 convex_hull_3d(std::span<const Vec3> points, double rel_eps) {
  const int n = static_cast<int>(points.size());
  if (n < 4) throw Error(Errc::Degenerate, "3D hull needs at least four points");
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = rel_eps * std::max(scale, 1e-300);

  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (points[i].x() < points[i0].x()) i0 = i;
  int i1 = i0;
  for (int i = 0; i < n; ++i)
    if ((points[i] - points[i0]).norm() > (points[i1] - points[i0]).norm()) i1 = i;
  const Vec3 axis = (points[i1] - points[i0]).normalized();
  auto line_dist = [&](int i) {
    const Vec3 d = points[i] - points[i0];
    return (d - d.dot(axis) * axis).norm();
  };
  int i2 = i0;
  for (int i = 0; i < n; ++i)
    if (line_dist(i) > line_dist(i2)) i2 = i;
  const Vec3 pn = (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
  int i3 = i0;
  for (int i = 0; i < n; ++i)
    if (std::abs(pn.dot(points[i] - points[i0])) > std::abs(pn.dot(points[i3] - points[i0]))) i3 = i;
  if (line_dist(i2) <= eps || std::abs(pn.dot(points[i3] - points[i0])) <= eps) {
    throw Error(Errc::Degenerate, "3D hull input is coplanar");
  }

  Builder b(points, eps);
  b.init({i0, i1, i2, i3});
  for (int i = 0; i < n; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    b.insert(i);
  }
  return b.finish();
}

double hull_depth(const Hull3& hull, const Vec3& p) {
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.faces.size(); ++i) {
    depth = std::min(depth, hull.offsets[i] - hull.normals[i].dot(p));
  }
  return depth;
}

}  // namespace wulff
