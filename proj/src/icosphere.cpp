#include "wulff/icosphere.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wulff {

Icosphere make_icosphere(int level) {
  if (level < 0 || level > 7) {
    throw Error(Errc::InvalidArgument, "icosphere level must lie in [0, 7]");
  }
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Icosphere s;
  s.level = level;
  s.nodes = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
             {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
             {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : s.nodes) v.normalize();
  s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      s.nodes.push_back((s.nodes[a] + s.nodes[b]).normalized());
      const int id = static_cast<int>(s.nodes.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(s.faces.size() * 4);
    for (const auto& f : s.faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    s.faces = std::move(next);
  }
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& f : s.faces) {
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(f[k], f[(k + 1) % 3]);
      if (seen.emplace(key, true).second) s.edges.push_back({key.first, key.second});
    }
  }
  return s;
}

Icosphere icosphere_with_at_least(int min_nodes) {
  int level = 0;
  while (level < 7 && 10 * (1 << (2 * level)) + 2 < min_nodes) ++level;
  return make_icosphere(level);
}

std::vector<Vec2> circle_grid(int n) {
  std::vector<Vec2> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * k / n;
    out.emplace_back(std::cos(a), std::sin(a));
  }
  return out;
}

}  // namespace wulff
