#include "wulff/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace wulff::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string path(const std::vector<Vec2>& pts, bool close) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += (i == 0 ? "M" : " L") + fmt(pts[i].x()) + "," + fmt(-pts[i].y());
  }
  if (close) d += " Z";
  return d;
}

std::string header(double x0, double y0, double w, double h) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"" << fmt(x0)
    << " " << fmt(y0) << " " << fmt(w) << " " << fmt(h) << "\">\n";
  return o.str();
}

}  // namespace

std::string planar(const std::vector<PlanarLayer>& layers, bool mark_origin) {
  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
  for (const auto& l : layers)
    for (const auto& p : l.polygon) {
      lo_x = std::min(lo_x, p.x());
      hi_x = std::max(hi_x, p.x());
      lo_y = std::min(lo_y, -p.y());
      hi_y = std::max(hi_y, -p.y());
    }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.08 * span;
  std::ostringstream o;
  o << header(lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad);
  const std::string sw = fmt(span / 300.0);
  for (const auto& l : layers) {
    o << "  <path d=\"" << path(l.polygon, true) << "\" stroke=\"" << l.style.stroke << "\" fill=\"" << l.style.fill
      << "\" stroke-width=\"" << sw << "\"/>\n";
  }
  if (mark_origin) o << "  <circle cx=\"0\" cy=\"0\" r=\"" << fmt(span / 150.0) << "\" fill=\"black\"/>\n";
  o << "</svg>\n";
  return o.str();
}

std::string spherical(const std::vector<SphereLayer>& layers, const Vec3& view_in, int samples) {
  const Vec3 view = view_in.normalized();
  const auto [e1, e2] = tangent_frame(view);
  std::ostringstream o;
  o << header(-1.1, -1.1, 2.2, 2.2);
  o << "  <circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"gray\" fill=\"none\" stroke-width=\"0.004\"/>\n";
  for (const auto& l : layers) {
    std::vector<Vec2> pts;
    for (const auto& s : l.body->boundary_samples(samples)) {
      if (l.body->features()[s.feature].kind() == FeatureKind::Vertex) continue;
      pts.emplace_back(s.point.dot(e1), s.point.dot(e2));
    }
    o << "  <path d=\"" << path(pts, true) << "\" stroke=\"" << l.style.stroke << "\" fill=\"" << l.style.fill
      << "\" stroke-width=\"0.006\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace wulff::svg
