#include "wulff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wulff/icosphere.hpp"

namespace wulff::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(Errc::Schema, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) schema(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

Eigen::VectorXd vec(const json& j, int dim, const char* what) {
  if (!j.is_array() || (dim > 0 && static_cast<int>(j.size()) != dim)) {
    schema(std::string("'") + what + "' must be an array of " + std::to_string(dim) + " numbers");
  }
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = number(j[i], what);
  return v;
}

Vec3 vec3(const json& j, const char* what) { return vec(j, 3, what); }

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string("'") + what + "' must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

json arr(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ConvexIntegrand support_from_json(int n, const json& body) {
  const std::string type = field(body, "type").is_string() ? body.at("type").get<std::string>() : "";
  if (type == "polygon" || type == "polytope") {
    const int d = type == "polygon" ? 2 : 3;
    if (n + 1 != d) schema("support body type does not match n");
    const json& vs = field(body, "vertices");
    if (!vs.is_array()) schema("'vertices' must be an array");
    if (d == 2) {
      std::vector<Vec2> v;
      for (const auto& x : vs) v.push_back(vec(x, 2, "vertices"));
      return ConvexIntegrand::support_polygon(std::move(v));
    }
    std::vector<Vec3> v;
    for (const auto& x : vs) v.push_back(vec(x, 3, "vertices"));
    return ConvexIntegrand::support_polytope(std::move(v));
  }
  if (type == "ellipse" || type == "ellipsoid") {
    const int d = n + 1;
    const json& m = field(body, "matrix");
    if (!m.is_array() || static_cast<int>(m.size()) != d) schema("'matrix' must be square of size n + 1");
    Eigen::MatrixXd A(d, d);
    for (int r = 0; r < d; ++r) A.row(r) = vec(m[r], d, "matrix").transpose();
    return ConvexIntegrand::support_ellipsoid(A);
  }
  schema("support body 'type' must be polygon, polytope, ellipse or ellipsoid");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    schema(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

ConvexIntegrand integrand_from_json(const json& j) {
  if (!j.is_object()) schema("integrand must be a JSON object");
  const int n = integer(field(j, "n"), "n");
  if (n != 1 && n != 2) schema("'n' must be 1 or 2");
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) schema("'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "constant") return ConvexIntegrand::constant(n, number(field(j, "value"), "value"));
  if (kind == "support") return support_from_json(n, field(j, "body"));
  if (kind == "patched") {
    const ConvexIntegrand base = integrand_from_json(field(j, "base"));
    if (base.dim() != n) schema("patched base has a different n");
    const Eigen::VectorXd p = vec(field(j, "apex"), n + 1, "apex");
    if (!(p.norm() > 0.0)) throw Error(Errc::InvalidIntegrand, "apex direction is zero");
    const double c = number(field(j, "height"), "height");
    try {
      return patch_apex(base, p.normalized(), c);
    } catch (const Error& e) {
      throw Error(Errc::InvalidIntegrand, e.what());
    }
  }
  if (kind == "table") {
    const double lip = number(field(j, "lipschitz"), "lipschitz");
    std::vector<double> values = numbers(field(j, "values"), "values");
    if (n == 1) return ConvexIntegrand::table_circle(std::move(values), lip);
    return ConvexIntegrand::table_icosphere(integer(field(j, "level"), "level"), std::move(values), lip);
  }
  schema("'kind' must be constant, support, patched or table");
}

namespace {

SphericalBody generated_body(const json& j) {
  const std::string g = field(j, "generator").is_string() ? j.at("generator").get<std::string>() : "";
  SphericalBody body = [&]() -> SphericalBody {
    if (g == "reuleaux") return reuleaux_regular(integer(field(j, "k"), "k"), number(field(j, "tau"), "tau"));
    if (g == "cap") {
      const Vec3 c = vec3(field(j, "center"), "center");
      if (!(c.norm() > 0.0)) throw Error(Errc::InvalidBody, "cap center is zero");
      return SphericalBody::cap(UnitVec3::normalized(c), number(field(j, "rho"), "rho"));
    }
    if (g == "polygon" || g == "hull") {
      const json& vs = field(j, g == "polygon" ? "vertices" : "points");
      if (!vs.is_array()) schema("point list must be an array");
      std::vector<Vec3> v;
      for (const auto& x : vs) v.push_back(vec3(x, "vertices"));
      return g == "polygon" ? SphericalBody::polygon(v) : s_conv(v);
    }
    schema("'generator' must be reuleaux, cap, polygon or hull");
  }();
  if (j.contains("polar")) {
    if (!j.at("polar").is_boolean()) schema("'polar' must be a boolean");
    if (j.at("polar").get<bool>()) return polar_dual(body);
  }
  return body;
}

}  // namespace

SphericalBody body_from_json(const json& j) {
  if (!j.is_object()) schema("body must be a JSON object");
  try {
    if (j.contains("generator")) return generated_body(j);
    const json& fs = field(j, "features");
    if (!fs.is_array() || fs.empty()) schema("'features' must be a non-empty array");
    std::vector<ArcSpec> arcs;
    std::vector<std::pair<Vec3, std::pair<Vec3, Vec3>>> declared;
    for (const auto& f : fs) {
      const json& k = field(f, "kind");
      if (!k.is_string()) schema("feature 'kind' must be a string");
      const std::string kind = k.get<std::string>();
      if (kind == "arc" || kind == "segment") {
        const Vec3 from = vec3(field(f, "from"), "from"), to = vec3(field(f, "to"), "to");
        Vec3 center;
        double rho = kHalfPi;
        if (kind == "arc") {
          center = vec3(field(f, "center"), "center");
          rho = number(field(f, "rho"), "rho");
        } else if (f.contains("center")) {
          center = vec3(f.at("center"), "center");
        } else {
          center = from.cross(to);
        }
        if (!(center.norm() > 0.0) || !(from.norm() > 0.0) || !(to.norm() > 0.0)) {
          throw Error(Errc::InvalidBody, "feature has a zero vector");
        }
        arcs.push_back({center.normalized(), rho, from.normalized(), to.normalized()});
      } else if (kind == "vertex") {
        const json& ns = field(f, "normals");
        if (!ns.is_array() || ns.size() != 2) schema("vertex 'normals' must hold two vectors");
        declared.push_back({vec3(field(f, "point"), "point"), {vec3(ns[0], "normals"), vec3(ns[1], "normals")}});
      } else {
        schema("feature 'kind' must be arc, segment or vertex");
      }
    }
    if (arcs.empty()) throw Error(Errc::InvalidBody, "body has no arcs or segments");
    Vec3 w = Vec3::Zero();
    if (j.contains("witness")) {
      w = vec3(j.at("witness"), "witness");
    } else {
      for (const auto& a : arcs) w += (a.from + a.to).normalized();
    }
    if (!(w.norm() > 0.0)) throw Error(Errc::InvalidBody, "witness is zero");
    SphericalBody body = SphericalBody::from_arcs(arcs, w);
    body.validate(true);
    for (const auto& [p, nn] : declared) {
      bool ok = false;
      for (const auto& f : body.features()) {
        if (f.kind() != FeatureKind::Vertex || angle_between(f.center, p.normalized()) > 1e-6) continue;
        ok = angle_between(f.normal_in(), nn.first.normalized()) <= 1e-6 &&
             angle_between(f.normal_out(), nn.second.normalized()) <= 1e-6;
      }
      if (!ok) throw Error(Errc::InvalidBody, "declared vertex does not match the arc chain");
    }
    return body;
  } catch (const Error& e) {
    if (e.code() == Errc::Schema) throw;
    throw Error(Errc::InvalidBody, e.what());
  }
}

json body_to_json(const SphericalBody& c) {
  json fs = json::array();
  for (const auto& f : c.features()) {
    json o;
    o["kind"] = to_string(f.kind());
    switch (f.kind()) {
      case FeatureKind::Vertex:
        o["point"] = arr(f.center);
        o["normals"] = json::array({arr(f.normal_in()), arr(f.normal_out())});
        break;
      case FeatureKind::GreatSegment:
        o["center"] = arr(f.center);
        o["from"] = arr(f.from());
        o["to"] = arr(f.to());
        break;
      case FeatureKind::SmallArc:
        o["center"] = arr(f.center);
        o["rho"] = f.rho;
        o["from"] = arr(f.from());
        o["to"] = arr(f.to());
        break;
    }
    fs.push_back(std::move(o));
  }
  json j;
  j["features"] = std::move(fs);
  j["witness"] = arr(c.witness());
  return j;
}

json to_json(const WulffPolygon& w) {
  json v = json::array();
  for (const auto& p : w.vertices) v.push_back(arr(p));
  json j;
  j["vertices"] = std::move(v);
  j["directions"] = w.directions.size();
  return j;
}

json to_json(const DualWulff& d) {
  json v = json::array();
  for (const auto& p : d.vertices) v.push_back(arr(p));
  json j;
  j["vertices"] = std::move(v);
  j["inverted_points"] = d.inverted_points.size();
  j["boundary_residual"] = d.boundary_residual;
  return j;
}

json to_json(const ApexReport& r) {
  json j;
  j["apex"] = r.apex;
  j["min_cone_width"] = r.min_cone_width;
  j["threshold"] = r.threshold;
  j["sections"] = r.sections;
  j["cone_widths"] = r.cone_widths;
  return j;
}

json to_json(const Theorem1Report& r) {
  json j;
  j["cap_law"] = r.cap_law;
  j["cap_delta"] = r.cap_delta;
  j["cap_residual"] = r.cap_residual;
  j["local_max"] = r.local_max;
  j["local_max_delta"] = r.local_max_delta;
  j["apex"] = r.apex;
  j["apex_detail"] = to_json(r.apex_detail);
  j["dual_flat"] = r.dual_flat;
  j["flat_delta"] = r.flat_delta;
  j["flatness_residual"] = r.flatness_residual;
  j["tls_residual"] = r.tls_residual;
  j["resolution"] = r.resolution;
  j["agree"] = r.agree;
  return j;
}

json to_json(const PipelineReport& r) {
  json j;
  j["tau"] = r.tau;
  j["eps"] = r.eps;
  j["achieved"] = r.achieved;
  j["dual_achieved"] = r.dual_achieved;
  j["width_deviation"] = r.width_deviation;
  j["output_width"] = r.output_width;
  j["census"] = {{"arcs", r.census.arcs}, {"segments", r.census.segments}, {"vertices", r.census.vertices}, {"other", r.census.other}};
  j["samples"] = r.samples;
  j["tolerance_met"] = r.tolerance_met;
  j["census_ok"] = r.census_ok;
  j["success"] = r.success;
  return j;
}

json to_json(const DistanceResult& r) {
  json j;
  j["value"] = r.value;
  j["witness_a"] = arr(r.witness_a);
  j["witness_b"] = arr(r.witness_b);
  j["samples"] = r.samples;
  return j;
}

json to_json(const WidthReport& r) {
  json j;
  j["min"] = r.min;
  j["max"] = r.max;
  j["argmin_p"] = arr(r.argmin_p);
  j["argmin_q"] = arr(r.argmin_q);
  j["argmax_p"] = arr(r.argmax_p);
  j["samples"] = r.widths.size();
  return j;
}

std::string width_csv(const WidthReport& r) {
  std::ostringstream out;
  out << "param,center_x,center_y,center_z,width\n";
  char buf[160];
  for (std::size_t i = 0; i < r.widths.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12f,%.12f,%.12f,%.12f,%.12f\n", r.params[i], r.centers[i].x(), r.centers[i].y(),
                  r.centers[i].z(), r.widths[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace wulff::io
