#include "wulff/cli.hpp"

#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "wulff/approx.hpp"
#include "wulff/hull3.hpp"
#include "wulff/icosphere.hpp"
#include "wulff/io.hpp"
#include "wulff/planar.hpp"
#include "wulff/svg.hpp"

namespace wulff::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

int exit_code(Errc e) {
  switch (e) {
    case Errc::Schema: return 2;
    case Errc::ToleranceNotMet:
    case Errc::CensusFailure:
    case Errc::SolverFailure: return 4;
    default: return 3;
  }
}

std::string out_path(const RunConfig& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

void emit(const RunConfig& c, std::ostream& out, const std::string& name, json j) {
  j["seed"] = c.seed;
  const std::string text = j.dump(2) + "\n";
  io::write_text_file(out_path(c, name), text);
  out << text;
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw Error(Errc::Schema, c.command + " expects exactly one --input");
  return c.inputs.front();
}

ConvexIntegrand load_integrand(const RunConfig& c) { return io::integrand_from_json(io::read_json_file(single_input(c))); }

SphericalBody load_body(const std::string& path) { return io::body_from_json(io::read_json_file(path)); }

double tol_or(const RunConfig& c, double def) { return c.tol < 0.0 ? def : c.tol; }
int grid_or(const RunConfig& c, int def) { return c.grid > 0 ? c.grid : def; }

void require_convex(const ConvexIntegrand& g, int grid, double tol) {
  const ConvexityCheck chk = check_convex_integrand(g, grid, tol);
  if (!chk.convex) {
    std::ostringstream m;
    m << "not a convex integrand: inverted graph point " << chk.worst_index << " lies " << chk.max_depth
      << " inside the hull";
    throw Error(Errc::InvalidIntegrand, m.str());
  }
}

std::vector<Vec2> hull_of_projection(const std::vector<Vec3>& pts) {
  std::vector<Vec2> p2;
  for (const auto& p : pts) p2.emplace_back(p.x(), p.y());
  return convex_hull_2d(p2);
}

// Wulff shape and dual Wulff shape for n = 2 from the hull of the inverted graph.
struct Spatial {
  std::vector<Vec3> wulff;
  Hull3 dual;
};

Spatial spatial_shapes(const ConvexIntegrand& g, int grid) {
  std::vector<Vec3> inv;
  for (const auto& t : icosphere_with_at_least(grid).nodes) inv.push_back(-t / g(t));
  Spatial s{{}, convex_hull_3d(inv)};
  // The Wulff shape is the polar of the reflected dual: face (n, d) -> -n / d.
  for (std::size_t f = 0; f < s.dual.faces.size(); ++f) {
    const Vec3 v = -s.dual.normals[f] / s.dual.offsets[f];
    bool dup = false;
    for (const auto& w : s.wulff)
      if ((w - v).norm() <= 1e-9 * std::max(1.0, v.norm())) dup = true;
    if (!dup) s.wulff.push_back(v);
  }
  return s;
}

json points_json(const std::vector<Vec3>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({p.x(), p.y(), p.z()});
  return a;
}

int cmd_build(const RunConfig& c, std::ostream& out, bool dual_only) {
  const ConvexIntegrand g = load_integrand(c);
  const int grid = grid_or(c, g.dim() == 1 ? 720 : 2562);
  require_convex(g, grid, tol_or(c, 1e-9));
  const std::string prefix = dual_only ? "dual" : "wulff";
  if (g.dim() == 1) {
    const DualWulff d = build_dual_wulff(g, grid);
    io::write_text_file(out_path(c, "dual.json"), io::to_json(d).dump(2) + "\n");
    std::vector<svg::PlanarLayer> layers{{d.vertices, {"#c0392b"}}};
    json summary{{"command", c.command}, {"n", 1}, {"grid", grid}, {"dual_vertices", d.vertices.size()}};
    if (!dual_only) {
      const WulffPolygon w = build_wulff(g, grid);
      io::write_text_file(out_path(c, "wulff.json"), io::to_json(w).dump(2) + "\n");
      layers.insert(layers.begin(), svg::PlanarLayer{w.vertices, {"#1f4e9c"}});
      summary["wulff_vertices"] = w.vertices.size();
    }
    io::write_text_file(out_path(c, prefix + ".svg"), svg::planar(layers, true));
    emit(c, out, prefix + "_summary.json", summary);
    return 0;
  }
  const Spatial s = spatial_shapes(g, grid);
  json dj;
  dj["vertices"] = points_json(s.dual.points);
  json faces = json::array();
  for (const auto& f : s.dual.faces) faces.push_back({f[0], f[1], f[2]});
  dj["faces"] = std::move(faces);
  io::write_text_file(out_path(c, "dual.json"), dj.dump(2) + "\n");
  std::vector<svg::PlanarLayer> layers{{hull_of_projection(s.dual.points), {"#c0392b"}}};
  json summary{{"command", c.command}, {"n", 2}, {"grid", grid}, {"dual_faces", s.dual.faces.size()}};
  if (!dual_only) {
    io::write_text_file(out_path(c, "wulff.json"), json{{"vertices", points_json(s.wulff)}}.dump(2) + "\n");
    layers.insert(layers.begin(), svg::PlanarLayer{hull_of_projection(s.wulff), {"#1f4e9c"}});
    summary["wulff_vertices"] = s.wulff.size();
  }
  io::write_text_file(out_path(c, prefix + ".svg"), svg::planar(layers, true));
  emit(c, out, prefix + "_summary.json", summary);
  return 0;
}

Eigen::VectorXd parse_dir(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Errc::Schema, "--dir must be a comma-separated list of numbers");
    }
  }
  Eigen::VectorXd d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[static_cast<int>(i)] = v[i];
  return d;
}

int cmd_apex(const RunConfig& c, std::ostream& out) {
  const ConvexIntegrand g = load_integrand(c);
  Eigen::VectorXd p;
  if (!c.dir.empty()) {
    p = parse_dir(c.dir);
  } else if (g.kind() == IntegrandKind::Patched) {
    p = g.patch_direction();
  } else {
    throw Error(Errc::Schema, "apex needs --dir unless the integrand is apex-patched");
  }
  if (p.size() != g.dim() + 1 || !(p.norm() > 0.0)) throw Error(Errc::Schema, "--dir has the wrong dimension");
  Theorem1Options opt;
  opt.grid = grid_or(c, opt.grid);
  opt.tol = tol_or(c, opt.tol);
  opt.sections = c.sections;
  const Theorem1Report r = theorem1_report(g, p.normalized(), opt);
  json j = io::to_json(r);
  j["direction"] = json::array();
  for (int i = 0; i < p.size(); ++i) j["direction"].push_back(p.normalized()[i]);
  emit(c, out, "apex.json", j);
  return r.agree ? 0 : 1;
}

int cmd_polar(const RunConfig& c, std::ostream& out) {
  const SphericalBody b = load_body(single_input(c));
  const SphericalBody d = polar_dual(b);
  io::write_text_file(out_path(c, "polar.svg"),
                      svg::spherical({{&b, {"#1f4e9c"}}, {&d, {"#c0392b"}}}, b.witness()));
  emit(c, out, "polar.json", io::body_to_json(d));
  return 0;
}

int cmd_width(const RunConfig& c, std::ostream& out) {
  const SphericalBody b = load_body(single_input(c));
  const ConstantWidth cw = is_constant_width(b, tol_or(c, 1e-9), grid_or(c, kWidthSamples));
  io::write_text_file(out_path(c, "width.csv"), io::width_csv(cw.report));
  json j = io::to_json(cw.report);
  j["constant_width"] = cw.constant;
  j["tau"] = cw.tau;
  emit(c, out, "width.json", j);
  return 0;
}

int cmd_approx(const RunConfig& c, std::ostream& out) {
  const SphericalBody b = load_body(single_input(c));
  ApproxOptions opt;
  opt.eps = c.eps;
  opt.tol_w = tol_or(c, opt.tol_w);
  opt.m_cap = grid_or(c, opt.m_cap);
  opt.strict = false;
  if (!(opt.eps > 0.0) || !(opt.tol_w > 0.0)) throw Error(Errc::Schema, "--eps and --tol must be positive");
  const ConstantWidth cw = is_constant_width(b, opt.input_width_tol);
  if (!cw.constant) throw Error(Errc::InvalidBody, "input body is not of constant width");
  if (std::abs(cw.tau - kHalfPi) <= 1e-6) {
    throw Error(Errc::InvalidBody, "bodies of constant width pi/2 are outside the approximation scheme");
  }
  const bool large = cw.tau > kHalfPi;
  const ApproxResult r = large ? theorem2_pipeline(b, opt) : approximate_cw_small(b, opt);
  const SphericalBody d = polar_dual(b);
  std::vector<svg::SphereLayer> layers{{&b, {"#1f4e9c"}}};
  if (large) layers.push_back({&d, {"#7f8c8d"}});
  layers.push_back({&r.body, {"#c0392b"}});
  io::write_text_file(out_path(c, "approx.svg"), svg::spherical(layers, b.witness()));
  json j;
  j["mode"] = large ? "large-width" : "small-width";
  j["report"] = io::to_json(r.report);
  j["status"] = r.report.success ? "ok" : (r.report.tolerance_met ? "census failure" : "tolerance not met");
  j["body"] = io::body_to_json(r.body);
  emit(c, out, "approx.json", j);
  return r.report.success ? 0 : 4;
}

int cmd_hausdorff(const RunConfig& c, std::ostream& out) {
  if (c.inputs.size() != 2) throw Error(Errc::Schema, "hausdorff expects two --input bodies");
  const SphericalBody a = load_body(c.inputs[0]), b = load_body(c.inputs[1]);
  emit(c, out, "hausdorff.json", io::to_json(hausdorff_sph(a, b, grid_or(c, kHausdorffSamples))));
  return 0;
}

int cmd_render(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw Error(Errc::Schema, "render expects at least one --input body");
  static const char* kColors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d35400"};
  std::vector<SphericalBody> bodies;
  for (const auto& p : c.inputs) bodies.push_back(load_body(p));
  std::vector<svg::SphereLayer> layers;
  json list = json::array();
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    layers.push_back({&bodies[i], {kColors[i % 5]}});
    list.push_back({{"input", c.inputs[i]}, {"features", bodies[i].size()}, {"perimeter", bodies[i].perimeter()}});
  }
  io::write_text_file(out_path(c, "render.svg"), svg::spherical(layers, bodies.front().witness()));
  emit(c, out, "render.json", json{{"bodies", list}});
  return 0;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.tol < 0.0 && c.tol != -1.0) throw Error(Errc::Schema, "--tol must be non-negative");
    fs::create_directories(c.out);
    if (c.command == "build") return cmd_build(c, out, false);
    if (c.command == "dual") return cmd_build(c, out, true);
    if (c.command == "apex") return cmd_apex(c, out);
    if (c.command == "polar") return cmd_polar(c, out);
    if (c.command == "width") return cmd_width(c, out);
    if (c.command == "approx-cw") return cmd_approx(c, out);
    if (c.command == "hausdorff") return cmd_hausdorff(c, out);
    if (c.command == "render") return cmd_render(c, out);
    throw Error(Errc::Schema, "unknown command '" + c.command + "'");
  } catch (const Error& e) {
    err << "wulffc: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "wulffc: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wulff shapes, spherical polar duality and constant-width approximation"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"build", "planar or spatial Wulff shape and its dual from an integrand"},
      {"dual", "dual Wulff shape from an integrand"},
      {"apex", "three-condition report at an apex direction"},
      {"polar", "polar body of a spherical body"},
      {"width", "width profile over all supporting hemispheres"},
      {"approx-cw", "approximate a constant-width body by arcs and great segments"},
      {"hausdorff", "Hausdorff distance between two spherical bodies"},
      {"render", "orthographic SVG of spherical bodies"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.inputs, "input JSON file (repeatable)")->required();
    sub->add_option("--grid", cfg.grid, "grid or sample count");
    sub->add_option("--tol", cfg.tol, "tolerance");
    sub->add_option("--eps", cfg.eps, "target Hausdorff distance");
    sub->add_option("--seed", cfg.seed, "random seed recorded in reports");
    sub->add_option("--out", cfg.out, "output directory");
    if (name == "apex") {
      sub->add_option("--dir", cfg.dir, "apex direction x,y[,z]");
      sub->add_option("--sections", cfg.sections, "section planes for spatial apex detection");
    }
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }
  return run(cfg, out, err);
}

}  // namespace wulff::cli
