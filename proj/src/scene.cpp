#include "wavebound/scene.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace wavebound::scene {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required key");
  return j.at(key);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

SceneFile parse_json(const json& j) {
  if (!j.is_object()) fail("", "scene file must be a JSON object");
  reject_unknown(j, "", {"grid", "k", "delta", "offdiag_weight", "waveguides", "design_region",
                         "source", "target", "metric", "solver"});
  SceneFile f;

  const json& grid = require(j, "", "grid");
  if (!grid.is_object()) fail("grid", "expected an object");
  reject_unknown(grid, "grid", {"nx", "ny", "pixels_per_wavelength"});
  f.nx = get_int(require(grid, "grid", "nx"), "grid.nx");
  f.ny = get_int(require(grid, "grid", "ny"), "grid.ny");
  if (f.nx < 1) fail("grid.nx", "must be >= 1");
  if (f.ny < 1) fail("grid.ny", "must be >= 1");
  if (grid.contains("pixels_per_wavelength")) {
    f.pixels_per_wavelength = get_number(grid.at("pixels_per_wavelength"), "grid.pixels_per_wavelength");
  }
  if (!(f.pixels_per_wavelength > 0)) fail("grid.pixels_per_wavelength", "must be > 0");

  if (j.contains("k")) f.k = get_number(j.at("k"), "k");
  if (!(f.k > 0)) fail("k", "must be > 0");
  if (j.contains("delta")) f.delta = get_number(j.at("delta"), "delta");
  if (!(f.delta > 0)) fail("delta", "must be > 0");
  if (j.contains("offdiag_weight")) {
    f.offdiag_weight = get_string(j.at("offdiag_weight"), "offdiag_weight");
    if (f.offdiag_weight != "h" && f.offdiag_weight != "h2") {
      fail("offdiag_weight", "must be \"h\" or \"h2\"");
    }
  }

  if (j.contains("waveguides")) {
    const json& wgs = j.at("waveguides");
    if (!wgs.is_array()) fail("waveguides", "expected an array");
    for (size_t i = 0; i < wgs.size(); ++i) {
      const std::string p = "waveguides[" + std::to_string(i) + "]";
      const json& wg = wgs[i];
      if (!wg.is_object()) fail(p, "expected an object");
      reject_unknown(wg, p, {"center_y", "width", "contrast"});
      SceneFile::Waveguide w;
      w.center_y = get_number(require(wg, p, "center_y"), p + ".center_y");
      w.width = get_number(require(wg, p, "width"), p + ".width");
      if (wg.contains("contrast")) w.contrast = get_number(wg.at("contrast"), p + ".contrast");
      if (!(w.width > 0)) fail(p + ".width", "must be > 0");
      if (w.contrast < 0 || w.contrast > 1) fail(p + ".contrast", "must lie in [0,1]");
      f.waveguides.push_back(w);
    }
  }

  if (j.contains("design_region")) {
    const json& dr = j.at("design_region");
    if (!dr.is_object()) fail("design_region", "expected an object");
    reject_unknown(dr, "design_region", {"x0", "y0", "w", "h"});
    f.has_design_region = true;
    f.design_region.x0 = get_number(require(dr, "design_region", "x0"), "design_region.x0");
    f.design_region.y0 = get_number(require(dr, "design_region", "y0"), "design_region.y0");
    f.design_region.w = get_number(require(dr, "design_region", "w"), "design_region.w");
    f.design_region.h = get_number(require(dr, "design_region", "h"), "design_region.h");
    if (!(f.design_region.w > 0)) fail("design_region.w", "must be > 0");
    if (!(f.design_region.h > 0)) fail("design_region.h", "must be > 0");
  }

  const json& src = require(j, "", "source");
  if (!src.is_object()) fail("source", "expected an object");
  reject_unknown(src, "source", {"type", "order", "column", "row"});
  f.source.type = get_string(require(src, "source", "type"), "source.type");
  if (f.source.type != "mode" && f.source.type != "point") {
    fail("source.type", "must be \"mode\" or \"point\"");
  }
  f.source.column = get_int(require(src, "source", "column"), "source.column");
  if (f.source.type == "mode") {
    if (src.contains("order")) f.source.order = get_int(src.at("order"), "source.order");
    if (f.source.order < 1) fail("source.order", "must be >= 1");
    if (src.contains("row")) fail("source.row", "not allowed for mode sources");
  } else {
    f.source.row = get_int(require(src, "source", "row"), "source.row");
    if (src.contains("order")) fail("source.order", "not allowed for point sources");
  }

  if (j.contains("target")) {
    const json& tgt = j.at("target");
    if (!tgt.is_object()) fail("target", "expected an object");
    reject_unknown(tgt, "target", {"type", "order", "region", "spot"});
    f.target.type = get_string(require(tgt, "target", "type"), "target.type");
    if (f.target.type != "mode" && f.target.type != "focus") {
      fail("target.type", "must be \"mode\" or \"focus\"");
    }
    if (tgt.contains("region")) {
      const json& reg = tgt.at("region");
      if (!reg.is_object()) fail("target.region", "expected an object");
      reject_unknown(reg, "target.region", {"column"});
      f.target.column = get_int(require(reg, "target.region", "column"), "target.region.column");
    }
    if (f.target.type == "mode") {
      if (tgt.contains("order")) f.target.order = get_int(tgt.at("order"), "target.order");
      if (f.target.order < 1) fail("target.order", "must be >= 1");
      if (tgt.contains("spot")) fail("target.spot", "not allowed for mode targets");
    } else {
      const json& spot = require(tgt, "target", "spot");
      if (!spot.is_object()) fail("target.spot", "expected an object");
      reject_unknown(spot, "target.spot", {"y0", "h"});
      f.target.spot_y0 = get_number(require(spot, "target.spot", "y0"), "target.spot.y0");
      f.target.spot_h = get_number(require(spot, "target.spot", "h"), "target.spot.h");
      if (!(f.target.spot_h > 0)) fail("target.spot.h", "must be > 0");
      if (tgt.contains("order")) fail("target.order", "not allowed for focus targets");
    }
  }

  if (j.contains("metric")) {
    f.metric = get_string(j.at("metric"), "metric");
    if (f.metric != "purity" && f.metric != "focusing") {
      fail("metric", "must be \"purity\" or \"focusing\"");
    }
  }
  if ((f.metric == "purity") != (f.target.type == "mode")) {
    fail("metric", "must match the target type (purity<->mode, focusing<->focus)");
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object()) fail("solver", "expected an object");
    reject_unknown(s, "solver",
                   {"max_iters", "eps_abs", "eps_rel", "rho", "scaling", "cert_tol"});
    if (s.contains("max_iters")) f.solver.max_iters = get_int(s.at("max_iters"), "solver.max_iters");
    if (s.contains("eps_abs")) f.solver.eps_abs = get_number(s.at("eps_abs"), "solver.eps_abs");
    if (s.contains("eps_rel")) f.solver.eps_rel = get_number(s.at("eps_rel"), "solver.eps_rel");
    if (s.contains("rho")) f.solver.rho = get_number(s.at("rho"), "solver.rho");
    if (s.contains("scaling")) f.solver.scaling = get_bool(s.at("scaling"), "solver.scaling");
    if (s.contains("cert_tol")) f.solver.cert_tol = get_number(s.at("cert_tol"), "solver.cert_tol");
    if (f.solver.max_iters < 1) fail("solver.max_iters", "must be >= 1");
    if (!(f.solver.eps_abs > 0) || !(f.solver.eps_rel > 0)) fail("solver.eps_abs", "must be > 0");
    if (!(f.solver.rho > 0)) fail("solver.rho", "must be > 0");
    if (!(f.solver.cert_tol > 0)) fail("solver.cert_tol", "must be > 0");
  }
  return f;
}

}  // namespace

SceneFile parse_scene_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_json(j);
}

SceneFile parse_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str());
}

std::string serialize_scene(const SceneFile& f) {
  json j;
  j["grid"] = {{"nx", f.nx}, {"ny", f.ny}, {"pixels_per_wavelength", f.pixels_per_wavelength}};
  j["k"] = f.k;
  j["delta"] = f.delta;
  j["offdiag_weight"] = f.offdiag_weight;
  if (!f.waveguides.empty()) {
    json arr = json::array();
    for (const auto& w : f.waveguides) {
      arr.push_back({{"center_y", w.center_y}, {"width", w.width}, {"contrast", w.contrast}});
    }
    j["waveguides"] = arr;
  }
  if (f.has_design_region) {
    j["design_region"] = {{"x0", f.design_region.x0},
                          {"y0", f.design_region.y0},
                          {"w", f.design_region.w},
                          {"h", f.design_region.h}};
  }
  json src = {{"type", f.source.type}, {"column", f.source.column}};
  if (f.source.type == "mode") {
    src["order"] = f.source.order;
  } else {
    src["row"] = f.source.row;
  }
  j["source"] = src;
  json tgt = {{"type", f.target.type}, {"region", {{"column", f.target.column}}}};
  if (f.target.type == "mode") {
    tgt["order"] = f.target.order;
  } else {
    tgt["spot"] = {{"y0", f.target.spot_y0}, {"h", f.target.spot_h}};
  }
  j["target"] = tgt;
  j["metric"] = f.metric;
  j["solver"] = {{"max_iters", f.solver.max_iters}, {"eps_abs", f.solver.eps_abs},
                 {"eps_rel", f.solver.eps_rel},     {"rho", f.solver.rho},
                 {"scaling", f.solver.scaling},     {"cert_tol", f.solver.cert_tol}};
  return j.dump(2) + "\n";
}

BuiltScene build_scene(const SceneFile& f) {
  BuiltScene out;
  out.file = f;
  out.metric = f.metric == "purity" ? MetricKind::purity : MetricKind::focusing;

  helmholtz::Scene& sc = out.scene;
  sc.grid.nx = f.nx;
  sc.grid.ny = f.ny;
  sc.grid.h = 1.0 / f.pixels_per_wavelength;
  sc.grid.k = f.k;
  sc.delta = f.delta;
  sc.offdiag_weight = f.offdiag_weight == "h" ? helmholtz::OffDiagWeight::paper_h
                                              : helmholtz::OffDiagWeight::area_h2;

  const int n = sc.grid.pixels();
  sc.background_contrast = Eigen::VectorXd::Zero(n);
  sc.design_mask.assign(n, 0);

  for (const auto& wg : f.waveguides) {
    for (int r = 0; r < f.ny; ++r) {
      if (std::abs(sc.grid.y_of(r) - wg.center_y) <= 0.5 * wg.width) {
        for (int c = 0; c < f.nx; ++c) {
          sc.background_contrast[sc.grid.index(r, c)] = wg.contrast;
        }
      }
    }
  }

  if (f.has_design_region) {
    auto px = [&](double v) { return static_cast<int>(std::lround(v * f.pixels_per_wavelength)); };
    out.design.col0 = px(f.design_region.x0);
    out.design.row0 = px(f.design_region.y0);
    out.design.cols = std::max(1, px(f.design_region.w));
    out.design.rows = std::max(1, px(f.design_region.h));
    if (out.design.col0 < 0 || out.design.row0 < 0 || out.design.col0 + out.design.cols > f.nx ||
        out.design.row0 + out.design.rows > f.ny) {
      throw SchemaError("design_region: extends outside the grid");
    }
    for (int r = out.design.row0; r < out.design.row0 + out.design.rows; ++r) {
      for (int c = out.design.col0; c < out.design.col0 + out.design.cols; ++c) {
        const int i = sc.grid.index(r, c);
        sc.design_mask[i] = 1;
        sc.background_contrast[i] = 0.0;  // design layer overrides fixed structure
      }
    }
  }

  sc.source.type = f.source.type == "mode" ? helmholtz::SourceSpec::Type::waveguide_mode
                                           : helmholtz::SourceSpec::Type::point;
  sc.source.order = f.source.order;
  sc.source.column = f.source.column;
  sc.source.row = f.source.row;

  sc.target.order = f.target.order;
  sc.target.column = f.target.column;
  if (f.target.type == "focus") {
    auto px = [&](double v) { return static_cast<int>(std::lround(v * f.pixels_per_wavelength)); };
    sc.target.spot_row0 = px(f.target.spot_y0);
    sc.target.spot_rows = std::max(1, px(f.target.spot_h));
    if (sc.target.spot_row0 < 0 || sc.target.spot_row0 + sc.target.spot_rows > f.ny) {
      throw SchemaError("target.spot: extends outside the grid");
    }
  }

  sc.validate();
  return out;
}

bool operator==(const SceneFile& a, const SceneFile& b) {
  return serialize_scene(a) == serialize_scene(b);
}

}  // namespace wavebound::scene
