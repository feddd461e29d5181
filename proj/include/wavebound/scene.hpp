// scene.hpp -- scene-file schema (JSON), validation, and conversion to the
// simulator's domain objects.
#ifndef WAVEBOUND_SCENE_HPP
#define WAVEBOUND_SCENE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "wavebound/helmholtz.hpp"
#include "wavebound/sdp.hpp"

namespace wavebound::scene {

/// Schema violation; the message names the offending field path.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MetricKind { purity, focusing };

/// Validated scene-file contents. Geometry is expressed in free-space
/// wavelengths; pixel quantities are derived on demand.
struct SceneFile {
  int nx = 0;
  int ny = 0;
  double pixels_per_wavelength = 60.0;
  double k = 2.0 * 3.14159265358979323846;
  double delta = 10.0;
  std::string offdiag_weight = "h2";  // "h" | "h2"

  struct Waveguide {
    double center_y = 0.0;
    double width = 0.0;
    double contrast = 1.0;
  };
  std::vector<Waveguide> waveguides;

  struct Rect {
    double x0 = 0.0, y0 = 0.0, w = 0.0, h = 0.0;
  };
  bool has_design_region = false;
  Rect design_region;

  struct Source {
    std::string type = "mode";  // "mode" | "point"
    int order = 1;
    int column = 0;
    int row = 0;  // point sources
  } source;

  struct Target {
    std::string type = "mode";  // "mode" | "focus"
    int order = 2;
    int column = -1;            // -1 = rightmost
    double spot_y0 = 0.0;       // focus only, wavelengths
    double spot_h = 0.0;
  } target;

  std::string metric = "purity";  // "purity" | "focusing"
  sdp::SolverSettings solver;
};

/// Design region in pixel coordinates.
struct DesignRect {
  int col0 = 0, row0 = 0, cols = 0, rows = 0;
  int pixels() const { return cols * rows; }
};

/// Fully built domain objects for one scene file.
struct BuiltScene {
  SceneFile file;
  helmholtz::Scene scene;
  DesignRect design;
  MetricKind metric = MetricKind::purity;
};

/// Parse and validate a scene file. Unknown keys are rejected; errors carry
/// the offending field path. Throws SchemaError (schema) or
/// std::runtime_error (unreadable file).
SceneFile parse_scene_file(const std::string& path);
SceneFile parse_scene_text(const std::string& text);

/// Serialize back to the canonical JSON text (round-trips through parse).
std::string serialize_scene(const SceneFile& file);

/// Convert the validated file into domain objects.
BuiltScene build_scene(const SceneFile& file);

bool operator==(const SceneFile& a, const SceneFile& b);

}  // namespace wavebound::scene

#endif
