// helmholtz.hpp -- 2D scene geometry, Green's-operator assembly, slab
// waveguide mode extraction, and dense forward scattering solves.
#ifndef WAVEBOUND_HELMHOLTZ_HPP
#define WAVEBOUND_HELMHOLTZ_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace wavebound::helmholtz {

/// Regular pixel grid. Index layout is row-major with row 0 at the top;
/// pixel centers sit at ((col+1/2) h, (row+1/2) h) in free-space wavelengths.
struct Grid {
  int nx = 1;    // columns
  int ny = 1;    // rows
  double h = 1.0 / 60.0;
  double k = 2.0 * 3.14159265358979323846;

  int pixels() const { return nx * ny; }
  int index(int row, int col) const { return row * nx + col; }
  double x_of(int col) const { return (col + 0.5) * h; }
  double y_of(int row) const { return (row + 0.5) * h; }
  void validate() const;
};

enum class OffDiagWeight : std::uint8_t {
  paper_h,   // Riemann weight h (literal reproduction switch)
  area_h2,   // Riemann weight h^2 (default; consistent with the diagonal)
};

struct SourceSpec {
  enum class Type : std::uint8_t { waveguide_mode, point };
  Type type = Type::waveguide_mode;
  int order = 1;   // 1-based guided-mode order
  int column = 0;  // column of the current sheet (mode) or of the point
  int row = 0;     // point sources only
};

struct TargetSpec {
  int order = 2;    // guided-mode order of the desired output
  int column = -1;  // selector column; -1 means the rightmost column
  // Focusing metrics: spot rows [spot_row0, spot_row0 + spot_rows).
  int spot_row0 = 0;
  int spot_rows = 0;
};

struct Scene {
  Grid grid;
  double delta = 10.0;                  // maximum material contrast
  Eigen::VectorXd background_contrast;  // per pixel, in [0,1]
  std::vector<std::uint8_t> design_mask;
  SourceSpec source;
  TargetSpec target;
  OffDiagWeight offdiag_weight = OffDiagWeight::area_h2;

  void validate() const;
  int target_column() const;
};

/// Dense discretized Green's operator. Entries depend only on the pixel
/// distance, so the matrix is exactly symmetric; the diagonal carries the
/// regularized closed form.
struct GreenOperator {
  Eigen::MatrixXcd entries;
  Grid grid;
  double delta = 0.0;
};

/// Off-diagonal: -delta (i/4) w H0(k |x_i - x_j|) with w = h or h^2.
/// Diagonal: delta (4/(pi k^2) - (i h / k) H1(k h / 2)).
/// Rejects grids with more than max_pixels pixels.
GreenOperator assemble_green(const Scene& scene, int max_pixels = 20000);

struct WaveguideMode {
  Eigen::VectorXd profile;  // unit norm, largest-magnitude entry positive
  double eigenvalue;
};

/// All eigenpairs of the transverse operator d^2/dy^2 + k^2 (1 + delta kappa(y))
/// at the given column (three-point stencil, zero boundary values), sorted by
/// descending eigenvalue.
std::vector<WaveguideMode> waveguide_modes(const Scene& scene, int column);

/// The order-th guided mode (1-based; guided means eigenvalue > k^2).
/// Throws when fewer guided modes exist.
WaveguideMode guided_mode(const Scene& scene, int column, int order);

/// Excitation vector: the selected mode profile on the source column, or a
/// unit entry for a point source.
Eigen::VectorXcd build_excitation(const Scene& scene);

/// Solves (I + G diag(theta_total)) z = G b by dense LU, where theta_total
/// merges the design values (on design pixels) with the background contrast.
/// theta_prime is full-grid sized and must vanish outside the design mask and
/// background support.
Eigen::VectorXcd simulate(const Scene& scene, const GreenOperator& green,
                          const Eigen::VectorXd& theta_prime);

/// Convenience overload that assembles the Green's operator internally.
Eigen::VectorXcd simulate(const Scene& scene, const Eigen::VectorXd& theta_prime);

/// Merged per-pixel contrast used by simulate.
Eigen::VectorXd total_contrast(const Scene& scene, const Eigen::VectorXd& theta_prime);

}  // namespace wavebound::helmholtz

#endif
