#include "wavebound/helmholtz.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wavebound/specialfn.hpp"

namespace wavebound::helmholtz {

namespace {
constexpr double kPi = 3.14159265358979323846264338;
using Complex = std::complex<double>;
}  // namespace

void Grid::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("Grid: nx and ny must be >= 1");
  if (!(h > 0.0) || !(k > 0.0)) throw std::invalid_argument("Grid: h and k must be > 0");
}

void Scene::validate() const {
  grid.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("Scene: delta must be > 0");
  const int n = grid.pixels();
  if (background_contrast.size() != n || static_cast<int>(design_mask.size()) != n) {
    throw std::invalid_argument("Scene: per-pixel arrays must match the grid");
  }
  for (int i = 0; i < n; ++i) {
    if (background_contrast[i] < 0.0 || background_contrast[i] > 1.0) {
      throw std::invalid_argument("Scene: background contrast outside [0,1]");
    }
  }
  if (source.column < 0 || source.column >= grid.nx) {
    throw std::invalid_argument("Scene: source column out of range");
  }
  if (source.type == SourceSpec::Type::point && (source.row < 0 || source.row >= grid.ny)) {
    throw std::invalid_argument("Scene: point source row out of range");
  }
  if (target.column < -1 || target.column >= grid.nx) {
    throw std::invalid_argument("Scene: target column out of range");
  }
}

int Scene::target_column() const {
  return target.column < 0 ? grid.nx - 1 : target.column;
}

GreenOperator assemble_green(const Scene& scene, int max_pixels) {
  scene.validate();
  const int n = scene.grid.pixels();
  if (n > max_pixels) {
    throw std::length_error("assemble_green: grid exceeds the pixel cap");
  }
  const double h = scene.grid.h;
  const double k = scene.grid.k;
  const double w = scene.offdiag_weight == OffDiagWeight::paper_h ? h : h * h;
  const Complex off_factor = -scene.delta * Complex(0.0, 0.25) * w;
  const Complex diag_value =
      scene.delta * (4.0 / (kPi * k * k) - Complex(0.0, 1.0) * (h / k) * specialfn::hankel1(0.5 * k * h));

  GreenOperator op;
  op.grid = scene.grid;
  op.delta = scene.delta;
  op.entries.resize(n, n);
  const int nx = scene.grid.nx;
  for (int i = 0; i < n; ++i) {
    const int ri = i / nx, ci = i % nx;
    const double xi = scene.grid.x_of(ci), yi = scene.grid.y_of(ri);
    op.entries(i, i) = diag_value;
    for (int j = i + 1; j < n; ++j) {
      const int rj = j / nx, cj = j % nx;
      const double dx = xi - scene.grid.x_of(cj);
      const double dy = yi - scene.grid.y_of(rj);
      const Complex v = off_factor * specialfn::hankel0(k * std::hypot(dx, dy));
      op.entries(i, j) = v;
      op.entries(j, i) = v;
    }
  }
  return op;
}

std::vector<WaveguideMode> waveguide_modes(const Scene& scene, int column) {
  scene.validate();
  if (column < 0 || column >= scene.grid.nx) {
    throw std::invalid_argument("waveguide_modes: column out of range");
  }
  const int ny = scene.grid.ny;
  const double h = scene.grid.h;
  const double k = scene.grid.k;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(ny, ny);
  const double inv_h2 = 1.0 / (h * h);
  for (int r = 0; r < ny; ++r) {
    const double kappa = scene.background_contrast[scene.grid.index(r, column)];
    T(r, r) = -2.0 * inv_h2 + k * k * (1.0 + scene.delta * kappa);
    if (r + 1 < ny) {
      T(r, r + 1) = inv_h2;
      T(r + 1, r) = inv_h2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success) throw std::runtime_error("waveguide_modes: eigensolver failed");

  std::vector<WaveguideMode> modes(ny);
  for (int m = 0; m < ny; ++m) {
    // Eigen sorts ascending; emit descending.
    Eigen::VectorXd v = es.eigenvectors().col(ny - 1 - m);
    v.normalize();
    int imax = 0;
    for (int r = 1; r < ny; ++r) {
      if (std::abs(v[r]) > std::abs(v[imax])) imax = r;
    }
    if (v[imax] < 0.0) v = -v;
    modes[m] = {std::move(v), es.eigenvalues()[ny - 1 - m]};
  }
  return modes;
}

WaveguideMode guided_mode(const Scene& scene, int column, int order) {
  if (order < 1) throw std::invalid_argument("guided_mode: order must be >= 1");
  const auto modes = waveguide_modes(scene, column);
  const double k2 = scene.grid.k * scene.grid.k;
  int guided = 0;
  for (const auto& m : modes) {
    if (m.eigenvalue > k2) ++guided;
  }
  if (order > guided) {
    throw std::runtime_error("guided_mode: requested order exceeds the " +
                             std::to_string(guided) + " guided mode(s) at this column");
  }
  return modes[order - 1];
}

Eigen::VectorXcd build_excitation(const Scene& scene) {
  scene.validate();
  const int n = scene.grid.pixels();
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  if (scene.source.type == SourceSpec::Type::point) {
    b[scene.grid.index(scene.source.row, scene.source.column)] = 1.0;
    return b;
  }
  const WaveguideMode mode = guided_mode(scene, scene.source.column, scene.source.order);
  for (int r = 0; r < scene.grid.ny; ++r) {
    b[scene.grid.index(r, scene.source.column)] = mode.profile[r];
  }
  return b;
}

Eigen::VectorXd total_contrast(const Scene& scene, const Eigen::VectorXd& theta_prime) {
  const int n = scene.grid.pixels();
  if (theta_prime.size() != n) {
    throw std::invalid_argument("total_contrast: theta size must match the grid");
  }
  Eigen::VectorXd total(n);
  for (int i = 0; i < n; ++i) {
    if (theta_prime[i] < -1e-12 || theta_prime[i] > 1.0 + 1e-12) {
      throw std::invalid_argument("total_contrast: theta values must lie in [0,1]");
    }
    if (scene.design_mask[i]) {
      total[i] = theta_prime[i];
    } else {
      if (scene.background_contrast[i] == 0.0 && theta_prime[i] != 0.0) {
        throw std::invalid_argument(
            "total_contrast: theta must vanish outside the design mask and background support");
      }
      total[i] = scene.background_contrast[i];
    }
  }
  return total;
}

Eigen::VectorXcd simulate(const Scene& scene, const GreenOperator& green,
                          const Eigen::VectorXd& theta_prime) {
  scene.validate();
  const int n = scene.grid.pixels();
  if (green.entries.rows() != n) throw std::invalid_argument("simulate: operator/scene mismatch");
  const Eigen::VectorXd theta = total_contrast(scene, theta_prime);

  const Eigen::VectorXcd rhs = green.entries * build_excitation(scene);
  const Eigen::VectorXcd theta_c = theta.cast<Complex>();
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(n, n);
  lhs.noalias() += green.entries * theta_c.asDiagonal();

  const double lhs_norm = lhs.cwiseAbs().maxCoeff();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-14 * lhs_norm) {
    throw std::runtime_error("simulate: system is numerically singular");
  }
  Eigen::VectorXcd z = lu.solve(rhs);

  const Eigen::VectorXcd residual = z + green.entries * theta_c.cwiseProduct(z) - rhs;
  if (residual.norm() > 1e-10 * rhs.norm()) {
    throw std::runtime_error("simulate: residual exceeds tolerance");
  }
  return z;
}

Eigen::VectorXcd simulate(const Scene& scene, const Eigen::VectorXd& theta_prime) {
  return simulate(scene, assemble_green(scene), theta_prime);
}

}  // namespace wavebound::helmholtz
