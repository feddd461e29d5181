#include "wavebound/physics.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavebound::physics {

std::vector<int> GFormSystem::zero_indices() const {
  std::vector<bool> used(size(), false);
  for (int i : free_indices) used[i] = true;
  for (const auto& [i, v] : fixed_contrast) used[i] = true;
  std::vector<int> zeros;
  for (int i = 0; i < size(); ++i) {
    if (!used[i]) zeros.push_back(i);
  }
  return zeros;
}

void GFormSystem::validate() const {
  const int n = size();
  if (G.rows() != n || G.cols() != n) throw std::invalid_argument("GFormSystem: G size mismatch");
  if (recon_matrix.cols() != n || recon_matrix.rows() != recon_offset.size()) {
    throw std::invalid_argument("GFormSystem: reconstruction map size mismatch");
  }
  std::vector<bool> used(n, false);
  auto mark = [&](int i) {
    if (i < 0 || i >= n || used[i]) {
      throw std::invalid_argument("GFormSystem: index classes must partition the variables");
    }
    used[i] = true;
  };
  for (int i : free_indices) mark(i);
  for (const auto& [i, v] : fixed_contrast) {
    mark(i);
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("GFormSystem: fixed contrast outside [0,1]");
  }
}

GFormSystem make_gform(Eigen::MatrixXd G, Eigen::VectorXd b_prime, std::vector<int> free_indices,
                       std::vector<std::pair<int, double>> fixed_contrast) {
  GFormSystem sys;
  sys.G = std::move(G);
  sys.b_prime = std::move(b_prime);
  sys.free_indices = std::move(free_indices);
  sys.fixed_contrast = std::move(fixed_contrast);
  std::sort(sys.free_indices.begin(), sys.free_indices.end());
  std::sort(sys.fixed_contrast.begin(), sys.fixed_contrast.end());
  sys.recon_matrix = sys.G;
  sys.recon_offset = sys.b_prime;
  sys.validate();
  return sys;
}

Eigen::MatrixXd lift_matrix(const Eigen::MatrixXcd& M) {
  const auto n = M.rows();
  Eigen::MatrixXd out(2 * n, 2 * M.cols());
  out.topLeftCorner(n, M.cols()) = M.real();
  out.topRightCorner(n, M.cols()) = -M.imag();
  out.bottomLeftCorner(n, M.cols()) = M.imag();
  out.bottomRightCorner(n, M.cols()) = M.real();
  return out;
}

Eigen::VectorXd lift_vector(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

LiftedSystem lift_complex(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw std::invalid_argument("lift_complex: dimension mismatch");
  }
  if (!A.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("lift_complex: non-finite entries");
  }
  LiftedSystem out;
  out.system.A = lift_matrix(A);
  out.system.b = lift_vector(b);
  out.pair_offset = static_cast<int>(A.rows());
  return out;
}

GFormSystem aform_to_gform(const AFormSystem& sys) {
  const int n = sys.size();
  Eigen::MatrixXd shifted = sys.A - Eigen::MatrixXd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw std::runtime_error("aform_to_gform: A - I is numerically singular");
  }
  Eigen::MatrixXd G = 2.0 * lu.inverse();
  Eigen::VectorXd b_prime = lu.solve(sys.b);
  std::vector<int> free_all(n);
  for (int i = 0; i < n; ++i) free_all[i] = i;
  return make_gform(std::move(G), std::move(b_prime), std::move(free_all));
}

GFormSystem eliminate_zero_contrast(const GFormSystem& sys) {
  sys.validate();
  std::vector<int> pos;
  pos.reserve(sys.free_indices.size() + sys.fixed_contrast.size());
  for (int i : sys.free_indices) pos.push_back(i);
  for (const auto& [i, v] : sys.fixed_contrast) pos.push_back(i);
  std::sort(pos.begin(), pos.end());

  const int np = static_cast<int>(pos.size());
  std::vector<int> new_pos_of(sys.size(), -1);
  for (int k = 0; k < np; ++k) new_pos_of[pos[k]] = k;

  GFormSystem out;
  out.G.resize(np, np);
  out.b_prime.resize(np);
  for (int k = 0; k < np; ++k) {
    out.b_prime[k] = sys.b_prime[pos[k]];
    for (int l = 0; l < np; ++l) out.G(k, l) = sys.G(pos[k], pos[l]);
  }
  for (int i : sys.free_indices) out.free_indices.push_back(new_pos_of[i]);
  for (const auto& [i, v] : sys.fixed_contrast) out.fixed_contrast.emplace_back(new_pos_of[i], v);
  std::sort(out.free_indices.begin(), out.free_indices.end());
  std::sort(out.fixed_contrast.begin(), out.fixed_contrast.end());

  // Dropped variables carry w_i = 0, so the reconstruction map just loses
  // their columns.
  out.recon_matrix.resize(sys.recon_matrix.rows(), np);
  for (int k = 0; k < np; ++k) out.recon_matrix.col(k) = sys.recon_matrix.col(pos[k]);
  out.recon_offset = sys.recon_offset;
  out.validate();
  return out;
}

GFormSystem schur_reduce(const GFormSystem& sys) {
  sys.validate();
  if (!sys.zero_indices().empty()) {
    throw std::invalid_argument("schur_reduce: eliminate zero-contrast variables first");
  }
  if (sys.fixed_contrast.empty()) return sys;

  const int n = sys.size();
  const int nc = static_cast<int>(sys.fixed_contrast.size());
  const int nf = static_cast<int>(sys.free_indices.size());
  std::vector<int> cidx(nc), fidx(nf);
  Eigen::VectorXd theta_c(nc);
  for (int k = 0; k < nc; ++k) {
    cidx[k] = sys.fixed_contrast[k].first;
    theta_c[k] = sys.fixed_contrast[k].second;
  }
  for (int k = 0; k < nf; ++k) fidx[k] = sys.free_indices[k];

  Eigen::MatrixXd G_cc(nc, nc), G_cf(nc, nf), G_fc(nf, nc), G_ff(nf, nf);
  for (int a = 0; a < nc; ++a) {
    for (int b = 0; b < nc; ++b) G_cc(a, b) = sys.G(cidx[a], cidx[b]);
    for (int b = 0; b < nf; ++b) G_cf(a, b) = sys.G(cidx[a], fidx[b]);
  }
  for (int a = 0; a < nf; ++a) {
    for (int b = 0; b < nc; ++b) G_fc(a, b) = sys.G(fidx[a], cidx[b]);
    for (int b = 0; b < nf; ++b) G_ff(a, b) = sys.G(fidx[a], fidx[b]);
  }
  Eigen::VectorXd b_c(nc), b_f(nf);
  for (int a = 0; a < nc; ++a) b_c[a] = sys.b_prime[cidx[a]];
  for (int a = 0; a < nf; ++a) b_f[a] = sys.b_prime[fidx[a]];

  // K = I + G_cc diag(theta_c); one factorization serves every product.
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(nc, nc) + G_cc * theta_c.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw std::runtime_error("schur_reduce: I + G_cc diag(theta_c) is numerically singular");
  }
  const Eigen::MatrixXd Kinv_Gcf = lu.solve(G_cf);
  const Eigen::VectorXd Kinv_bc = lu.solve(b_c);

  GFormSystem out;
  out.G = G_ff - G_fc * Kinv_Gcf;                 // G_ff + Gbar_cc
  out.b_prime = b_f - G_fc * Kinv_bc;             // (Gb)_f + bbar_c
  out.free_indices.resize(nf);
  for (int k = 0; k < nf; ++k) out.free_indices[k] = k;

  // w_c = diag(theta_c) z_c = u - W w_f with u = diag(theta_c) K^{-1} b_c and
  // W = diag(theta_c) K^{-1} G_cf; fold into the reconstruction map.
  const Eigen::VectorXd u = theta_c.asDiagonal() * Kinv_bc;
  const Eigen::MatrixXd W = theta_c.asDiagonal() * Kinv_Gcf;
  Eigen::MatrixXd R_c(sys.recon_matrix.rows(), nc), R_f(sys.recon_matrix.rows(), nf);
  for (int k = 0; k < nc; ++k) R_c.col(k) = sys.recon_matrix.col(cidx[k]);
  for (int k = 0; k < nf; ++k) R_f.col(k) = sys.recon_matrix.col(fidx[k]);
  out.recon_offset = sys.recon_offset - R_c * u;
  out.recon_matrix = R_f - R_c * W;
  out.validate();
  return out;
}

Eigen::VectorXd gform_total_contrast(const GFormSystem& sys, const Eigen::VectorXd& theta_free) {
  if (theta_free.size() != static_cast<Eigen::Index>(sys.free_indices.size())) {
    throw std::invalid_argument("gform_total_contrast: theta size mismatch");
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(sys.size());
  for (size_t k = 0; k < sys.free_indices.size(); ++k) theta[sys.free_indices[k]] = theta_free[k];
  for (const auto& [i, v] : sys.fixed_contrast) theta[i] = v;
  return theta;
}

Eigen::VectorXd gform_solve(const GFormSystem& sys, const Eigen::VectorXd& theta_free) {
  const Eigen::VectorXd theta = gform_total_contrast(sys, theta_free);
  const int n = sys.size();
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + sys.G * theta.asDiagonal();
  return lhs.partialPivLu().solve(sys.b_prime);
}

Eigen::VectorXd reconstruct_full_field(const GFormSystem& sys, const Eigen::VectorXd& w) {
  return sys.recon_offset - sys.recon_matrix * w;
}

}  // namespace wavebound::physics
