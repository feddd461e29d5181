#include "wavebound/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavebound::sdp {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872;
constexpr double kInvSqrt2 = 0.70710678118654752440084436;

// Scaled symmetric vectorization: lower triangle, column-major, off-diagonal
// entries multiplied by sqrt(2), so that svec(A) . svec(B) = tr(A B).
int svec_size(int n) { return n * (n + 1) / 2; }

void svec(const Eigen::MatrixXd& M, Eigen::VectorXd& out) {
  const int n = static_cast<int>(M.rows());
  out.resize(svec_size(n));
  int k = 0;
  for (int j = 0; j < n; ++j) {
    out[k++] = M(j, j);
    for (int i = j + 1; i < n; ++i) out[k++] = kSqrt2 * M(i, j);
  }
}

void smat(const Eigen::VectorXd& v, int n, Eigen::MatrixXd& out) {
  out.resize(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    out(j, j) = v[k++];
    for (int i = j + 1; i < n; ++i) {
      const double x = kInvSqrt2 * v[k++];
      out(i, j) = x;
      out(j, i) = x;
    }
  }
}

// Largest |entry| of svec(M), i.e. including the sqrt(2) off-diagonal weight.
double svec_max_abs(const Eigen::MatrixXd& M) {
  const int n = static_cast<int>(M.rows());
  double m = 0.0;
  for (int j = 0; j < n; ++j) {
    m = std::max(m, std::abs(M(j, j)));
    for (int i = j + 1; i < n; ++i) m = std::max(m, kSqrt2 * std::abs(M(i, j)));
  }
  return m;
}

struct ScaledData {
  // Scaled problem: minimize c_s'lam  s.t.  -T_s lam + s = b_s (PSD rows),
  // -D E lam + s = 0 (orthant rows). Column scalings E, PSD row scaling
  // gamma, orthant row scalings d_orth. lambda_unscaled = E .* lambda_scaled.
  Eigen::VectorXd col_scale;      // E, length d
  Eigen::VectorXd orth_scale;     // length nonneg_count
  double psd_scale = 1.0;         // gamma
  Eigen::VectorXd c_scaled;
  std::vector<Eigen::MatrixXd> F_scaled;  // d+1, last is constant
};

}  // namespace

void ConicProblem::validate() const {
  if (lmi_terms.size() != static_cast<size_t>(dim()) + 1) {
    throw std::invalid_argument("ConicProblem: need dim+1 lmi_terms (constant last)");
  }
  const int n = lmi_size();
  for (const auto& F : lmi_terms) {
    if (F.rows() != n || F.cols() != n) {
      throw std::invalid_argument("ConicProblem: inconsistent LMI term dimensions");
    }
    if (!F.allFinite()) throw std::invalid_argument("ConicProblem: non-finite LMI term");
    if ((F - F.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, F.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("ConicProblem: LMI terms must be symmetric");
    }
  }
  if (nonneg_count < 0 || nonneg_count > dim()) {
    throw std::invalid_argument("ConicProblem: nonneg_count out of range");
  }
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& M) {
  if (!M.allFinite()) throw std::invalid_argument("psd_project: non-finite input");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("psd_project: input must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("psd_project: eigensolver failed");
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
}

double min_eigenvalue(const Eigen::MatrixXd& M) {
  if (!M.allFinite()) throw std::invalid_argument("min_eigenvalue: non-finite input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

namespace {

ScaledData equilibrate(const ConicProblem& p, bool enabled) {
  const int d = p.dim();
  const int nn = p.nonneg_count;
  ScaledData sd;
  sd.col_scale = Eigen::VectorXd::Ones(d);
  sd.orth_scale = Eigen::VectorXd::Ones(nn);
  sd.psd_scale = 1.0;

  if (enabled) {
    // Ruiz iterations on the stacked constraint matrix. The PSD block gets a
    // single scalar so the cone is preserved.
    Eigen::VectorXd fmax(d);
    for (int j = 0; j < d; ++j) fmax[j] = svec_max_abs(p.lmi_terms[j]);
    for (int pass = 0; pass < 10; ++pass) {
      double block = 0.0;
      for (int j = 0; j < d; ++j) {
        if (fmax[j] <= 0.0) continue;
        block = std::max(block, sd.psd_scale * sd.col_scale[j] * fmax[j]);
      }
      if (block > 0.0) sd.psd_scale /= std::sqrt(block);
      for (int j = 0; j < nn; ++j) {
        const double r = sd.orth_scale[j] * sd.col_scale[j];
        if (r > 0.0) sd.orth_scale[j] /= std::sqrt(r);
      }
      for (int j = 0; j < d; ++j) {
        double cmax = sd.psd_scale * sd.col_scale[j] * fmax[j];
        if (j < nn) cmax = std::max(cmax, sd.orth_scale[j] * sd.col_scale[j]);
        if (cmax > 0.0) sd.col_scale[j] /= std::sqrt(cmax);
      }
    }
  }

  sd.c_scaled = p.objective.cwiseProduct(sd.col_scale);
  sd.F_scaled.resize(d + 1);
  for (int j = 0; j < d; ++j) {
    sd.F_scaled[j] = (sd.psd_scale * sd.col_scale[j]) * p.lmi_terms[j];
  }
  sd.F_scaled[d] = sd.psd_scale * p.lmi_terms[d];
  return sd;
}

}  // namespace

SolverResult solve(const ConicProblem& p, const SolverSettings& settings,
                   const std::optional<Eigen::VectorXd>& warm_start) {
  p.validate();
  const int d = p.dim();
  const int L = p.lmi_size();
  const int nn = p.nonneg_count;
  const int M = svec_size(L);

  const ScaledData sd = equilibrate(p, settings.scaling);

  // Scaled svec columns as a dense matrix when it fits comfortably in memory;
  // otherwise fall back to per-term accumulation.
  const bool materialize = static_cast<long long>(M) * d <= 40'000'000LL;
  Eigen::MatrixXd T;  // M x d, column j = svec(F_scaled[j])
  if (materialize) {
    T.resize(M, d);
    Eigen::VectorXd col;
    for (int j = 0; j < d; ++j) {
      svec(sd.F_scaled[j], col);
      T.col(j) = col;
    }
  }

  auto apply_T = [&](const Eigen::VectorXd& lam, Eigen::VectorXd& out) {
    if (materialize) {
      out.noalias() = T * lam;
    } else {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(L, L);
      for (int j = 0; j < d; ++j) {
        if (lam[j] != 0.0) acc.noalias() += lam[j] * sd.F_scaled[j];
      }
      svec(acc, out);
    }
  };
  auto apply_Tt = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
    if (materialize) {
      out.noalias() = T.transpose() * v;
    } else {
      out.resize(d);
      Eigen::MatrixXd Mv;
      smat(v, L, Mv);
      for (int j = 0; j < d; ++j) {
        out[j] = (sd.F_scaled[j].cwiseProduct(Mv)).sum();
      }
    }
  };

  // Gram matrix of the scaled constraint map A = [-T; -DE] and its
  // eigendecomposition; (sigma I + rho * Gram)^{-1} then comes cheaply for
  // any rho, so penalty updates do not refactor.
  Eigen::MatrixXd gram(d, d);
  if (materialize) {
    gram.noalias() = T.transpose() * T;
  } else {
    for (int j = 0; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        const double v = (sd.F_scaled[j].cwiseProduct(sd.F_scaled[k])).sum();
        gram(j, k) = v;
        gram(k, j) = v;
      }
    }
  }
  for (int j = 0; j < nn; ++j) {
    const double r = sd.orth_scale[j] * sd.col_scale[j];
    gram(j, j) += r * r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_es(gram);
  if (gram_es.info() != Eigen::Success) throw std::runtime_error("solve: Gram eigensolver failed");
  const Eigen::MatrixXd& V = gram_es.eigenvectors();
  const Eigen::VectorXd& mu = gram_es.eigenvalues();

  Eigen::VectorXd b_s;  // scaled rhs, PSD block
  svec(sd.F_scaled[d], b_s);

  // Iterates. s and y are stacked (PSD svec block, then orthant block).
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(d);
  if (warm_start) {
    if (warm_start->size() != d) throw std::invalid_argument("solve: warm start size mismatch");
    lam = warm_start->cwiseQuotient(sd.col_scale);
  }
  Eigen::VectorXd s_psd(M), y_psd = Eigen::VectorXd::Zero(M);
  Eigen::VectorXd s_orth(nn), y_orth = Eigen::VectorXd::Zero(nn);
  {
    Eigen::VectorXd tl;
    apply_T(lam, tl);
    Eigen::MatrixXd S0;
    smat(b_s + tl, L, S0);
    svec(psd_project(S0), s_psd);
    for (int j = 0; j < nn; ++j) s_orth[j] = std::max(0.0, sd.orth_scale[j] * sd.col_scale[j] * lam[j]);
  }

  double rho = settings.rho;
  const double sigma = settings.sigma;
  const double alpha = settings.alpha;

  SolverResult result;
  result.status = SolveStatus::max_iters;

  Eigen::VectorXd y_prev_check = Eigen::VectorXd::Zero(M + nn);
  Eigen::VectorXd rhs(d), tl(M), ttv(d), u_psd(M), u_orth(nn), vvec(M);
  Eigen::MatrixXd work(L, L);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

  const double bs_norm = b_s.norm();

  int iter = 0;
  for (iter = 1; iter <= settings.max_iters; ++iter) {
    // lambda step: (sigma I + rho A'A) lam = sigma lam + A'(rho(b - s) - y)
    // with A = [-T; -DE], b = (b_s; 0).
    apply_Tt(rho * (b_s - s_psd) - y_psd, ttv);
    rhs = sigma * lam - sd.c_scaled - ttv;
    for (int j = 0; j < nn; ++j) {
      const double r = sd.orth_scale[j] * sd.col_scale[j];
      rhs[j] -= r * (rho * (0.0 - s_orth[j]) - y_orth[j]);
    }
    lam.noalias() = V * ((V.transpose() * rhs).cwiseQuotient((sigma + rho * mu.array()).matrix()));

    // Relaxed constraint image u = alpha*A*lam + (1-alpha)*(b - s).
    apply_T(lam, tl);
    u_psd = alpha * (-tl) + (1.0 - alpha) * (b_s - s_psd);
    for (int j = 0; j < nn; ++j) {
      const double r = sd.orth_scale[j] * sd.col_scale[j];
      u_orth[j] = alpha * (-r * lam[j]) + (1.0 - alpha) * (0.0 - s_orth[j]);
    }

    // s step: project b - u - y/rho onto the cone.
    vvec = b_s - u_psd - y_psd / rho;
    smat(vvec, L, work);
    es.compute(work);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    work.noalias() = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    svec(work, s_psd);
    for (int j = 0; j < nn; ++j) s_orth[j] = std::max(0.0, 0.0 - u_orth[j] - y_orth[j] / rho);

    // dual update
    y_psd += rho * (u_psd + s_psd - b_s);
    for (int j = 0; j < nn; ++j) y_orth[j] += rho * (u_orth[j] + s_orth[j] - 0.0);

    if (iter % settings.check_interval != 0 && iter != settings.max_iters) continue;

    // Unscaled residuals. lambda_u = E lam; s_u = s/gamma (PSD), s/d (orth);
    // y_u = gamma y (PSD), d y (orth).
    Eigen::VectorXd lam_u = lam.cwiseProduct(sd.col_scale);
    apply_T(lam, tl);  // scaled T*lam = gamma * svec(sum lam_u F)
    const double g = sd.psd_scale;

    double rp_sq = ((tl + b_s - s_psd) / g).squaredNorm();
    double s_norm_sq = (s_psd / g).squaredNorm();
    double ax_norm_sq = (tl / g).squaredNorm();
    for (int j = 0; j < nn; ++j) {
      const double sj = s_orth[j] / sd.orth_scale[j];
      rp_sq += (sj - lam_u[j]) * (sj - lam_u[j]);
      s_norm_sq += sj * sj;
      ax_norm_sq += lam_u[j] * lam_u[j];
    }
    const double rp = std::sqrt(rp_sq);
    const double prim_scale = std::max({std::sqrt(ax_norm_sq), std::sqrt(s_norm_sq), bs_norm / g});

    // (A' y_u)_j = -svec(F_j)'(gamma y_psd) - [j<nn] d_j y_orth_j, and
    // apply_Tt returns gamma E_j svec(F_j)'y_psd, so divide by E_j.
    apply_Tt(y_psd, ttv);
    Eigen::VectorXd rd_vec = p.objective;
    for (int j = 0; j < d; ++j) rd_vec[j] -= ttv[j] / sd.col_scale[j];
    // orthant contribution: (A' y)_j includes -d_j E_j y_orth_j (scaled);
    // unscaled multiplier y_u = d_j y_orth_j, giving -y_u_j per column.
    for (int j = 0; j < nn; ++j) rd_vec[j] -= sd.orth_scale[j] * y_orth[j];
    const double rd = rd_vec.norm();
    Eigen::VectorXd aty = p.objective - rd_vec;
    const double dual_scale = std::max(p.objective.norm(), aty.norm());

    const double obj = p.objective.dot(lam_u);
    // -b_u . y_u with b_u = b_s/gamma and y_u = gamma y_psd; gamma cancels.
    const double dual_obj = -b_s.dot(y_psd);
    const double gap = std::abs(obj - dual_obj);
    const double gap_scale = std::max({1.0, std::abs(obj), std::abs(dual_obj)});

    result.trace.push_back({iter, rp, rd});

    const double eps_p = settings.eps_abs + settings.eps_rel * prim_scale;
    const double eps_d = settings.eps_abs + settings.eps_rel * dual_scale;
    const double eps_g = settings.eps_abs + settings.eps_rel * gap_scale;
    if (rp <= eps_p && rd <= eps_d && gap <= eps_g) {
      result.status = SolveStatus::optimal;
      result.residuals = {rp, rd, gap};
      break;
    }

    // Infeasibility certificate from the dual-variable drift.
    Eigen::VectorXd y_all(M + nn);
    y_all.head(M) = g * y_psd;
    for (int j = 0; j < nn; ++j) y_all[M + j] = sd.orth_scale[j] * y_orth[j];
    Eigen::VectorXd dy = y_all - y_prev_check;
    y_prev_check = y_all;
    const double dy_norm = dy.norm();
    if (dy_norm > 1e-12) {
      Eigen::VectorXd aty_dy;
      {
        Eigen::VectorXd dpsd = dy.head(M) / g;  // rescale for apply_Tt
        apply_Tt(dpsd, aty_dy);
        for (int j = 0; j < d; ++j) aty_dy[j] /= sd.col_scale[j];
        for (int j = 0; j < nn; ++j) aty_dy[j] += dy[M + j];
      }
      const double b_dot = (b_s / g).dot(dy.head(M));
      if (aty_dy.norm() <= 1e-9 * dy_norm && b_dot <= -1e-9 * dy_norm * std::max(1.0, bs_norm / g)) {
        // direction must also lie in the dual cone
        Eigen::MatrixXd dmat;
        smat(dy.head(M), L, dmat);
        bool in_cone = min_eigenvalue(dmat) >= -1e-7 * dy_norm;
        for (int j = 0; j < nn && in_cone; ++j) in_cone = dy[M + j] >= -1e-7 * dy_norm;
        if (in_cone) {
          result.status = SolveStatus::infeasible;
          result.residuals = {rp, rd, gap};
          break;
        }
      }
    }

    if (settings.adaptive_rho && iter % (settings.check_interval * 4) == 0) {
      const double rp_rel = rp / std::max(1e-12, prim_scale + settings.eps_abs);
      const double rd_rel = rd / std::max(1e-12, dual_scale + settings.eps_abs);
      if (rp_rel > 10.0 * rd_rel) {
        rho = std::min(rho * 2.0, 1e6);
      } else if (rd_rel > 10.0 * rp_rel) {
        rho = std::max(rho * 0.5, 1e-6);
      }
    }

    result.residuals = {rp, rd, gap};
  }

  result.iterations = std::min(iter, settings.max_iters);
  result.lambda = lam.cwiseProduct(sd.col_scale);
  Eigen::MatrixXd X;
  smat(Eigen::VectorXd(sd.psd_scale * y_psd), L, X);
  result.primal_X = X;
  return result;
}

}  // namespace wavebound::sdp
