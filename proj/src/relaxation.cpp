#include "wavebound/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavebound::relax {

void HomogenizedQCQP::validate() const {
  const auto n = Pbar.rows();
  if (Qbar.rows() != n || Qbar.cols() != n || Pbar.cols() != n) {
    throw std::invalid_argument("HomogenizedQCQP: Pbar/Qbar dimension mismatch");
  }
  if (sense.size() != Abar.size()) {
    throw std::invalid_argument("HomogenizedQCQP: one sense per constraint required");
  }
  for (const auto& A : Abar) {
    if (A.rows() != n || A.cols() != n) {
      throw std::invalid_argument("HomogenizedQCQP: constraint dimension mismatch");
    }
  }
  for (const auto& U : Ubar) {
    if (U.rows() != n || U.cols() != n) {
      throw std::invalid_argument("HomogenizedQCQP: extra constraint dimension mismatch");
    }
  }
}

Homogenized homogenize_objective(const metrics::RatioQuadratic& f, const Eigen::VectorXd& z) {
  const double den = z.dot(f.Q * z) + 2.0 * f.q.dot(z) + f.s;
  if (!(den > 0.0)) {
    throw std::invalid_argument("homogenize_objective: denominator must be strictly positive");
  }
  Homogenized h;
  h.alpha = 1.0 / std::sqrt(den);
  h.y = h.alpha * z;
  return h;
}

namespace {

Eigen::MatrixXd border(const Eigen::MatrixXd& M, const Eigen::VectorXd& v, double c) {
  const auto m = M.rows();
  Eigen::MatrixXd out(m + 1, m + 1);
  out.topLeftCorner(m, m) = M;
  out.topRightCorner(m, 1) = v;
  out.bottomLeftCorner(1, m) = v.transpose();
  out(m, m) = c;
  return out;
}

}  // namespace

HomogenizedQCQP assemble_aform(const metrics::RatioQuadratic& f, const physics::AFormSystem& sys,
                               bool boolean_design) {
  f.validate();
  const int m = sys.size();
  if (f.dim() != m || sys.A.rows() != m || sys.A.cols() != m) {
    throw std::invalid_argument("assemble_aform: dimension mismatch");
  }
  HomogenizedQCQP q;
  q.Pbar = border(f.P, f.p, f.r);
  q.Qbar = border(f.Q, f.q, f.s);
  q.Abar.reserve(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd a = sys.A.row(i).transpose();
    const double bi = sys.b[i];
    Eigen::MatrixXd top = a * a.transpose();
    top(i, i) -= 1.0;
    q.Abar.push_back(border(top, -bi * a, bi * bi));
  }
  q.sense.assign(m, boolean_design ? ConstraintSense::eq_zero : ConstraintSense::le_zero);
  q.form = SourceForm::a_form;
  q.sys_matrix = sys.A;
  q.sys_rhs = sys.b;
  return q;
}

metrics::RatioQuadratic transform_metric(const metrics::RatioQuadratic& f_z,
                                         const physics::GFormSystem& sys) {
  f_z.validate();
  const auto& R = sys.recon_matrix;
  const auto& r0 = sys.recon_offset;
  if (f_z.dim() != R.rows()) {
    throw std::invalid_argument("transform_metric: objective dimension must match the field space");
  }
  // Substituting z = r0 - R w into each quadratic:
  //   P' = R'PR, p' = -R'(P r0 + p), r' = r0'P r0 + 2 p'r0 + r.
  metrics::RatioQuadratic f_w;
  const Eigen::VectorXd Pr0 = f_z.P * r0;
  const Eigen::VectorXd Qr0 = f_z.Q * r0;
  f_w.P = R.transpose() * (f_z.P * R);
  f_w.p = -R.transpose() * (Pr0 + f_z.p);
  f_w.r = r0.dot(Pr0) + 2.0 * f_z.p.dot(r0) + f_z.r;
  f_w.Q = R.transpose() * (f_z.Q * R);
  f_w.q = -R.transpose() * (Qr0 + f_z.q);
  f_w.s = r0.dot(Qr0) + 2.0 * f_z.q.dot(r0) + f_z.s;
  // symmetrize away round-off drift
  f_w.P = ((f_w.P + f_w.P.transpose()) * 0.5).eval();
  f_w.Q = ((f_w.Q + f_w.Q.transpose()) * 0.5).eval();
  return f_w;
}

HomogenizedQCQP assemble_gform(const metrics::RatioQuadratic& f, const physics::GFormSystem& sys) {
  return assemble_gform_metric(transform_metric(f, sys), sys);
}

HomogenizedQCQP assemble_gform_metric(const metrics::RatioQuadratic& f_w,
                                      const physics::GFormSystem& sys) {
  f_w.validate();
  sys.validate();
  if (!sys.fixed_contrast.empty() || !sys.zero_indices().empty()) {
    throw std::invalid_argument("assemble_gform: system must be reduced to free variables");
  }
  const int n = sys.size();
  if (f_w.dim() != n) {
    throw std::invalid_argument("assemble_gform: metric dimension must match the system");
  }

  HomogenizedQCQP q;
  q.Pbar = border(f_w.P, f_w.p, f_w.r);
  q.Qbar = border(f_w.Q, f_w.q, f_w.s);

  // Constraint for each free row: w_i^2 + w_i g_i'w - alpha b'_i w_i <= 0.
  q.Abar.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd top = Eigen::MatrixXd::Zero(n, n);
    top.row(i) += 0.5 * sys.G.row(i);
    top.col(i) += 0.5 * sys.G.row(i).transpose();
    top(i, i) += 1.0;
    Eigen::VectorXd lin = Eigen::VectorXd::Zero(n);
    lin[i] = -0.5 * sys.b_prime[i];
    q.Abar.push_back(border(top, lin, 0.0));
  }
  q.sense.assign(n, ConstraintSense::le_zero);
  q.form = SourceForm::g_form;
  q.sys_matrix = sys.G;
  q.sys_rhs = sys.b_prime;
  return q;
}

HomogenizedQCQP add_quadratic_constraints(HomogenizedQCQP q,
                                          const std::vector<QuadConstraint>& constraints) {
  const int m = q.var_dim();
  for (const auto& c : constraints) {
    if (c.U.rows() != m || c.U.cols() != m || c.u.size() != m) {
      throw std::invalid_argument("add_quadratic_constraints: dimension mismatch");
    }
    q.Ubar.push_back(border(c.U, c.u, c.t));
  }
  return q;
}

BoundReport solve_bound(const HomogenizedQCQP& q, const sdp::SolverSettings& settings) {
  q.validate();
  const int n_a = static_cast<int>(q.Abar.size());
  const int n_u = static_cast<int>(q.Ubar.size());
  const int d = n_a + n_u + 1;

  // Conic ordering: nonnegative multipliers first (inequality-sense Abar,
  // then Ubar, then the Qbar multiplier per the dual), equality-sense Abar
  // multipliers free at the end. conic_pos[k] = slot of report multiplier k.
  std::vector<int> conic_pos(d, -1);
  sdp::ConicProblem cp;
  cp.lmi_terms.reserve(d + 1);
  int slot = 0;
  for (int i = 0; i < n_a; ++i) {
    if (q.sense[i] == ConstraintSense::le_zero) {
      cp.lmi_terms.push_back(q.Abar[i]);
      conic_pos[i] = slot++;
    }
  }
  for (int j = 0; j < n_u; ++j) {
    cp.lmi_terms.push_back(q.Ubar[j]);
    conic_pos[n_a + j] = slot++;
  }
  cp.lmi_terms.push_back(q.Qbar);
  const int q_slot = slot++;
  conic_pos[d - 1] = q_slot;
  cp.nonneg_count = slot;
  for (int i = 0; i < n_a; ++i) {
    if (q.sense[i] == ConstraintSense::eq_zero) {
      cp.lmi_terms.push_back(q.Abar[i]);
      conic_pos[i] = slot++;
    }
  }
  cp.lmi_terms.push_back(-q.Pbar);
  cp.objective = Eigen::VectorXd::Zero(d);
  cp.objective[q_slot] = 1.0;

  sdp::SolverResult res = sdp::solve(cp, settings);
  if (res.status == sdp::SolveStatus::infeasible) {
    throw std::runtime_error("solve_bound: dual problem reported infeasible");
  }

  BoundReport report;
  report.lambda.resize(d);
  for (int k = 0; k < d; ++k) report.lambda[k] = res.lambda[conic_pos[k]];
  // Nonnegative multipliers can sit a residual-sized distance below zero;
  // clamping keeps the reported certificate in the dual cone, and the slack
  // eigenvalue below is recomputed at the clamped point.
  for (int k = 0; k < d; ++k) {
    const bool nonneg = (k == d - 1) || (k >= n_a) ||
                        (k < n_a && q.sense[k] == ConstraintSense::le_zero);
    if (nonneg) report.lambda[k] = std::max(0.0, report.lambda[k]);
  }
  report.d_star = report.lambda[d - 1];
  report.status = res.status;
  report.iterations = res.iterations;
  report.residuals = res.residuals;

  // Independent certificate validation.
  Eigen::MatrixXd slack = report.lambda[d - 1] * q.Qbar - q.Pbar;
  for (int i = 0; i < n_a; ++i) slack += report.lambda[i] * q.Abar[i];
  for (int j = 0; j < n_u; ++j) slack += report.lambda[n_a + j] * q.Ubar[j];
  report.cert_slack_min = sdp::min_eigenvalue(slack);
  bool lambda_ok = true;
  for (int k = 0; k < d && lambda_ok; ++k) lambda_ok = report.lambda[k] >= -1e-9;
  report.certificate_valid = lambda_ok && report.cert_slack_min >= -settings.cert_tol;

  if (res.primal_X) {
    report.primal_X = std::move(res.primal_X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*report.primal_X, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const auto m1 = ev.size();
    const double s1 = ev[m1 - 1];
    const double s2 = m1 > 1 ? ev[m1 - 2] : 0.0;
    report.rank1_gap = s1 > 1e-300 ? s2 / s1 : 1.0;
  }
  return report;
}

std::optional<RecoveredPoint> recover_rank1(const BoundReport& report, const HomogenizedQCQP& q,
                                            double threshold) {
  if (!report.primal_X) return std::nullopt;
  if (report.rank1_gap > threshold) return std::nullopt;
  const Eigen::MatrixXd& X = *report.primal_X;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
  const auto m1 = X.rows();
  const double s1 = std::max(0.0, es.eigenvalues()[m1 - 1]);
  if (s1 <= 0.0) return std::nullopt;
  Eigen::VectorXd x = std::sqrt(s1) * es.eigenvectors().col(m1 - 1);
  const int m = q.var_dim();
  if (x[m] < 0.0) x = -x;
  const double alpha = x[m];
  if (alpha < 1e-12) return std::nullopt;

  RecoveredPoint out;
  const Eigen::VectorXd y = x.head(m);
  out.clamp_magnitude = 0.0;
  if (q.form == SourceForm::a_form) {
    out.z = y / alpha;
    out.theta.resize(m);
    for (int i = 0; i < m; ++i) {
      if (std::abs(out.z[i]) > 1e-9) {
        out.theta[i] = (q.sys_matrix.row(i).dot(out.z) - q.sys_rhs[i]) / out.z[i];
      } else {
        out.theta[i] = 0.0;
      }
      const double clamped = std::clamp(out.theta[i], -1.0, 1.0);
      out.clamp_magnitude = std::max(out.clamp_magnitude, std::abs(out.theta[i] - clamped));
      out.theta[i] = clamped;
    }
  } else {
    // G-form variable is the displacement w; the field is z = b' - G w and
    // theta'_i = w_i / z_i.
    const Eigen::VectorXd w = y / alpha;
    out.z = q.sys_rhs - q.sys_matrix * w;
    out.theta.resize(m);
    for (int i = 0; i < m; ++i) {
      if (std::abs(out.z[i]) > 1e-9) {
        out.theta[i] = w[i] / out.z[i];
      } else {
        out.theta[i] = 0.0;
      }
      const double clamped = std::clamp(out.theta[i], 0.0, 1.0);
      out.clamp_magnitude = std::max(out.clamp_magnitude, std::abs(out.theta[i] - clamped));
      out.theta[i] = clamped;
    }
  }
  return out;
}

Eigen::MatrixXd rescale_feasible(const Eigen::MatrixXd& X, const HomogenizedQCQP& q) {
  const double t = (q.Qbar.cwiseProduct(X)).sum();
  if (!(t > 0.0)) {
    throw std::invalid_argument("rescale_feasible: tr(Qbar X) must be strictly positive");
  }
  return X / t;
}

}  // namespace wavebound::relax
