// relaxation.hpp -- homogenization of ratio objectives, design-variable
// elimination into a compact QCQP, semidefinite relaxation bounds with
// independently validated dual certificates, and rank-1 recovery.
#ifndef WAVEBOUND_RELAXATION_HPP
#define WAVEBOUND_RELAXATION_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wavebound/metrics.hpp"
#include "wavebound/physics.hpp"
#include "wavebound/sdp.hpp"

namespace wavebound::relax {

enum class ConstraintSense { le_zero, eq_zero };
enum class SourceForm { a_form, g_form };

/// Compact QCQP over x = (y, alpha):
///   maximize x'Pbar x   s.t.  x'Qbar x = 1,
///   x'Abar_i x {<=,=} 0,  x'Ubar_j x <= 0.
struct HomogenizedQCQP {
  Eigen::MatrixXd Pbar;
  Eigen::MatrixXd Qbar;
  std::vector<Eigen::MatrixXd> Abar;
  std::vector<ConstraintSense> sense;
  std::vector<Eigen::MatrixXd> Ubar;

  // Originating physics, kept for design recovery.
  SourceForm form = SourceForm::a_form;
  Eigen::MatrixXd sys_matrix;  // A (a_form) or reduced G (g_form)
  Eigen::VectorXd sys_rhs;     // b or b'

  int var_dim() const { return static_cast<int>(Pbar.rows()) - 1; }
  void validate() const;
};

/// Scaled field and excitation scale with the same objective value as f(z).
struct Homogenized {
  Eigen::VectorXd y;
  double alpha;
};

/// alpha = 1/sqrt(denominator at z), y = alpha z. Throws when the denominator
/// is not strictly positive.
Homogenized homogenize_objective(const metrics::RatioQuadratic& f, const Eigen::VectorXd& z);

/// Eliminates theta in [-1,1] (or {+-1} when boolean_design) from the A-form
/// physics, producing the compact QCQP data.
HomogenizedQCQP assemble_aform(const metrics::RatioQuadratic& f, const physics::AFormSystem& sys,
                               bool boolean_design = false);

/// Green's-form assembly over the displacement field w. The objective is
/// composed through the system's reconstruction map (for an unreduced system
/// that map is exactly (G, b'), giving P' = G'PG etc.); the constraints come
/// from the reduced rows. Requires a system whose variables are all free.
HomogenizedQCQP assemble_gform(const metrics::RatioQuadratic& f, const physics::GFormSystem& sys);

/// Composes a field-space metric through the reconstruction map
/// z = recon_offset - recon_matrix w, yielding a metric over w.
metrics::RatioQuadratic transform_metric(const metrics::RatioQuadratic& f_z,
                                         const physics::GFormSystem& sys);

/// G-form assembly when the metric is already expressed over w.
HomogenizedQCQP assemble_gform_metric(const metrics::RatioQuadratic& f_w,
                                      const physics::GFormSystem& sys);

struct QuadConstraint {
  Eigen::MatrixXd U;
  Eigen::VectorXd u;
  double t;
};

/// Appends homogenized indefinite quadratic constraints x'Ubar_j x <= 0.
HomogenizedQCQP add_quadratic_constraints(HomogenizedQCQP q,
                                          const std::vector<QuadConstraint>& constraints);

/// Upper bound d_star with a dual certificate and recovery diagnostics.
struct BoundReport {
  double d_star = 0.0;
  // Multipliers ordered [Abar..., Ubar..., lambda for Qbar last].
  Eigen::VectorXd lambda;
  std::optional<Eigen::MatrixXd> primal_X;
  sdp::Residuals residuals;
  bool certificate_valid = false;
  double cert_slack_min = 0.0;  // min eigenvalue of the LMI slack at lambda
  double rank1_gap = 1.0;       // sigma2/sigma1 of primal_X
  sdp::SolveStatus status = sdp::SolveStatus::max_iters;
  int iterations = 0;
};

/// Solves the dual SDP (minimize lambda_Q subject to
/// sum lambda_i Abar_i + lambda_Q Qbar >= Pbar, inequality multipliers >= 0)
/// and validates the certificate with a fresh eigendecomposition, so the
/// solver cannot self-certify. Throws on an infeasibility certificate.
BoundReport solve_bound(const HomogenizedQCQP& q, const sdp::SolverSettings& settings = {});

struct RecoveredPoint {
  Eigen::VectorXd z;      // field (A-form) or current-system field (G-form)
  Eigen::VectorXd theta;  // clamped into the design interval
  double clamp_magnitude; // largest clamp applied to theta
};

/// Extracts a feasible design from a numerically rank-1 primal X. Returns
/// nothing when sigma2/sigma1 exceeds the threshold or X is absent.
std::optional<RecoveredPoint> recover_rank1(const BoundReport& report, const HomogenizedQCQP& q,
                                            double threshold = 1e-6);

/// X0 = X / tr(Qbar X); requires tr(Qbar X) > 0.
Eigen::MatrixXd rescale_feasible(const Eigen::MatrixXd& X, const HomogenizedQCQP& q);

}  // namespace wavebound::relax

#endif
