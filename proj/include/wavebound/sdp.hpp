// sdp.hpp -- first-order operator-splitting solver for dual-form SDPs:
//
//   minimize    objective' * lambda
//   subject to  sum_j lambda_j * F_j + F_const  >= 0   (PSD)
//               lambda_j >= 0 for the first nonneg_count entries.
//
#ifndef WAVEBOUND_SDP_HPP
#define WAVEBOUND_SDP_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace wavebound::sdp {

struct ConicProblem {
  Eigen::VectorXd objective;               // length d
  std::vector<Eigen::MatrixXd> lmi_terms;  // d+1 symmetric matrices; last is the constant
  int nonneg_count = 0;

  int dim() const { return static_cast<int>(objective.size()); }
  int lmi_size() const { return lmi_terms.empty() ? 0 : static_cast<int>(lmi_terms[0].rows()); }
  void validate() const;
};

struct SolverSettings {
  int max_iters = 50000;
  double eps_abs = 1e-7;
  double eps_rel = 1e-7;
  double rho = 1.0;          // ADMM penalty; adapted by the residual-ratio rule
  bool scaling = true;       // Ruiz-style diagonal equilibration
  double cert_tol = 1e-7;    // tolerance used by independent certificate checks
  double sigma = 1e-6;       // proximal regularization on the lambda step
  double alpha = 1.6;        // over-relaxation
  bool adaptive_rho = true;
  int check_interval = 25;   // termination-check cadence (iterations)
};

enum class SolveStatus { optimal, max_iters, infeasible };

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct ResidualSample {
  int iteration;
  double primal;
  double dual;
};

struct SolverResult {
  Eigen::VectorXd lambda;
  SolveStatus status = SolveStatus::max_iters;
  Residuals residuals;
  std::optional<Eigen::MatrixXd> primal_X;  // recovered primal matrix iterate
  int iterations = 0;
  std::vector<ResidualSample> trace;        // sampled residual history
};

/// Frobenius-nearest PSD matrix: eigendecompose, clamp negative eigenvalues.
/// Input must be symmetric to 1e-10 and finite.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& M);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& M);

/// Solve the conic problem. An optional warm start seeds lambda.
SolverResult solve(const ConicProblem& p, const SolverSettings& settings = {},
                   const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

}  // namespace wavebound::sdp

#endif
