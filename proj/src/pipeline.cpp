#include "wavebound/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace wavebound::pipeline {

namespace {

using helmholtz::Scene;

// Selector rows of the lifted field space for one grid column: real parts
// first, then the paired imaginary parts.
std::vector<int> lifted_column_indices(const Scene& sc, int column, int row0, int rows) {
  std::vector<int> idx;
  const int n = sc.grid.pixels();
  idx.reserve(2 * rows);
  for (int r = row0; r < row0 + rows; ++r) idx.push_back(sc.grid.index(r, column));
  const size_t re_count = idx.size();
  for (size_t k = 0; k < re_count; ++k) idx.push_back(idx[k] + n);
  return idx;
}

Eigen::MatrixXd recon_rows(const physics::GFormSystem& sys, const std::vector<int>& rows) {
  Eigen::MatrixXd B(rows.size(), sys.size());
  for (size_t k = 0; k < rows.size(); ++k) B.row(k) = sys.recon_matrix.row(rows[k]);
  return B;
}

Eigen::VectorXd recon_offset_rows(const physics::GFormSystem& sys, const std::vector<int>& rows) {
  Eigen::VectorXd r0(rows.size());
  for (size_t k = 0; k < rows.size(); ++k) r0[k] = sys.recon_offset[rows[k]];
  return r0;
}

// Quadratic-over-constant metric whose value is the numerator of f.
metrics::RatioQuadratic numerator_metric(const metrics::RatioQuadratic& f) {
  metrics::RatioQuadratic g = f;
  g.Q = Eigen::MatrixXd::Zero(f.dim(), f.dim());
  g.q = Eigen::VectorXd::Zero(f.dim());
  g.s = 1.0;
  return g;
}

metrics::RatioQuadratic denominator_metric(const metrics::RatioQuadratic& f) {
  metrics::RatioQuadratic g;
  g.P = f.Q;
  g.p = f.q;
  g.r = f.s;
  g.Q = Eigen::MatrixXd::Zero(f.dim(), f.dim());
  g.q = Eigen::VectorXd::Zero(f.dim());
  g.s = 1.0;
  return g;
}

}  // namespace

ReducedDesign build_reduced(const scene::BuiltScene& built) {
  const Scene& sc = built.scene;
  sc.validate();
  if (!built.file.has_design_region) {
    throw std::invalid_argument("build_reduced: scene has no design region");
  }

  const int n = sc.grid.pixels();
  const helmholtz::GreenOperator green = helmholtz::assemble_green(sc);
  const Eigen::VectorXcd b = helmholtz::build_excitation(sc);
  const Eigen::VectorXcd b_prime = green.entries * b;

  // Lift to the real system of twice the size and classify the variables.
  Eigen::MatrixXd G_lift = physics::lift_matrix(green.entries);
  Eigen::VectorXd bp_lift = physics::lift_vector(b_prime);

  std::vector<int> free_idx;
  std::vector<std::pair<int, double>> fixed;
  int fixed_pixels = 0;
  for (int i = 0; i < n; ++i) {
    if (sc.design_mask[i]) {
      free_idx.push_back(i);
    } else if (sc.background_contrast[i] > 0.0) {
      ++fixed_pixels;
      fixed.emplace_back(i, sc.background_contrast[i]);
      fixed.emplace_back(i + n, sc.background_contrast[i]);
    }
  }
  const int free_pixels = static_cast<int>(free_idx.size());
  std::vector<int> free_lift = free_idx;
  for (int i : free_idx) free_lift.push_back(i + n);

  physics::GFormSystem full =
      physics::make_gform(std::move(G_lift), std::move(bp_lift), std::move(free_lift), std::move(fixed));
  physics::GFormSystem positive = physics::eliminate_zero_contrast(full);
  physics::GFormSystem reduced = physics::schur_reduce(positive);

  ReducedDesign rd;
  rd.free_pixels = free_pixels;
  rd.fixed_pixels = fixed_pixels;

  // Efficiency metric over the displacement variables, composed from the
  // selector rows of the reconstruction map (z_S = r0_S - B w).
  const int nf = reduced.size();
  const int tc = sc.target_column();
  if (built.metric == scene::MetricKind::purity) {
    const auto S = lifted_column_indices(sc, tc, 0, sc.grid.ny);
    const helmholtz::WaveguideMode mode = helmholtz::guided_mode(sc, tc, sc.target.order);
    Eigen::VectorXd c_S = Eigen::VectorXd::Zero(S.size());
    for (int r = 0; r < sc.grid.ny; ++r) c_S[r] = mode.profile[r];  // imaginary half stays zero
    const Eigen::MatrixXd B = recon_rows(reduced, S);
    const Eigen::VectorXd r0 = recon_offset_rows(reduced, S);
    const Eigen::VectorXd g = B.transpose() * c_S;
    const double g0 = c_S.dot(r0);
    metrics::RatioQuadratic f;
    f.P = g * g.transpose();
    f.p = -g0 * g;
    f.r = g0 * g0;
    f.Q = B.transpose() * B;
    f.q = -B.transpose() * r0;
    f.s = r0.squaredNorm();
    f.Q = ((f.Q + f.Q.transpose()) * 0.5).eval();
    rd.metric_w = std::move(f);
  } else {
    const auto plane = lifted_column_indices(sc, tc, 0, sc.grid.ny);
    const auto spot = lifted_column_indices(sc, tc, sc.target.spot_row0, sc.target.spot_rows);
    const Eigen::MatrixXd Bp = recon_rows(reduced, plane);
    const Eigen::VectorXd rp = recon_offset_rows(reduced, plane);
    const Eigen::MatrixXd Bs = recon_rows(reduced, spot);
    const Eigen::VectorXd rs = recon_offset_rows(reduced, spot);
    metrics::RatioQuadratic f;
    f.P = Bs.transpose() * Bs;
    f.p = -Bs.transpose() * rs;
    f.r = rs.squaredNorm();
    f.Q = Bp.transpose() * Bp;
    f.q = -Bp.transpose() * rp;
    f.s = rp.squaredNorm();
    f.P = ((f.P + f.P.transpose()) * 0.5).eval();
    f.Q = ((f.Q + f.Q.transpose()) * 0.5).eval();
    rd.metric_w = std::move(f);
  }
  (void)nf;

  rd.problem.system = std::move(reduced);
  rd.problem.pair_offset = free_pixels;
  rd.problem.validate();
  return rd;
}

BoundOutcome run_bound(const scene::BuiltScene& built) {
  ReducedDesign rd = build_reduced(built);
  const relax::HomogenizedQCQP qcqp = relax::assemble_gform_metric(rd.metric_w, rd.problem.system);
  BoundOutcome out;
  out.report = relax::solve_bound(qcqp, built.file.solver);
  out.free_pixels = rd.free_pixels;
  out.fixed_pixels = rd.fixed_pixels;
  return out;
}

double metric_numerator(const ReducedDesign& rd, const Eigen::VectorXd& theta_phys) {
  const auto v = heuristics::evaluate_design(rd.problem, numerator_metric(rd.metric_w), theta_phys);
  return v ? *v : 0.0;
}

double metric_denominator(const ReducedDesign& rd, const Eigen::VectorXd& theta_phys) {
  const auto v = heuristics::evaluate_design(rd.problem, denominator_metric(rd.metric_w), theta_phys);
  return v ? *v : 0.0;
}

OptimizeOutcome run_optimize(const scene::BuiltScene& built, heuristics::DesignObjective objective,
                             int iters) {
  ReducedDesign rd = build_reduced(built);
  heuristics::OptimizeSettings settings;
  settings.iters = iters;
  settings.objective = objective;
  OptimizeOutcome out;
  out.state = heuristics::optimize_design(rd.problem, rd.metric_w, settings);
  out.theta = out.state.theta_prime;
  const auto purity = heuristics::evaluate_design(rd.problem, rd.metric_w, out.theta);
  out.purity = purity ? *purity : 0.0;
  out.power_numerator = metric_numerator(rd, out.theta);
  out.power_selector = metric_denominator(rd, out.theta);
  return out;
}

ParetoOutcome run_pareto(const scene::BuiltScene& built, int n_points, int iters) {
  ReducedDesign rd = build_reduced(built);
  heuristics::OptimizeSettings settings;
  settings.iters = iters;
  ParetoOutcome out;
  out.frontier = heuristics::pareto_sweep(rd.problem, rd.metric_w, rd.metric_w, n_points, settings);
  return out;
}

Eigen::VectorXd embed_design(const scene::BuiltScene& built, const Eigen::VectorXd& theta_design) {
  const auto& dr = built.design;
  if (theta_design.size() != dr.pixels()) {
    throw std::invalid_argument("embed_design: design size mismatch");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(built.scene.grid.pixels());
  int k = 0;
  for (int r = dr.row0; r < dr.row0 + dr.rows; ++r) {
    for (int c = dr.col0; c < dr.col0 + dr.cols; ++c) {
      full[built.scene.grid.index(r, c)] = theta_design[k++];
    }
  }
  return full;
}

}  // namespace wavebound::pipeline
