// pipeline.hpp -- scene-to-problem wiring: lifted/reduced systems, metric
// construction through the reconstruction map, and the command-level runs
// behind the CLI.
#ifndef WAVEBOUND_PIPELINE_HPP
#define WAVEBOUND_PIPELINE_HPP

#include <Eigen/Dense>

#include "wavebound/heuristics.hpp"
#include "wavebound/metrics.hpp"
#include "wavebound/relaxation.hpp"
#include "wavebound/scene.hpp"

namespace wavebound::pipeline {

/// Lifted (real) and fully reduced design problem for a scene, with the
/// scene's efficiency metric expressed over the displacement variables.
struct ReducedDesign {
  heuristics::DesignProblem problem;  // reduced system + real-permittivity tie
  metrics::RatioQuadratic metric_w;   // purity or focusing metric over w
  int free_pixels = 0;                // complex designable pixels
  int fixed_pixels = 0;               // complex fixed-contrast pixels
};

ReducedDesign build_reduced(const scene::BuiltScene& built);

struct BoundOutcome {
  relax::BoundReport report;
  int free_pixels = 0;
  int fixed_pixels = 0;
};

BoundOutcome run_bound(const scene::BuiltScene& built);

struct OptimizeOutcome {
  Eigen::VectorXd theta;  // row-major over the design rectangle
  double purity = 0.0;           // metric ratio at the design
  double power_numerator = 0.0;  // metric numerator (mode-coupled / spot power)
  double power_selector = 0.0;   // metric denominator (power on the selector)
  heuristics::DesignState state;
};

OptimizeOutcome run_optimize(const scene::BuiltScene& built, heuristics::DesignObjective objective,
                             int iters);

struct ParetoOutcome {
  std::vector<heuristics::ParetoPoint> frontier;
};

ParetoOutcome run_pareto(const scene::BuiltScene& built, int n_points, int iters);

/// Embeds a design-rectangle vector (row-major) into a full-grid theta.
Eigen::VectorXd embed_design(const scene::BuiltScene& built, const Eigen::VectorXd& theta_design);

/// Metric value helpers at a physical design (used for reporting).
double metric_numerator(const ReducedDesign& rd, const Eigen::VectorXd& theta_phys);
double metric_denominator(const ReducedDesign& rd, const Eigen::VectorXd& theta_phys);

}  // namespace wavebound::pipeline

#endif
