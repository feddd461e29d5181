// heuristics.hpp -- adjoint-gradient design optimization over reduced
// displacement systems, and the purity/power Pareto sweep.
#ifndef WAVEBOUND_HEURISTICS_HPP
#define WAVEBOUND_HEURISTICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wavebound/metrics.hpp"
#include "wavebound/physics.hpp"

namespace wavebound::heuristics {

/// A design problem over a reduced (all-free) G-form system. When
/// pair_offset > 0 the physical design variable i drives the pair of lifted
/// variables (i, i + pair_offset); gradients of paired entries are summed.
struct DesignProblem {
  physics::GFormSystem system;
  int pair_offset = 0;

  int lifted_dim() const { return system.size(); }
  int physical_dim() const { return pair_offset > 0 ? pair_offset : system.size(); }
  Eigen::VectorXd lift_theta(const Eigen::VectorXd& theta_phys) const;
  void validate() const;
};

struct DesignState {
  Eigen::VectorXd theta_prime;  // physical design variables in [0,1]
  std::vector<double> objective_trace;
  std::vector<double> gradient_norm_trace;
};

enum class DesignObjective { ratio, numerator };

struct OptimizeSettings {
  int iters = 200;
  double step = 1.0;
  DesignObjective objective = DesignObjective::ratio;
};

/// Objective value at a physical design. The metric acts on the displacement
/// variable w = diag(theta') z of the reduced system. nullopt encodes the
/// -infinity sentinel (nonpositive denominator).
std::optional<double> evaluate_design(const DesignProblem& problem,
                                      const metrics::RatioQuadratic& f,
                                      const Eigen::VectorXd& theta_phys);

/// Exact gradient of evaluate_design via one forward and one transpose solve.
Eigen::VectorXd adjoint_gradient(const DesignProblem& problem, const metrics::RatioQuadratic& f,
                                 const Eigen::VectorXd& theta_phys);

/// Projected gradient ascent with backtracking (halve the step until the
/// objective does not decrease, at most 30 halvings). Starts from
/// theta' = 0.5 and returns the best iterate found.
DesignState optimize_design(const DesignProblem& problem, const metrics::RatioQuadratic& f,
                            const OptimizeSettings& settings = {});

struct ParetoPoint {
  double mu;      // scalarization weight; 0 = pure power, +inf = pure purity
  double purity;
  double power;   // numerator of the power metric at the design
  Eigen::VectorXd theta_prime;
};

/// Maximizes power_numerator + mu * purity_ratio over a geometric sweep of
/// mu. The endpoints run the pure-power (numerator) and pure-purity (ratio)
/// optimizations; the result is the non-dominated frontier sorted by power.
std::vector<ParetoPoint> pareto_sweep(const DesignProblem& problem,
                                      const metrics::RatioQuadratic& purity_metric,
                                      const metrics::RatioQuadratic& power_metric, int n_points,
                                      const OptimizeSettings& settings = {});

}  // namespace wavebound::heuristics

#endif
