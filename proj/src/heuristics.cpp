#include "wavebound/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavebound::heuristics {

namespace {

struct ForwardSolution {
  Eigen::VectorXd z;  // reduced field
  Eigen::VectorXd w;  // displacement diag(theta) z
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;  // of I + G diag(theta)
  Eigen::VectorXd theta_lift;
};

ForwardSolution forward_solve(const DesignProblem& problem, const Eigen::VectorXd& theta_phys) {
  ForwardSolution fs;
  fs.theta_lift = problem.lift_theta(theta_phys);
  const int n = problem.lifted_dim();
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n);
  lhs.noalias() += problem.system.G * fs.theta_lift.asDiagonal();
  fs.lu.compute(lhs);
  const double min_pivot = fs.lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-14 * lhs.cwiseAbs().maxCoeff()) {
    throw std::runtime_error("adjoint_gradient: singular forward system");
  }
  fs.z = fs.lu.solve(problem.system.b_prime);
  fs.w = fs.theta_lift.cwiseProduct(fs.z);
  return fs;
}

// Value and w-gradient of num/den (or of the numerator alone when the
// denominator data is trivial Q=0, q=0, s=1).
struct ValueGrad {
  bool defined;
  double value;
  Eigen::VectorXd grad;
};

ValueGrad value_and_wgrad(const metrics::RatioQuadratic& f, const Eigen::VectorXd& w) {
  ValueGrad out;
  const double den = w.dot(f.Q * w) + 2.0 * f.q.dot(w) + f.s;
  if (!(den > 0.0)) {
    out.defined = false;
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double num = w.dot(f.P * w) + 2.0 * f.p.dot(w) + f.r;
  out.defined = true;
  out.value = num / den;
  out.grad = (2.0 / den) * ((f.P * w + f.p) - out.value * (f.Q * w + f.q));
  return out;
}

Eigen::VectorXd collapse_pairs(const DesignProblem& problem, const Eigen::VectorXd& grad_lift) {
  if (problem.pair_offset <= 0) return grad_lift;
  const int np = problem.pair_offset;
  Eigen::VectorXd g(np);
  for (int i = 0; i < np; ++i) g[i] = grad_lift[i] + grad_lift[i + np];
  return g;
}

// Gradient of f(w(theta)) through the physics: with phi = df/dw,
//   psi = phi - G' (I + G D)^{-T} (D phi),  d f / d theta_j = psi_j z_j.
Eigen::VectorXd gradient_from_phi(const DesignProblem& problem, const ForwardSolution& fs,
                                  const Eigen::VectorXd& phi) {
  const Eigen::VectorXd dphi = fs.theta_lift.cwiseProduct(phi);
  const Eigen::VectorXd v = fs.lu.transpose().solve(dphi);
  const Eigen::VectorXd psi = phi - problem.system.G.transpose() * v;
  return collapse_pairs(problem, psi.cwiseProduct(fs.z));
}

metrics::RatioQuadratic numerator_only(const metrics::RatioQuadratic& f) {
  metrics::RatioQuadratic g = f;
  g.Q = Eigen::MatrixXd::Zero(f.dim(), f.dim());
  g.q = Eigen::VectorXd::Zero(f.dim());
  g.s = 1.0;
  return g;
}

}  // namespace

Eigen::VectorXd DesignProblem::lift_theta(const Eigen::VectorXd& theta_phys) const {
  if (pair_offset <= 0) return theta_phys;
  if (theta_phys.size() != pair_offset) {
    throw std::invalid_argument("DesignProblem: physical design size mismatch");
  }
  Eigen::VectorXd lifted(2 * pair_offset);
  lifted.head(pair_offset) = theta_phys;
  lifted.tail(pair_offset) = theta_phys;
  return lifted;
}

void DesignProblem::validate() const {
  system.validate();
  if (!system.fixed_contrast.empty() || !system.zero_indices().empty()) {
    throw std::invalid_argument("DesignProblem: system must be reduced to free variables");
  }
  if (pair_offset > 0 && system.size() != 2 * pair_offset) {
    throw std::invalid_argument("DesignProblem: pair_offset must split the system in half");
  }
}

std::optional<double> evaluate_design(const DesignProblem& problem,
                                      const metrics::RatioQuadratic& f,
                                      const Eigen::VectorXd& theta_phys) {
  const ForwardSolution fs = forward_solve(problem, theta_phys);
  const ValueGrad vg = value_and_wgrad(f, fs.w);
  if (!vg.defined) return std::nullopt;
  return vg.value;
}

Eigen::VectorXd adjoint_gradient(const DesignProblem& problem, const metrics::RatioQuadratic& f,
                                 const Eigen::VectorXd& theta_phys) {
  problem.validate();
  const ForwardSolution fs = forward_solve(problem, theta_phys);
  const ValueGrad vg = value_and_wgrad(f, fs.w);
  if (!vg.defined) {
    throw std::runtime_error("adjoint_gradient: objective undefined (nonpositive denominator)");
  }
  return gradient_from_phi(problem, fs, vg.grad);
}

namespace {

// Shared ascent loop over a value/gradient functor.
template <typename Eval, typename Grad>
DesignState ascend(const DesignProblem& problem, Eval eval, Grad grad,
                   const OptimizeSettings& settings) {
  const int np = problem.physical_dim();
  DesignState state;
  state.theta_prime = Eigen::VectorXd::Constant(np, 0.5);

  double step = settings.step;
  double best_value = eval(state.theta_prime);
  Eigen::VectorXd best_theta = state.theta_prime;
  state.objective_trace.push_back(best_value);

  Eigen::VectorXd theta = state.theta_prime;
  double current = best_value;
  for (int it = 0; it < settings.iters; ++it) {
    const Eigen::VectorXd g = grad(theta);
    state.gradient_norm_trace.push_back(g.norm());
    if (g.norm() == 0.0) break;

    bool accepted = false;
    double s = step;
    for (int halving = 0; halving <= 30; ++halving) {
      Eigen::VectorXd cand = (theta + s * g).cwiseMax(0.0).cwiseMin(1.0);
      const double v = eval(cand);
      if (v >= current) {
        theta = std::move(cand);
        current = v;
        accepted = true;
        // allow the step to recover after earlier halvings
        step = std::min(s * 2.0, settings.step * 1024.0);
        break;
      }
      s *= 0.5;
    }
    state.objective_trace.push_back(current);
    if (current > best_value) {
      best_value = current;
      best_theta = theta;
    }
    if (!accepted) break;  // no non-decreasing step within 30 halvings
  }

  state.theta_prime = best_theta;
  return state;
}

double eval_or_neg_inf(const DesignProblem& problem, const metrics::RatioQuadratic& f,
                       const Eigen::VectorXd& theta) {
  const auto v = evaluate_design(problem, f, theta);
  return v ? *v : -std::numeric_limits<double>::infinity();
}

}  // namespace

DesignState optimize_design(const DesignProblem& problem, const metrics::RatioQuadratic& f,
                            const OptimizeSettings& settings) {
  problem.validate();
  f.validate();
  const metrics::RatioQuadratic target =
      settings.objective == DesignObjective::numerator ? numerator_only(f) : f;
  return ascend(
      problem, [&](const Eigen::VectorXd& t) { return eval_or_neg_inf(problem, target, t); },
      [&](const Eigen::VectorXd& t) { return adjoint_gradient(problem, target, t); }, settings);
}

std::vector<ParetoPoint> pareto_sweep(const DesignProblem& problem,
                                      const metrics::RatioQuadratic& purity_metric,
                                      const metrics::RatioQuadratic& power_metric, int n_points,
                                      const OptimizeSettings& settings) {
  if (n_points < 2) throw std::invalid_argument("pareto_sweep: need at least two points");
  problem.validate();
  const metrics::RatioQuadratic power_num = numerator_only(power_metric);

  auto measure = [&](const Eigen::VectorXd& theta, double mu) {
    ParetoPoint p;
    p.mu = mu;
    p.theta_prime = theta;
    p.power = eval_or_neg_inf(problem, power_num, theta);
    p.purity = eval_or_neg_inf(problem, purity_metric, theta);
    return p;
  };

  std::vector<ParetoPoint> points;

  OptimizeSettings s = settings;
  s.objective = DesignObjective::numerator;
  const DesignState power_end = optimize_design(problem, power_metric, s);
  points.push_back(measure(power_end.theta_prime, 0.0));

  s.objective = DesignObjective::ratio;
  const DesignState purity_end = optimize_design(problem, purity_metric, s);
  points.push_back(measure(purity_end.theta_prime, std::numeric_limits<double>::infinity()));

  // Interior scalarizations: mu geometric around the power scale so the two
  // terms actually compete.
  const double scale = std::max({std::abs(points[0].power), std::abs(points[1].power), 1e-12});
  const int interior = n_points - 2;
  for (int j = 0; j < interior; ++j) {
    const double expo = -2.0 + 4.0 * (j + 1) / (interior + 1);
    const double mu = scale * std::pow(10.0, expo);
    auto eval = [&](const Eigen::VectorXd& t) {
      const ForwardSolution fs = forward_solve(problem, t);
      const ValueGrad vn = value_and_wgrad(power_num, fs.w);
      const ValueGrad vr = value_and_wgrad(purity_metric, fs.w);
      if (!vr.defined) return -std::numeric_limits<double>::infinity();
      return vn.value + mu * vr.value;
    };
    auto grad = [&](const Eigen::VectorXd& t) {
      const ForwardSolution fs = forward_solve(problem, t);
      const ValueGrad vn = value_and_wgrad(power_num, fs.w);
      const ValueGrad vr = value_and_wgrad(purity_metric, fs.w);
      if (!vr.defined) {
        throw std::runtime_error("pareto_sweep: purity undefined during scalarized ascent");
      }
      const Eigen::VectorXd phi = vn.grad + mu * vr.grad;
      return gradient_from_phi(problem, fs, phi);
    };
    const DesignState st = ascend(problem, eval, grad, settings);
    points.push_back(measure(st.theta_prime, mu));
  }

  // Non-dominated filter, then sort by power.
  std::vector<ParetoPoint> frontier;
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& qpt : points) {
      if (&qpt == &p) continue;
      if (qpt.power >= p.power && qpt.purity >= p.purity &&
          (qpt.power > p.power + 1e-12 || qpt.purity > p.purity + 1e-12)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(p);
  }
  std::sort(frontier.begin(), frontier.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) { return a.power < b.power; });
  return frontier;
}

}  // namespace wavebound::heuristics
