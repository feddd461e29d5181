// metrics.hpp -- ratio-of-quadratics efficiency metrics and the semidefinite
// efficiency-metric test.
#ifndef WAVEBOUND_METRICS_HPP
#define WAVEBOUND_METRICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace wavebound::metrics {

/// Objective data for f(z) = (z'Pz + 2p'z + r)/(z'Qz + 2q'z + s).
/// P and Q must be symmetric.
struct RatioQuadratic {
  Eigen::MatrixXd P;
  Eigen::VectorXd p;
  double r = 0.0;
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  double s = 0.0;

  int dim() const { return static_cast<int>(P.rows()); }
  /// Validates symmetry (1e-12) and consistent dimensions; throws otherwise.
  void validate() const;
};

/// An index set S inducing the diagonal 0/1 selector matrix R.
struct Selector {
  std::vector<int> indices;  // distinct, ascending, in [0, m)

  static Selector all(int m);
  /// Dense diagonal R as a vector of 0/1 entries.
  Eigen::VectorXd diagonal(int m) const;
  bool contains(int i) const;
  bool subset_of(const Selector& other) const;
  void validate(int m) const;
};

/// Evaluates f at z. Returns nullopt (the -inf sentinel) when the denominator
/// is not strictly positive.
std::optional<double> evaluate(const RatioQuadratic& f, const Eigen::VectorXd& z);

/// Mode-purity objective (c'Rz)^2 / ||Rz||^2. Requires ||Rc|| = 1 within 1e-9.
RatioQuadratic normalized_overlap(const Eigen::VectorXd& c, const Selector& region);

/// Focusing efficiency ||R'z||^2 / ||Rz||^2 with spot S' contained in plane S.
RatioQuadratic focusing_efficiency(int m, const Selector& plane, const Selector& spot);

/// True iff both bordered matrices of the semidefinite efficiency-metric test
/// have smallest eigenvalue >= -tol, which certifies 0 <= f <= 1 on the
/// domain of f.
bool check_efficiency_metric(const RatioQuadratic& f, double tol = 1e-9);

}  // namespace wavebound::metrics

#endif
