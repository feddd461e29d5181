#include "wavebound/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavebound::metrics {

void RatioQuadratic::validate() const {
  const auto m = P.rows();
  if (P.cols() != m || Q.rows() != m || Q.cols() != m || p.size() != m || q.size() != m) {
    throw std::invalid_argument("RatioQuadratic: inconsistent dimensions");
  }
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("RatioQuadratic: P and Q must be symmetric");
  }
}

Selector Selector::all(int m) {
  Selector s;
  s.indices.resize(m);
  for (int i = 0; i < m; ++i) s.indices[i] = i;
  return s;
}

Eigen::VectorXd Selector::diagonal(int m) const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(m);
  for (int i : indices) d[i] = 1.0;
  return d;
}

bool Selector::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

bool Selector::subset_of(const Selector& other) const {
  return std::includes(other.indices.begin(), other.indices.end(), indices.begin(),
                       indices.end());
}

void Selector::validate(int m) const {
  int prev = -1;
  for (int i : indices) {
    if (i <= prev || i < 0 || i >= m) {
      throw std::invalid_argument("Selector: indices must be distinct, ascending, in range");
    }
    prev = i;
  }
}

std::optional<double> evaluate(const RatioQuadratic& f, const Eigen::VectorXd& z) {
  const double den = z.dot(f.Q * z) + 2.0 * f.q.dot(z) + f.s;
  if (!(den > 0.0)) return std::nullopt;
  const double num = z.dot(f.P * z) + 2.0 * f.p.dot(z) + f.r;
  return num / den;
}

RatioQuadratic normalized_overlap(const Eigen::VectorXd& c, const Selector& region) {
  const int m = static_cast<int>(c.size());
  region.validate(m);
  const Eigen::VectorXd rdiag = region.diagonal(m);
  const Eigen::VectorXd rc = rdiag.cwiseProduct(c);
  if (std::abs(rc.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("normalized_overlap: c must satisfy ||Rc|| = 1");
  }
  RatioQuadratic f;
  f.P = rc * rc.transpose();
  f.Q = rdiag.asDiagonal();
  f.p = Eigen::VectorXd::Zero(m);
  f.q = Eigen::VectorXd::Zero(m);
  f.r = 0.0;
  f.s = 0.0;
  return f;
}

RatioQuadratic focusing_efficiency(int m, const Selector& plane, const Selector& spot) {
  plane.validate(m);
  spot.validate(m);
  if (!spot.subset_of(plane)) {
    throw std::invalid_argument("focusing_efficiency: spot must be a subset of the plane");
  }
  RatioQuadratic f;
  f.P = spot.diagonal(m).asDiagonal();
  f.Q = plane.diagonal(m).asDiagonal();
  f.p = Eigen::VectorXd::Zero(m);
  f.q = Eigen::VectorXd::Zero(m);
  f.r = 0.0;
  f.s = 0.0;
  return f;
}

bool check_efficiency_metric(const RatioQuadratic& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("check_efficiency_metric: tol must be >= 0");
  f.validate();
  const int m = f.dim();
  Eigen::MatrixXd lower(m + 1, m + 1);
  lower.topLeftCorner(m, m) = f.P;
  lower.topRightCorner(m, 1) = f.p;
  lower.bottomLeftCorner(1, m) = f.p.transpose();
  lower(m, m) = f.r;

  Eigen::MatrixXd upper(m + 1, m + 1);
  upper.topLeftCorner(m, m) = f.Q - f.P;
  upper.topRightCorner(m, 1) = f.q - f.p;
  upper.bottomLeftCorner(1, m) = (f.q - f.p).transpose();
  upper(m, m) = f.s - f.r;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(lower, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) return false;
  es.compute(upper, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace wavebound::metrics
