#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "wavebound/sdp.hpp"

using namespace wavebound::sdp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_symmetric(int n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = gauss(rng);
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  return A;
}

// lambda-max problem: minimize t s.t. t I >= P.
ConicProblem lambda_max_problem(const MatrixXd& P) {
  ConicProblem p;
  const int n = static_cast<int>(P.rows());
  p.objective = VectorXd::Ones(1);
  p.lmi_terms = {MatrixXd::Identity(n, n), -P};
  p.nonneg_count = 1;
  return p;
}

}  // namespace

TEST_CASE("psd_project basics") {
  MatrixXd d = VectorXd::LinSpaced(3, 1.0, 3.0).asDiagonal();
  CHECK((psd_project(d) - d).norm() <= 1e-12);

  MatrixXd m(2, 2);
  m << 1, 0, 0, -1;
  MatrixXd want(2, 2);
  want << 1, 0, 0, 0;
  CHECK((psd_project(m) - want).norm() <= 1e-12);

  CHECK_THROWS_AS(psd_project(MatrixXd::Constant(2, 2, std::nan(""))), std::invalid_argument);
  MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(psd_project(asym), std::invalid_argument);
}

TEST_CASE("psd_project is the nearest PSD point (sampled)") {
  std::mt19937 rng(42);
  const int n = 5;
  const MatrixXd M = random_symmetric(n, rng);
  const MatrixXd proj = psd_project(M);
  const double dist = (proj - M).norm();
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixXd B = random_symmetric(n, rng);
    const MatrixXd S = B * B.transpose();  // random PSD
    CHECK(dist <= (S - M).norm() + 1e-12);
  }
}

TEST_CASE("min_eigenvalue") {
  MatrixXd d = Eigen::Vector3d(3.0, -2.0, 5.0).asDiagonal();
  CHECK(min_eigenvalue(d) == doctest::Approx(-2.0).epsilon(1e-12));

  std::mt19937 rng(7);
  const MatrixXd B = random_symmetric(6, rng);
  CHECK(min_eigenvalue(B.transpose() * B) >= -1e-12);

  const MatrixXd M = random_symmetric(8, rng);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
  CHECK(min_eigenvalue(M) == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-10));
}

TEST_CASE("lambda-max toy: diag(1,2,3)") {
  ConicProblem p = lambda_max_problem(Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal());
  const SolverResult res = solve(p);
  REQUIRE(res.status == SolveStatus::optimal);
  CHECK(res.lambda[0] == doctest::Approx(3.0).epsilon(1e-5));

  // primal recovery: X PSD, tr(X) = 1, tr(P X) = 3
  REQUIRE(res.primal_X.has_value());
  const MatrixXd& X = *res.primal_X;
  CHECK(min_eigenvalue(X) >= -1e-6);
  CHECK(X.trace() == doctest::Approx(1.0).epsilon(1e-5));
  const MatrixXd P = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  CHECK((P.cwiseProduct(X)).sum() == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("scalar LMI toy: minimize t with t >= c") {
  for (double c : {2.0, 0.25}) {
    ConicProblem p;
    p.objective = VectorXd::Ones(1);
    p.lmi_terms = {MatrixXd::Identity(1, 1), MatrixXd::Constant(1, 1, -c)};
    p.nonneg_count = 0;
    const SolverResult res = solve(p);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(res.lambda[0] == doctest::Approx(c).epsilon(1e-7));
  }
}

TEST_CASE("nonnegativity constraint binds") {
  // minimize t s.t. s*diag(1,-1) + t*I >= diag(0,2).
  // With s free the optimum is t=1 (s=-1); with s >= 0 it is t=2.
  ConicProblem p;
  p.objective = Eigen::Vector2d(0.0, 1.0);
  MatrixXd F1 = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  MatrixXd P = Eigen::Vector2d(0.0, 2.0).asDiagonal();
  p.lmi_terms = {F1, MatrixXd::Identity(2, 2), -P};

  p.nonneg_count = 0;
  SolverResult free_res = solve(p);
  REQUIRE(free_res.status == SolveStatus::optimal);
  CHECK(free_res.lambda[1] == doctest::Approx(1.0).epsilon(1e-5));

  p.nonneg_count = 1;
  SolverResult nn_res = solve(p);
  REQUIRE(nn_res.status == SolveStatus::optimal);
  CHECK(nn_res.lambda[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(nn_res.lambda[0] >= -1e-7);
}

TEST_CASE("warm start from a feasible dual point is not degraded") {
  std::mt19937 rng(2024);
  const int n = 6;
  const MatrixXd P = random_symmetric(n, rng);
  ConicProblem p = lambda_max_problem(P);

  const double feasible_t = min_eigenvalue(P) + (P - min_eigenvalue(P) * MatrixXd::Identity(n, n)).norm() + 1.0;
  VectorXd warm(1);
  warm << feasible_t;
  const SolverResult res = solve(p, {}, warm);
  REQUIRE(res.status == SolveStatus::optimal);
  CHECK(res.lambda[0] <= feasible_t + 1e-6);
  const double lmax = -min_eigenvalue(-P);
  CHECK(std::abs(res.lambda[0] - lmax) <= 1e-4 * (1.0 + std::abs(lmax)));
}

TEST_CASE("infeasible problem is detected") {
  // S = 0*lambda + (-1) >= 0 is impossible.
  ConicProblem p;
  p.objective = VectorXd::Ones(1);
  p.lmi_terms = {MatrixXd::Zero(1, 1), MatrixXd::Constant(1, 1, -1.0)};
  p.nonneg_count = 0;
  const SolverResult res = solve(p);
  CHECK(res.status == SolveStatus::infeasible);
}

TEST_CASE("determinism: identical inputs give identical iterates") {
  std::mt19937 rng(11);
  ConicProblem p = lambda_max_problem(random_symmetric(5, rng));
  const SolverResult a = solve(p);
  const SolverResult b = solve(p);
  CHECK(a.iterations == b.iterations);
  CHECK((a.lambda - b.lambda).norm() == 0.0);
}

TEST_CASE("scaling on/off agree") {
  std::mt19937 rng(33);
  MatrixXd P = random_symmetric(5, rng);
  P *= 50.0;  // poorly scaled on purpose
  ConicProblem p = lambda_max_problem(P);
  SolverSettings on;
  SolverSettings off;
  off.scaling = false;
  const SolverResult ra = solve(p, on);
  const SolverResult rb = solve(p, off);
  REQUIRE(ra.status == SolveStatus::optimal);
  REQUIRE(rb.status == SolveStatus::optimal);
  CHECK(ra.lambda[0] == doctest::Approx(rb.lambda[0]).epsilon(1e-5));
}

TEST_CASE("residual trend is broadly monotone") {
  std::mt19937 rng(17);
  const int n = 12;
  const MatrixXd P = random_symmetric(n, rng);
  ConicProblem p = lambda_max_problem(P);
  SolverSettings s;
  s.eps_abs = 1e-12;  // force a long run
  s.eps_rel = 1e-12;
  s.max_iters = 2000;
  const SolverResult res = solve(p, s);
  REQUIRE(res.trace.size() >= 10);
  auto level = [&](size_t i) { return std::max(res.trace[i].primal, res.trace[i].dual); };
  int violations = 0, comparisons = 0;
  for (size_t i = 0; i + 1 < res.trace.size(); ++i) {
    for (size_t j = i + 1; j < res.trace.size(); ++j) {
      if (res.trace[j].iteration >= 10 * res.trace[i].iteration) {
        ++comparisons;
        if (level(j) > level(i) * 1.05) ++violations;
        break;
      }
    }
  }
  REQUIRE(comparisons > 0);
  CHECK(violations <= comparisons / 20 + 1);  // 5% slack
}
