#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "wavebound/metrics.hpp"

using namespace wavebound::metrics;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd unit(int m, int i) {
  VectorXd e = VectorXd::Zero(m);
  e[i] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("normalized overlap basics") {
  const int m = 4;
  const Selector region = Selector::all(m);
  const RatioQuadratic f = normalized_overlap(unit(m, 0), region);

  CHECK((f.P - unit(m, 0) * unit(m, 0).transpose()).norm() == 0.0);
  CHECK((f.Q - MatrixXd::Identity(m, m)).norm() == 0.0);

  CHECK(*evaluate(f, unit(m, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*evaluate(f, unit(m, 1)) == doctest::Approx(0.0));

  // zero field: denominator 0 -> sentinel
  CHECK(!evaluate(f, VectorXd::Zero(m)).has_value());
}

TEST_CASE("normalized overlap rejects unnormalized c") {
  const int m = 3;
  CHECK_THROWS_AS(normalized_overlap(2.0 * unit(m, 0), Selector::all(m)), std::invalid_argument);
  // c normalized on the full space but not on the region
  Selector region;
  region.indices = {1, 2};
  CHECK_THROWS_AS(normalized_overlap(unit(m, 0), region), std::invalid_argument);
}

TEST_CASE("normalized overlap is an efficiency metric (Cauchy-Schwarz sweep)") {
  std::mt19937 rng(81321);
  std::normal_distribution<double> gauss;
  const int m = 6;
  Selector region;
  region.indices = {0, 2, 3, 5};
  VectorXd c = VectorXd::Zero(m);
  for (int i : region.indices) c[i] = gauss(rng);
  c /= c.norm();
  const RatioQuadratic f = normalized_overlap(c, region);
  CHECK(check_efficiency_metric(f));

  for (int trial = 0; trial < 1000; ++trial) {
    VectorXd z(m);
    for (int i = 0; i < m; ++i) z[i] = gauss(rng);
    const auto v = evaluate(f, z);
    REQUIRE(v.has_value());
    CHECK(*v >= -1e-12);
    CHECK(*v <= 1.0 + 1e-12);
  }
}

TEST_CASE("focusing efficiency") {
  const int m = 8;
  Selector plane;
  plane.indices = {1, 2, 3, 4, 5};
  Selector spot;
  spot.indices = {2, 3};

  const RatioQuadratic f = focusing_efficiency(m, plane, spot);
  CHECK(check_efficiency_metric(f));

  std::mt19937 rng(5150);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    VectorXd z(m);
    for (int i = 0; i < m; ++i) z[i] = gauss(rng);
    double num = 0, den = 0;
    for (int i : spot.indices) num += z[i] * z[i];
    for (int i : plane.indices) den += z[i] * z[i];
    CHECK(*evaluate(f, z) == doctest::Approx(num / den).epsilon(1e-12));
  }

  // spot == plane -> identically 1; empty spot -> identically 0
  const RatioQuadratic all = focusing_efficiency(m, plane, plane);
  const RatioQuadratic none = focusing_efficiency(m, plane, Selector{});
  VectorXd z = VectorXd::LinSpaced(m, 1.0, 2.0);
  CHECK(*evaluate(all, z) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*evaluate(none, z) == doctest::Approx(0.0));

  // spot not inside plane is rejected
  Selector outside;
  outside.indices = {0, 2};
  CHECK_THROWS_AS(focusing_efficiency(m, plane, outside), std::invalid_argument);
}

TEST_CASE("efficiency-metric test on explicit matrices") {
  const int m = 2;
  RatioQuadratic f;
  f.p = VectorXd::Zero(m);
  f.q = VectorXd::Zero(m);

  f.P = 2.0 * MatrixXd::Identity(m, m);
  f.Q = MatrixXd::Identity(m, m);
  CHECK(!check_efficiency_metric(f));  // P > Q fails the upper block

  f.P = MatrixXd::Zero(m, m);
  f.P(0, 0) = 0.5;
  CHECK(check_efficiency_metric(f));
}

TEST_CASE("scale invariance of pure quadratic ratios") {
  std::mt19937 rng(99);
  std::normal_distribution<double> gauss;
  const int m = 5;
  VectorXd c(m);
  for (int i = 0; i < m; ++i) c[i] = gauss(rng);
  c /= c.norm();
  const RatioQuadratic f = normalized_overlap(c, Selector::all(m));
  for (int trial = 0; trial < 100; ++trial) {
    VectorXd z(m);
    for (int i = 0; i < m; ++i) z[i] = gauss(rng);
    const double base = *evaluate(f, z);
    for (double a : {-3.0, 0.5, 7.25}) {
      CHECK(std::abs(*evaluate(f, a * z) - base) <= 1e-12);
    }
  }
}

TEST_CASE("validation errors") {
  RatioQuadratic f;
  f.P = MatrixXd::Identity(2, 2);
  f.Q = MatrixXd::Identity(3, 3);
  f.p = VectorXd::Zero(2);
  f.q = VectorXd::Zero(2);
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);

  f.Q = MatrixXd::Identity(2, 2);
  f.Q(0, 1) = 1e-6;  // asymmetric
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);

  Selector bad;
  bad.indices = {0, 0};
  CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
}
