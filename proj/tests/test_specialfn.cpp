#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "support/bessel_reference.hpp"
#include "wavebound/specialfn.hpp"

using namespace wavebound::specialfn;
using std::complex;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel_err(complex<double> got, complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("hankel0/hankel1 match the high-precision reference table") {
  for (const auto& r : testref::kBesselReference) {
    CAPTURE(r.x);
    CHECK(rel_err(hankel0(r.x), {r.j0, r.y0}) <= 1e-10);
    CHECK(rel_err(hankel1(r.x), {r.j1, r.y1}) <= 1e-10);
  }
}

TEST_CASE("reference values at x = 1") {
  const auto h0 = hankel0(1.0);
  const auto h1 = hankel1(1.0);
  CHECK(h0.real() == doctest::Approx(0.7651976865579666).epsilon(1e-12));
  CHECK(h0.imag() == doctest::Approx(0.0882569642156770).epsilon(1e-12));
  CHECK(h1.real() == doctest::Approx(0.4400505857449335).epsilon(1e-12));
  CHECK(h1.imag() == doctest::Approx(-0.7812128213002887).epsilon(1e-12));
}

TEST_CASE("leading asymptotic magnitude at x = 10") {
  const double mag = std::abs(hankel0(10.0));
  const double lead = std::sqrt(2.0 / (kPi * 10.0));
  CHECK(std::abs(mag - lead) / lead < 0.02);
}

TEST_CASE("Y0 logarithmic divergence as x -> 0+") {
  double prev = hankel0(0.1).imag();
  for (double x = 0.05; x > 1e-8; x *= 0.5) {
    const double cur = hankel0(x).imag();
    CHECK(cur < prev);  // monotone decrease toward -inf
    prev = cur;
  }
  CHECK(prev < -10.0);
}

TEST_CASE("Y1 small-argument limit: x*Im(H1(x)) -> -2/pi") {
  const double x = 1e-4;
  CHECK(std::abs(x * hankel1(x).imag() - (-2.0 / kPi)) <= 1e-6);
}

TEST_CASE("Wronskian J1*Y0 - J0*Y1 = 2/(pi x) over a log sweep") {
  // 200 log-spaced points in [1e-3, 1e3].
  for (int i = 0; i <= 200; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 200.0);
    CAPTURE(x);
    const double w = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x);
    const double expect = 2.0 / (kPi * x);
    CHECK(std::abs(w - expect) / expect <= 1e-9);
  }
}

TEST_CASE("Wronskian in (0, 50] (spot sweep)") {
  for (double x = 0.25; x <= 50.0; x += 0.25) {
    const double w = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x);
    CHECK(std::abs(w - 2.0 / (kPi * x)) * (kPi * x) / 2.0 <= 1e-9);
  }
}

TEST_CASE("derivative recurrence d/dx H0 = -H1 by central differences") {
  std::mt19937 rng(20240517);
  std::uniform_real_distribution<double> dist(0.1, 100.0);
  const double step = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const double x = dist(rng);
    CAPTURE(x);
    const complex<double> d = (hankel0(x + step) - hankel0(x - step)) / (2.0 * step);
    const complex<double> want = -hankel1(x);
    CHECK(std::abs(d - want) / std::abs(want) <= 1e-5);
  }
}

TEST_CASE("series and asymptotic regimes agree at the crossover") {
  const double xc = detail::regime_crossover;
  for (double x : {xc - 0.25, xc - 0.05, xc, xc + 0.05, xc + 0.25}) {
    double js0, ys0, js1, ys1, ja0, ya0, ja1, ya1;
    detail::jy01_series(x, js0, ys0, js1, ys1);
    detail::jy01_asymptotic(x, ja0, ya0, ja1, ya1);
    CHECK(rel_err({ja0, ya0}, {js0, ys0}) <= 1e-9);
    CHECK(rel_err({ja1, ya1}, {js1, ys1}) <= 1e-9);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(hankel0(0.0), std::domain_error);
  CHECK_THROWS_AS(hankel0(-1.0), std::domain_error);
  CHECK_THROWS_AS(hankel1(0.0), std::domain_error);
  CHECK_THROWS_AS(hankel1(-0.5), std::domain_error);
  CHECK_THROWS_AS(hankel0(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(hankel1(std::numeric_limits<double>::infinity()), std::domain_error);
}
