#include "wavebound/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavebound::specialfn {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kPi = 3.14159265358979323846264338;

void check_domain(double x, const char* fn) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error(std::string(fn) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

}  // namespace

namespace detail {

// Ascending series. J0, J1 are the standard power series; Y0, Y1 use the
// harmonic-number (digamma) series
//   Y0 = (2/pi) [ (ln(x/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2 ]
//   Y1 = (2/pi) [ (ln(x/2)+gamma) J1 - 1/x
//                 - (x/4) sum_{k>=0} (-1)^k (H_k + H_{k+1}) q^k/(k!(k+1)!) ]
// with q = x^2/4 and H_0 = 0.
void jy01_series(double x, double& j0, double& y0, double& j1, double& y1) {
  const double q = 0.25 * x * x;

  // J0 and the Y0 correction series share term magnitudes.
  double term0 = 1.0;       // q^k / (k!)^2
  double sum_j0 = 1.0;
  double sum_y0 = 0.0;      // sum (-1)^{k+1} H_k q^k/(k!)^2
  // J1/Y1 series: term1 = q^k / (k!(k+1)!)
  double term1 = 1.0;
  double sum_j1 = 1.0;
  double sum_y1 = 1.0;      // sum (-1)^k (H_k + H_{k+1}) q^k/(k!(k+1)!), k=0 term = H_1 = 1
  double harmonic = 0.0;
  double sign = 1.0;

  for (int k = 1; k < 200; ++k) {
    term0 *= q / (static_cast<double>(k) * k);
    term1 *= q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    sign = -sign;
    const double h_next = harmonic + 1.0 / (k + 1);
    sum_j0 += sign * term0;
    sum_y0 += -sign * harmonic * term0;
    sum_j1 += sign * term1;
    sum_y1 += sign * (harmonic + h_next) * term1;
    if (term0 < 1e-18 * std::abs(sum_j0) && term1 < 1e-18) break;
  }

  const double lg = std::log(0.5 * x) + kEulerGamma;
  j0 = sum_j0;
  j1 = 0.5 * x * sum_j1;
  y0 = (2.0 / kPi) * (lg * j0 + sum_y0);
  y1 = (2.0 / kPi) * (lg * j1 - 1.0 / x) - (x / (2.0 * kPi)) * sum_y1;
}

namespace {

// Hankel's asymptotic amplitude/phase series for order nu (mu = 4 nu^2):
//   u_m = prod_{j=1..m} (mu - (2j-1)^2) / (m! (8x)^m)
//   P = u_0 - u_2 + u_4 - ...,  Q = u_1 - u_3 + ...
// truncated at the smallest term.
void amplitude_phase(double mu, double x, double& p, double& q) {
  p = 1.0;
  q = 0.0;
  double u = 1.0;
  double prev = std::abs(u);
  double sign_p = -1.0, sign_q = 1.0;
  for (int m = 1; m < 60; ++m) {
    const double odd = 2.0 * m - 1.0;
    u *= (mu - odd * odd) / (8.0 * m * x);
    if (std::abs(u) >= prev) break;  // divergent tail reached
    prev = std::abs(u);
    if (m % 2 == 1) {
      q += sign_q * u;
      sign_q = -sign_q;
    } else {
      p += sign_p * u;
      sign_p = -sign_p;
    }
    if (std::abs(u) < 1e-18) break;
  }
}

}  // namespace

void jy01_asymptotic(double x, double& j0, double& y0, double& j1, double& y1) {
  double p0, q0, p1, q1;
  amplitude_phase(0.0, x, p0, q0);
  amplitude_phase(4.0, x, p1, q1);
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double w0 = x - 0.25 * kPi;
  const double w1 = x - 0.75 * kPi;
  const double c0 = std::cos(w0), s0 = std::sin(w0);
  const double c1 = std::cos(w1), s1 = std::sin(w1);
  j0 = amp * (p0 * c0 - q0 * s0);
  y0 = amp * (p0 * s0 + q0 * c0);
  j1 = amp * (p1 * c1 - q1 * s1);
  y1 = amp * (p1 * s1 + q1 * c1);
}

}  // namespace detail

namespace {

void jy01(double x, double& j0, double& y0, double& j1, double& y1) {
  if (x < detail::regime_crossover) {
    detail::jy01_series(x, j0, y0, j1, y1);
  } else {
    detail::jy01_asymptotic(x, j0, y0, j1, y1);
  }
}

}  // namespace

std::complex<double> hankel0(double x) {
  check_domain(x, "hankel0");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return {j0, y0};
}

std::complex<double> hankel1(double x) {
  check_domain(x, "hankel1");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return {j1, y1};
}

double bessel_j0(double x) {
  check_domain(x, "bessel_j0");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return j0;
}

double bessel_y0(double x) {
  check_domain(x, "bessel_y0");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return y0;
}

double bessel_j1(double x) {
  check_domain(x, "bessel_j1");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return j1;
}

double bessel_y1(double x) {
  check_domain(x, "bessel_y1");
  double j0, y0, j1, y1;
  jy01(x, j0, y0, j1, y1);
  return y1;
}

}  // namespace wavebound::specialfn
