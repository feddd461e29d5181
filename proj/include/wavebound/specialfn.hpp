// specialfn.hpp -- Bessel/Hankel functions of orders 0 and 1 for real x > 0.
#ifndef WAVEBOUND_SPECIALFN_HPP
#define WAVEBOUND_SPECIALFN_HPP

#include <complex>

namespace wavebound::specialfn {

/// H0(x) = J0(x) + i*Y0(x), first kind, order zero. Requires x > 0.
/// Throws std::domain_error for x <= 0 or non-finite x.
std::complex<double> hankel0(double x);

/// H1(x) = J1(x) + i*Y1(x), first kind, order one. Requires x > 0.
std::complex<double> hankel1(double x);

// Individual components, same domain restrictions.
double bessel_j0(double x);
double bessel_y0(double x);
double bessel_j1(double x);
double bessel_y1(double x);

namespace detail {

// Regime boundary between the ascending power series and the large-argument
// (Hankel) asymptotic expansion. Exposed so the seam can be tested from both
// sides.
inline constexpr double regime_crossover = 12.0;

// Evaluate all four components with the ascending series (valid for small x).
void jy01_series(double x, double& j0, double& y0, double& j1, double& y1);

// Evaluate all four components with the asymptotic expansion (valid for
// large x).
void jy01_asymptotic(double x, double& j0, double& y0, double& j1, double& y1);

}  // namespace detail

}  // namespace wavebound::specialfn

#endif
