#!/usr/bin/env python3
"""Generate high-precision reference values for the order-0/1 Bessel and
Hankel functions used by the test suite. Values are printed as C++ table
initializers at 25 significant digits (mpmath, 60-digit working precision).
"""
import mpmath as mp

mp.mp.dps = 60

def row(x):
    j0 = mp.besselj(0, x)
    y0 = mp.bessely(0, x)
    j1 = mp.besselj(1, x)
    y1 = mp.bessely(1, x)
    fmt = lambda v: mp.nstr(v, 25, strip_zeros=False)
    return f"    {{{fmt(mp.mpf(x))}, {fmt(j0)}, {fmt(y0)}, {fmt(j1)}, {fmt(y1)}}},"

# log-spaced sweep plus targeted points (unit values, crossover band, extremes)
xs = []
for k in range(25):
    xs.append(mp.mpf(10) ** (mp.mpf(-3) + 6 * mp.mpf(k) / 24))
xs += [mp.mpf(1), mp.mpf(10), mp.mpf('0.5'), mp.mpf('1e-4'),
       mp.mpf('11.0'), mp.mpf('11.5'), mp.mpf('12.0'), mp.mpf('12.5'), mp.mpf('13.0'),
       mp.mpf('50.0'), mp.mpf('100.0'), mp.mpf('1000.0'), mp.mpf('10000.0'),
       mp.mpf('7.9'), mp.mpf('8.1'), mp.mpf('9.3')]
xs = sorted(set(xs))

print("// x, J0(x), Y0(x), J1(x), Y1(x)  -- 25 significant digits")
for x in xs:
    print(row(x))

# Green's-operator diagonal fixture: k = 2*pi, h = 1/60
k = 2 * mp.pi
h = mp.mpf(1) / 60
diag = 4 / (mp.pi * k**2) - mp.mpc(0, 1) * h / k * (mp.besselj(1, k*h/2) + mp.mpc(0,1)*mp.bessely(1, k*h/2))
print("\n// G diagonal, delta=1, k=2*pi, h=1/60:")
print("// re =", mp.nstr(diag.real, 25))
print("// im =", mp.nstr(diag.imag, 25))
