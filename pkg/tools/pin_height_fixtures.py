#!/usr/bin/env python3
"""Pin height fixtures before the main build.

Three independent oracles, no package imports:
  1. periods of dx/2y by direct numerical quadrature (mpmath.quad), to be
     matched by the AGM evaluation in the package;
  2. the doubling-limit canonical height 4^{-n} h(2^n P) with exact
     big-rational point doubling, n = 4 and 6;
  3. the lattice discriminant identity (2pi/w1)^12 eta(tau)^24 = Delta as
     a joint check on 1.

Prints values to freeze into the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 45


def quad_periods(a, b):
    roots = mp.polyroots([1, 0, a, b], extraprec=80)
    disc = -16 * (4 * a**3 + 27 * b * b)
    if disc > 0:
        e1, e2, e3 = sorted((r.real for r in roots), reverse=True)
        f = lambda x: 1 / mp.sqrt((x - e1) * (x - e2) * (x - e3))
        w1 = mp.quad(f, [e1, mp.inf])
        g = lambda x: 1 / mp.sqrt((e1 - x) * (e2 - x) * (x - e3))
        w2 = mp.mpc(0, 1) * mp.quad(g, [e3, e2])
    else:
        e1 = next(r.real for r in roots if abs(mp.im(r)) < 1e-30)
        z = next(r for r in roots if mp.im(r) > 1e-30)
        beta, gamma = mp.re(z), mp.im(z)
        f = lambda x: 1 / mp.sqrt((x - e1) * ((x - beta) ** 2 + gamma**2))
        w1 = mp.quad(f, [e1, mp.inf])
        g = lambda x: 1 / mp.sqrt((e1 - x) * ((x - beta) ** 2 + gamma**2))
        nu = mp.quad(g, [-mp.inf, e1])
        w2 = (w1 + mp.mpc(0, 1) * nu) / 2
    return w1, w2, disc


def eta(tau):
    q = mp.exp(2j * mp.pi * tau)
    return mp.exp(2j * mp.pi * tau / 24) * mp.qp(q)


def reduce_basis(w1, w2):
    w1, w2 = mp.mpc(w1), mp.mpc(w2)
    if mp.im(w2 / w1) < 0:
        w2 = -w2
    for _ in range(500):
        tau = w2 / w1
        k = mp.floor(mp.re(tau) + mp.mpf(1) / 2)
        if k:
            w2 -= k * w1
            tau = w2 / w1
        if abs(tau) < 1 - mp.mpf("1e-38"):
            w1, w2 = w2, -w1
        else:
            return w1, w2
    raise RuntimeError("reduction failed")


def ec_double(a, b, x, y):
    lam = Fraction(3 * x * x + a, 2 * y)
    x3 = lam * lam - 2 * x
    y3 = lam * (x - x3) - y
    return x3, y3


def proj_height(x, y):
    den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
    X = x.numerator * (den // x.denominator)
    Y = y.numerator * (den // y.denominator)
    g = math.gcd(math.gcd(abs(X), abs(Y)), den)
    return max(abs(X) // g, abs(Y) // g, den // g)


def doubling_limit(a, b, x0, y0, n):
    x, y = Fraction(x0), Fraction(y0)
    for _ in range(n):
        x, y = ec_double(a, b, x, y)
    H = proj_height(x, y)
    return mp.log(mp.mpf(H)) / mp.mpf(4) ** n


def main():
    print("== period lattices (quadrature) ==")
    for (a, b) in [(-1, 0), (0, 1), (-25, 0), (0, -2)]:
        w1, w2, disc = quad_periods(a, b)
        r1, r2 = reduce_basis(w1, w2)
        tau = r2 / r1
        dl = (2 * mp.pi / r1) ** 12 * eta(tau) ** 24
        print(f" (a,b)=({a},{b}) w1={mp.nstr(w1, 25)}")
        print(f"    w2={mp.nstr(w2, 25)}")
        print(f"    lattice disc check: {mp.nstr(dl, 20)} vs {disc}")

    print("== doubling-limit canonical heights (projective normalization) ==")
    for (a, b, x0, y0) in [(-25, 0, -4, 6), (0, -2, 3, 5), (-16, 16, 0, 4)]:
        for n in (4, 6):
            v = doubling_limit(a, b, x0, y0, n)
            print(f" (a,b)=({a},{b}) P=({x0},{y0}) n={n}: {mp.nstr(v, 25)}")


if __name__ == "__main__":
    main()
