#!/usr/bin/env python3
"""Dumb exhaustive search for rational points of bounded height.

Independent oracle for the point-census fixtures: no shared code with the
package, no shortcuts beyond the parameterization x = m/e^2, y = n/e^3
(gcd(m,e)=1) that covers every rational point of an integral short
Weierstrass model.  Height of (x,y) is the max absolute value of the
coprime cleared projective triple (m*e, n, e^3); the point at infinity
has height 1.

Usage: brute_force_points.py a b B
"""

from __future__ import annotations

import math
import sys


def points_up_to(a: int, b: int, B: int):
    pts = [("inf",)]
    e = 1
    while e**3 <= B:
        mmax = B // e
        for m in range(-mmax, mmax + 1):
            if math.gcd(m, e) != 1:
                continue
            s = m**3 + a * m * e**4 + b * e**6
            if s < 0:
                continue
            n = math.isqrt(s)
            if n * n != s:
                continue
            g = math.gcd(math.gcd(abs(m * e), n), e**3)
            h = max(abs(m * e) // g, n // g, e**3 // g)
            if h > B:
                continue
            if n == 0:
                pts.append((m, e, 0, h))
            else:
                pts.append((m, e, n, h))
                pts.append((m, e, -n, h))
        e += 1
    return pts


def main():
    a, b, B = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3])
    pts = points_up_to(a, b, B)
    print(f"curve y^2 = x^3 + {a}x + {b}, B = {B}: {len(pts)} points")
    for t in pts:
        if t == ("inf",):
            print("  infinity (H=1)")
        else:
            m, e, n, h = t
            print(f"  x = {m}/{e}^2, y = {n}/{e}^3   H = {h}")


if __name__ == "__main__":
    main()
