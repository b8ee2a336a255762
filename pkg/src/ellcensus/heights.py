"""Heights of rational points: naive, logarithmic, canonical, Faltings.

Normalization.  The projective embedding is P = (x : y : 1), so the naive
multiplicative height of an affine point is the max absolute value of the
coprime cleared triple, and the canonical height is the duplication limit
h(2^n P)/4^n of that height.  This is 3/2 times the x-coordinate height
hhat_x = lim 4^{-n} log max(|num x|, den x); both accessors are exposed.

The canonical height is computed by an exact place-by-place telescope of
the duplication map x(2P) = F(x)/G(x):

    hhat_x(P) = [log^+|x| + sum_n 4^{-(n+1)} d_n]  +  2 log e
                - sum_p log p * S_p(P),

where d_n is the archimedean height increment along the real duplication
orbit (computed with renormalized mpmath iterates), e^2 is the denominator
of x(P), and S_p = sum_n 4^{-(n+1)} v_p(gcd F_n, G_n) is an exact rational
computed by tracking the orbit p-adically.  Only primes dividing
Res(F, G) = 2^8 (4a^3+27b^2)^2 can contribute, and every per-step
valuation is bounded by v_p of that resultant, which gives hard tail
bounds for the p-adic series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import arith
from .elliptic import INFINITY_POINT, CurveModel, RationalPoint, add, multiply, torsion
from .precision import working_dps, working_precision


class PrecisionError(ArithmeticError):
    """Requested tolerance is unreachable at the configured precision."""


@dataclass(frozen=True)
class HeightProfile:
    point: RationalPoint
    naive_multiplicative: Fraction
    logarithmic: float
    canonical: float
    canonical_error: float


@dataclass(frozen=True)
class ZimmerConstant:
    nu: float
    d: float


# ---------------------------------------------------------------------------
# naive height


def _cleared_triple(P: RationalPoint) -> tuple[int, int, int]:
    if P.is_infinity:
        return (0, 1, 0)
    x, y = P.x, P.y
    den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
    X = x.numerator * (den // x.denominator)
    Y = y.numerator * (den // y.denominator)
    g = math.gcd(math.gcd(abs(X), abs(Y)), den)
    return (X // g, Y // g, den // g)


def naive_height(C: CurveModel, P: RationalPoint) -> Fraction:
    """Multiplicative height: max |coordinate| of the coprime triple (x:y:1)."""
    if not C.contains(P):
        raise ValueError("point not on curve")
    X, Y, Z = _cleared_triple(P)
    return Fraction(max(abs(X), abs(Y), abs(Z)))


def _x_parts(P: RationalPoint) -> tuple[int, int]:
    """(m, e) with x = m/e^2 in lowest terms; curve points always have square
    denominators."""
    den = P.x.denominator
    e = math.isqrt(den)
    if e * e != den:
        raise ValueError("x-denominator is not a square; point not on an integral model")
    return P.x.numerator, e


# ---------------------------------------------------------------------------
# the height-difference constant


def zimmer_d(C: CurveModel, field_degree: int = 1) -> ZimmerConstant:
    """The bound d with |hhat - h| <= d, from the model coefficients.

    nu sums -min{0, min(v(a)/2, v(b)/3)} over all places; for an integral
    model only the archimedean place contributes, with the convention
    v(q) = -log|q| and v(0) = +infinity.
    """
    with working_precision():
        terms = [mp.mpf(0)]
        if C.a:
            terms.append(mp.log(abs(C.a)) / 2)
        if C.b:
            terms.append(mp.log(abs(C.b)) / 3)
        nu = max(terms)
        d = (3 * nu + 7 * field_degree * mp.log(2)) / 2
        return ZimmerConstant(nu=float(nu), d=float(d))


# ---------------------------------------------------------------------------
# canonical height: archimedean series


def _arch_series(a: int, b: int, x: Fraction, terms: int):
    """log^+|x| plus the damped archimedean duplication increments.

    Returns (value, tail_bound) as mpf.  The orbit is iterated in
    normalized homogeneous coordinates, so each increment is log of a
    quantity bounded on the real locus; the tail is estimated from the
    observed increment range with a safety margin (validated against the
    exact doubling oracle in the test suite).
    """
    A, B = mp.mpf(a), mp.mpf(b)
    X = mp.mpf(x.numerator) / mp.mpf(x.denominator)
    scale = max(abs(X), mp.mpf(1))
    total = mp.log(scale)
    u, v = X / scale, 1 / scale
    dmax = mp.mpf(1)
    quarter = mp.mpf(1) / 4
    w = quarter
    for _ in range(terms):
        u2 = u * u
        v2 = v * v
        F = u2 * u2 - 2 * A * u2 * v2 - 8 * B * u * v * v2 + A * A * v2 * v2
        G = 4 * v * (u * u2 + A * u * v2 + B * v * v2)
        M = max(abs(F), abs(G))
        if M == 0:
            raise PrecisionError("duplication orbit hit the point at infinity")
        d = mp.log(M)
        total += w * d
        w *= quarter
        dmax = max(dmax, abs(d))
        u, v = F / M, G / M
    tail = (dmax + 2) * mp.mpf(4) ** (-terms) / 3
    return total, tail


# ---------------------------------------------------------------------------
# canonical height: exact p-adic series


def _padic_series(a: int, b: int, m: int, e2: int, p: int, vres: int, terms: int) -> Fraction:
    """S_p = sum_n 4^{-(n+1)} v_p(gcd(F_n, G_n)), exactly.

    The projective orbit [U:V] of x(P) = m/e^2 is tracked modulo p^K; each
    step's gcd valuation is bounded by vres = v_p(Res(F,G)), so precision
    loss is bounded and the truncation tail is provably below
    vres * 4^{-terms}/3 (accounted by the caller).
    """
    K = vres * terms + 48
    pK = p**K
    U, V = m % pK, e2 % pK
    total = Fraction(0)
    avail = K
    weight = Fraction(1, 4)
    for _ in range(terms):
        U2 = U * U % pK
        V2 = V * V % pK
        F = (U2 * U2 - 2 * a * U2 * V2 - 8 * b * U * V * V2 + a * a * V2 * V2) % pK
        G = (4 * V * (U * U2 + a * U * V2 + b * V * V2)) % pK
        s = 0
        while s <= vres and F % p == 0 and G % p == 0:
            F //= p
            G //= p
            s += 1
        if s > vres:
            raise PrecisionError(f"p-adic gcd exceeded the resultant bound at p={p}")
        avail -= s
        if avail < vres + 8:
            raise PrecisionError("p-adic working precision exhausted")
        if s:
            total += s * weight
        weight /= 4
        U, V = F, G
    return total


def _tracked_primes(C: CurveModel) -> list[tuple[int, int]]:
    """(p, v_p(Res F,G)) for primes that can contribute p-adic corrections."""
    dprime = 4 * C.a**3 + 27 * C.b * C.b
    fac = arith.factorize(2 * dprime)
    out = []
    for p, _ in fac.factors:
        v = 2 * arith.int_valuation(dprime, p) if dprime % p == 0 else 0
        if p == 2:
            v += 8
        out.append((p, v))
    return out


# ---------------------------------------------------------------------------
# canonical height: public API


def _is_torsion(C: CurveModel, P: RationalPoint) -> bool:
    if P.is_infinity:
        return True
    if P.x.denominator != 1 or P.y.denominator != 1:
        return False  # torsion is integral on integral models
    Q = P
    for _ in range(12):
        if Q.is_infinity:
            return True
        Q = add(C, Q, P)
    return Q.is_infinity


def canonical_height_x(C: CurveModel, P: RationalPoint, tol: float = 1e-10):
    """x-normalized canonical height lim 4^{-n} log max(|num x|, den x).

    Returns (value, certified_error) as mpf.
    """
    if tol < 1e-12:
        raise PrecisionError("tolerance below the supported floor of 1e-12")
    if not C.contains(P):
        raise ValueError("point not on curve")
    if _is_torsion(C, P):
        return mp.mpf(0), mp.mpf(0)
    with working_precision(extra=10):
        dps = working_dps()
        terms = max(48, int(dps * 1.8))
        arch, arch_tail = _arch_series(C.a, C.b, P.x, terms)
        m, e = _x_parts(P)
        total = arch + 2 * mp.log(e) if e > 1 else arch
        err = arch_tail
        for p, vres in _tracked_primes(C):
            if vres == 0:
                continue
            S = _padic_series(C.a, C.b, m, e * e, p, vres, terms)
            total -= mp.mpf(S.numerator) / S.denominator * mp.log(p)
            err += vres * mp.mpf(4) ** (-terms) / 3 * mp.log(p)
        err += mp.mpf(10) ** (8 - dps)
        if err > tol:
            raise PrecisionError(f"certified error {float(err):.3e} exceeds tol {tol}")
        return total, err


def canonical_height(C: CurveModel, P: RationalPoint, tol: float = 1e-10) -> HeightProfile:
    """Canonical height in the projective (x : y : 1) normalization."""
    H = naive_height(C, P)
    with working_precision():
        logh = mp.log(mp.mpf(H.numerator) / H.denominator)
        hx, err = canonical_height_x(C, P, tol=tol * 2 / 3)
        hhat = mp.mpf(3) / 2 * hx
        return HeightProfile(point=P, naive_multiplicative=H, logarithmic=float(logh),
                             canonical=float(hhat), canonical_error=max(float(err) * 1.5, 1e-45))


def height_pairing(C: CurveModel, P: RationalPoint, Q: RationalPoint, tol: float = 1e-10) -> float:
    """<P,Q> = (hhat(P+Q) - hhat(P) - hhat(Q))/2 in the projective normalization."""
    s = canonical_height(C, add(C, P, Q), tol).canonical
    return (s - canonical_height(C, P, tol).canonical - canonical_height(C, Q, tol).canonical) / 2


def doubling_limit_height(C: CurveModel, P: RationalPoint, n: int = 6):
    """Oracle route: 4^{-n} h(2^n P) with exact big-rational doubling.

    Independent of the telescoped evaluation; agreement within
    d/4^n + tol is asserted by the test suite.  n is capped at 6 because
    coordinate sizes grow like 4^n digits.
    """
    if n > 6:
        raise ValueError("doubling oracle capped at n = 6")
    if _is_torsion(C, P):
        return mp.mpf(0)
    Q = P
    for _ in range(n):
        Q = add(C, Q, Q)
    H = naive_height(C, Q)
    with working_precision():
        return mp.log(mp.mpf(H.numerator) / H.denominator) / mp.mpf(4) ** n


# ---------------------------------------------------------------------------
# period lattice and the Faltings height


def _reduce_basis(w1, w2):
    """Unimodular reduction of a lattice basis so tau = w2/w1 is fundamental."""
    w1, w2 = mp.mpc(w1), mp.mpc(w2)
    if mp.im(w2 / w1) < 0:
        w2 = -w2
    for _ in range(600):
        tau = w2 / w1
        k = mp.floor(mp.re(tau) + mp.mpf(1) / 2)
        if k:
            w2 -= k * w1
            tau = w2 / w1
        if abs(tau) < 1 - mp.mpf(10) ** (-working_dps() + 6):
            w1, w2 = w2, -w1
        else:
            return w1, w2
    raise PrecisionError("lattice basis reduction failed to converge")


def period_lattice(a: int, b: int):
    """Periods (w1, w2) of dx/2y on y^2 = x^3 + ax + b, AGM evaluation.

    The basis satisfies the classical identity
    (2 pi / w1)^12 eta(w2/w1)^24 = -16(4a^3+27b^2) after reduction, which
    callers use as a self-check.
    """
    roots = mp.polyroots([1, 0, a, b], extraprec=working_dps())
    disc = -16 * (4 * a**3 + 27 * b * b)
    eps = mp.mpf(10) ** (-working_dps() // 2)
    if disc > 0:
        e1, e2, e3 = sorted((mp.re(r) for r in roots), reverse=True)
        w1 = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
        w2 = mp.mpc(0, 1) * mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
    else:
        e1 = next(mp.re(r) for r in roots if abs(mp.im(r)) < eps)
        z = next(r for r in roots if mp.im(r) > eps)
        w = mp.mpc(e1 - mp.re(z), mp.im(z))
        w1 = mp.re(mp.pi / mp.agm(mp.sqrt(w), mp.sqrt(mp.conj(w))))
        nu = mp.re(mp.pi / mp.agm(mp.sqrt(-w), mp.sqrt(-mp.conj(w))))
        w2 = (w1 + mp.mpc(0, 1) * nu) / 2
    return w1, w2


def _eta(tau):
    q = mp.exp(2j * mp.pi * tau)
    return mp.exp(2j * mp.pi * tau / 24) * mp.qp(q)


def faltings_height(C: CurveModel, override: float | None = None) -> float:
    """Stable Faltings height, from the minimal discriminant and the period
    lattice (tau reduced to the fundamental domain, Dedekind eta).

    The unstable height is
        (1/12) [ log|D_min| - log( (2 pi)^12 |eta(tau)|^24 (Im tau)^6 ) ];
    the stable correction removes (v_p(D_min) - max(0, -v_p(j))) log p / 12
    at every additive prime.  A user-supplied override short-circuits the
    computation (the bound evaluators treat h_F as an input).
    """
    if override is not None:
        return float(override)
    with working_precision(extra=15):
        w1, w2 = period_lattice(C.a, C.b)
        w1, w2 = _reduce_basis(w1, w2)
        tau = w2 / w1
        lattice_disc = (2 * mp.pi / w1) ** 12 * _eta(tau) ** 24
        rel = abs(lattice_disc / C.discriminant - 1)
        if rel > mp.mpf(10) ** (-working_dps() + 12):
            raise PrecisionError(f"period lattice self-check failed: rel err {mp.nstr(rel, 5)}")
        arch = mp.log((2 * mp.pi) ** 12 * abs(_eta(tau)) ** 24 * mp.im(tau) ** 6)
        h = (mp.log(abs(C.minimal_discriminant)) - arch) / 12
        # stable correction at additive primes
        j = C.j_invariant()
        for L in C.local_data:
            if L.conductor_exponent >= 2:
                vj_neg = arith.int_valuation(j.denominator, L.prime) if j.denominator % L.prime == 0 else 0
                h -= (L.min_disc_valuation - vj_neg) * mp.log(L.prime) / 12
        return float(h)
