"""Elliptic curves over Q in short Weierstrass form y^2 = x^3 + ax + b.

Covers the exact chord-tangent group law, the local reduction analysis
(full Tate algorithm at every bad prime, including 2 and 3), global
minimal discriminant and conductor assembly, Nagell-Lutz torsion, and
quadratic twists.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import arith


class SingularCurveError(ValueError):
    """4a^3 + 27b^2 = 0: not an elliptic curve."""


# ---------------------------------------------------------------------------
# points and the group law


@dataclass(frozen=True, order=True)
class RationalPoint:
    """Affine point (x, y) with exact rational coordinates, or infinity."""

    is_infinity: bool
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    @staticmethod
    def infinity() -> "RationalPoint":
        return RationalPoint(True)

    @staticmethod
    def affine(x, y) -> "RationalPoint":
        return RationalPoint(False, Fraction(x), Fraction(y))

    def __neg__(self) -> "RationalPoint":
        if self.is_infinity:
            return self
        return RationalPoint(False, self.x, -self.y)

    def __repr__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({self.x},{self.y})"


INFINITY_POINT = RationalPoint.infinity()


@dataclass(frozen=True)
class LocalReduction:
    """Reduction data of the minimal model at one bad prime."""

    prime: int
    kodaira: str
    conductor_exponent: int
    min_disc_valuation: int
    tamagawa: int
    u_exponent: int  # p-power scaling removed from the input model


@dataclass(frozen=True)
class TorsionData:
    order: int
    structure: tuple[int, ...]
    points: tuple[RationalPoint, ...]

    def has_p_torsion(self, p: int) -> bool:
        return self.order % p == 0


@dataclass(frozen=True)
class CurveModel:
    """y^2 = x^3 + ax + b with its global reduction data."""

    a: int
    b: int
    discriminant: int
    minimal_discriminant: int
    conductor: int
    local_data: tuple[LocalReduction, ...]
    _torsion_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def c4(self) -> int:
        return -48 * self.a

    @property
    def c6(self) -> int:
        return -864 * self.b

    def j_invariant(self) -> Fraction:
        return Fraction(self.c4**3, self.discriminant)

    def contains(self, P: RationalPoint) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == P.x**3 + self.a * P.x + self.b

    def omega1(self) -> int:
        """Number of distinct primes dividing the conductor."""
        return len(self.local_data)

    def curve_id(self) -> str:
        return f"{self.a},{self.b}"


def add(C: CurveModel, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Chord-tangent sum with exact rationals."""
    if not (C.contains(P) and C.contains(Q)):
        raise ValueError("point not on curve")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY_POINT
        lam = Fraction(3 * P.x * P.x + C.a, 2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return RationalPoint(False, x3, y3)


def negate(P: RationalPoint) -> RationalPoint:
    return -P


def multiply(C: CurveModel, n: int, P: RationalPoint) -> RationalPoint:
    """nP by double-and-add."""
    if n < 0:
        return multiply(C, -n, -P)
    R = INFINITY_POINT
    Q = P
    while n:
        if n & 1:
            R = add(C, R, Q)
        n >>= 1
        if n:
            Q = add(C, Q, Q)
    return R


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (dense coefficient lists, low degree first)


def _pmod_trim(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = f[:]
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and f:
        k = len(f) - len(g)
        c = f[-1] * inv % p
        q[k] = c
        for i, gc in enumerate(g):
            f[i + k] = (f[i + k] - c * gc) % p
        f = _pmod_trim(f, p)
    return _pmod_trim(q, p), f


def _pmod_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _pmod_trim(f, p), _pmod_trim(g, p)
    while g:
        f, g = g, _pmod_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _pmod_mulmod(f, g, mod, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, fc in enumerate(f):
        if fc:
            for j, gc in enumerate(g):
                out[i + j] = (out[i + j] + fc * gc) % p
    return _pmod_divmod(out, mod, p)[1]


def _cubic_root_count(poly: list[int], p: int) -> int:
    """Number of roots in F_p of a squarefree poly (deg <= 3): deg gcd(T^p - T, poly)."""
    if p <= 47:
        return sum(1 for x in range(p) if _poly_eval(poly, x, p) == 0)
    mod = _pmod_trim(poly, p)
    # T^p mod poly by square-and-multiply
    acc = _pmod_divmod([0, 1], mod, p)[1]
    result = [1]
    e = p
    while e:
        if e & 1:
            result = _pmod_mulmod(result, acc, mod, p)
        acc = _pmod_mulmod(acc, acc, mod, p)
        e >>= 1
    # T^p - T
    result = result + [0] * (2 - len(result))
    result[1] = (result[1] - 1) % p
    frob_minus_t = _pmod_trim(result, p)
    if not frob_minus_t:
        return len(mod) - 1  # T^p = T on the whole quotient: fully split
    return len(_pmod_gcd(frob_minus_t, mod, p)) - 1


def _poly_eval(poly: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _quadratic_has_root(a2_, a1_, a0_, p: int) -> bool:
    """Does a2 T^2 + a1 T + a0 have a root in F_p?  (a2 may be 0 mod p.)"""
    if p == 2:
        return any((a2_ * t * t + a1_ * t + a0_) % 2 == 0 for t in (0, 1))
    if a2_ % p == 0:
        return True  # degenerates to linear (or constant 0 handled by caller)
    disc = (a1_ * a1_ - 4 * a2_ * a0_) % p
    return _legendre(disc, p) >= 0


def _cubic_repeated_root(P: list[int], p: int):
    """Repeated-root structure of a monic cubic mod p.

    Returns ("separable", None), ("double", theta) or ("triple", theta),
    with theta the repeated root.  Characteristics 2 and 3 are handled by
    explicit coefficient conditions since gcd degrees are unreliable there.
    """
    C0, B, A = P[0] % p, P[1] % p, P[2] % p
    Pp = _pmod_trim([B, 2 * A, 3], p)
    g = _pmod_gcd(_pmod_trim(P, p), Pp, p)
    if len(g) - 1 <= 0:
        return "separable", None
    if p == 2:
        # (T - t)^3 = T^3 + tT^2 + t^2 T + t^3 mod 2
        t = A % 2
        if B % 2 == (t * t) % 2 and C0 % 2 == (t**3) % 2:
            # confirm against the full polynomial before declaring triple
            if (1 + A + B + C0) % 2 == ((1 + t) ** 3) % 2:
                return "triple", t
        theta = (-g[0]) % 2 if len(g) == 2 else g[0] % 2  # root of (T-th) or (T-th)^2
        return "double", theta
    if p == 3:
        if A % 3 == 0 and B % 3 == 0:
            return "triple", (-C0) % 3  # cube root is identity on F_3
        return "double", (-g[0]) % 3
    if len(g) - 1 == 2:
        return "triple", (-g[1] * _inv2(p)) % p
    return "double", (-g[0]) % p


# ---------------------------------------------------------------------------
# Tate's algorithm


def _inv2(p: int) -> int:
    return pow(2, -1, p)


def _transform(ai: list[int], r: int, s: int, t: int) -> list[int]:
    """Coordinate change x = x' + r, y = y' + s x' + t (u = 1)."""
    a1, a2, a3, a4, a6 = ai
    A1 = a1 + 2 * s
    A2 = a2 - s * a1 + 3 * r - s * s
    A3 = a3 + r * a1 + 2 * t
    A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    A6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    return [A1, A2, A3, A4, A6]


def _binvariants(ai: list[int]):
    a1, a2, a3, a4, a6 = ai
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, delta


def _vp(n: int, p: int) -> int:
    if n == 0:
        return 10**9  # effectively +infinity for the divisibility tests
    return arith.int_valuation(n, p)


def _singular_point_mod_p(ai: list[int], p: int) -> tuple[int, int]:
    """The unique singular point of the reduced curve mod p."""
    a1, a2, a3, a4, a6 = ai
    if p <= 47:
        for x in range(p):
            for y in range(p):
                on = (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p
                fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
                fy = (2 * y + a1 * x + a3) % p
                if on == 0 and fx == 0 and fy == 0:
                    return x, y
        raise AssertionError("no singular point found (curve not singular mod p?)")
    # p odd and large: complete the square; singular x is the repeated root of
    # C(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _, _ = _binvariants(ai)
    C = [b6 % p, 2 * b4 % p, b2 % p, 4 % p]
    Cp = [2 * b4 % p, 2 * b2 % p, 12 % p]
    g = _pmod_gcd(C, Cp, p)
    if len(g) == 2:  # linear: single repeated root
        x0 = (-g[0]) % p
    elif len(g) == 3:  # quadratic: triple root; x0 = -g1/(2 g2)
        x0 = (-g[1] * pow(2 * g[2], -1, p)) % p
    else:
        raise AssertionError("unexpected gcd degree in singular point search")
    y0 = (-(a1 * x0 + a3) * _inv2(p)) % p
    return x0, y0


def _tate_local(ai_in: list[int], p: int):
    """Tate's algorithm at p.

    Returns (kodaira, f, min_disc_valuation, tamagawa, u_exponent).
    Follows the classical step structure; every stage's divisibility
    preconditions are asserted rather than assumed.
    """
    ai = list(ai_in)
    u_exp = 0

    while True:
        b2, b4, b6, b8, delta = _binvariants(ai)
        n = _vp(delta, p)
        if n == 0:
            return "I0", 0, 0, 1, u_exp

        # Step 2: move the singular point of the reduction to (0, 0).
        x0, y0 = _singular_point_mod_p(ai, p)
        ai = _transform(ai, x0, 0, y0)
        a1, a2, a3, a4, a6 = ai
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0
        b2, b4, b6, b8, delta = _binvariants(ai)

        # Step 3: nodal case -> multiplicative reduction, type In.
        if b2 % p != 0:
            split = _quadratic_has_root(1, a1, -a2, p)
            if split:
                c = n
            else:
                c = 2 if n % 2 == 0 else 1
            return f"I{n}", 1, n, c, u_exp

        # Additive reduction from here on.
        if _vp(a6, p) < 2:
            return "II", n, n, 1, u_exp
        if _vp(b8, p) < 3:
            return "III", n - 1, n, 2, u_exp
        if _vp(b6, p) < 3:
            c = 3 if _quadratic_has_root(1, a3 // p, -(a6 // (p * p)), p) else 1
            return "IV", n - 2, n, c, u_exp

        # Step 7: normalize to p | a1,a2 ; p^2 | a3,a4 ; p^3 | a6.
        # kill the (double) tangent direction: s = double root of m^2 + a1 m - a2
        if p == 2:
            s = a2 % 2  # double root of m^2 + a1 m - a2 with a1 even
        else:
            s = (-a1 * _inv2(p)) % p
        ai = _transform(ai, 0, s, 0)
        a1, a2, a3, a4, a6 = ai
        assert a1 % p == 0 and a2 % p == 0
        # kill a3 mod p^2 and a6 mod p^3: t = p*y1 with y1 the double root of
        # Y^2 + (a3/p) Y - a6/p^2
        alpha, beta = a3 // p, a6 // (p * p)
        if p == 2:
            y1 = beta % 2
        else:
            y1 = (-alpha * _inv2(p)) % p
        ai = _transform(ai, 0, 0, p * y1)
        a1, a2, a3, a4, a6 = ai
        assert _vp(a3, p) >= 2 and _vp(a6, p) >= 3
        assert _vp(a4, p) >= 2
        b2, b4, b6, b8, delta = _binvariants(ai)

        # Step 8: P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + a6/p^3 mod p.
        A, B, Cc = a2 // p, a4 // (p * p), a6 // p**3
        P = [Cc % p, B % p, A % p, 1]
        kind, theta = _cubic_repeated_root(P, p)
        if kind == "separable":
            c = 1 + _cubic_root_count(P, p)
            return "I0*", n - 4, n, c, u_exp

        if kind == "double":
            theta_d = theta
            # Step 9: In* loop.
            ai = _transform(ai, p * theta_d, 0, 0)
            a1, a2, a3, a4, a6 = ai
            assert _vp(a2, p) == 1 and _vp(a4, p) >= 3 and _vp(a6, p) >= 4
            k = 1
            while True:
                # odd stage: I_{2k-1}*
                alpha = a3 // p**(k + 1)
                beta = a6 // p**(2 * k + 2)
                disc_odd = (alpha * alpha + 4 * beta) % p
                if disc_odd % p != 0:
                    nn = 2 * k - 1
                    c = 4 if _quadratic_has_root(1, alpha, -beta, p) else 2
                    return f"I{nn}*", n - 4 - nn, n, c, u_exp
                y1 = beta % 2 if p == 2 else (-alpha * _inv2(p)) % p
                ai = _transform(ai, 0, 0, p**(k + 1) * y1)
                a1, a2, a3, a4, a6 = ai
                assert _vp(a3, p) >= k + 2 and _vp(a6, p) >= 2 * k + 3

                # even stage: I_{2k}*
                A2_ = a2 // p
                A4_ = a4 // p**(k + 2)
                A6_ = a6 // p**(2 * k + 3)
                disc_even = (A4_ * A4_ - 4 * A2_ * A6_) % p
                if disc_even % p != 0:
                    nn = 2 * k
                    c = 4 if _quadratic_has_root(A2_, A4_, A6_, p) else 2
                    return f"I{nn}*", n - 4 - nn, n, c, u_exp
                if p == 2:
                    x1 = A6_ % 2  # A2_ odd, A4_ even: double root solves x^2 = A6_/A2_
                else:
                    x1 = (-A4_ * pow(2 * A2_ % p, -1, p)) % p
                ai = _transform(ai, p**(k + 1) * x1, 0, 0)
                a1, a2, a3, a4, a6 = ai
                assert _vp(a4, p) >= k + 3 and _vp(a6, p) >= 2 * k + 4
                k += 1

        # Step 10: triple root; translate it to T = 0.
        ai = _transform(ai, p * theta, 0, 0)
        a1, a2, a3, a4, a6 = ai
        assert _vp(a2, p) >= 2 and _vp(a4, p) >= 3 and _vp(a6, p) >= 4

        alpha = a3 // (p * p)
        beta = a6 // p**4
        disc = (alpha * alpha + 4 * beta) % p
        if disc % p != 0:
            c = 3 if _quadratic_has_root(1, alpha, -beta, p) else 1
            return "IV*", n - 6, n, c, u_exp
        y1 = beta % 2 if p == 2 else (-alpha * _inv2(p)) % p
        ai = _transform(ai, 0, 0, p * p * y1)
        a1, a2, a3, a4, a6 = ai
        assert _vp(a3, p) >= 3 and _vp(a6, p) >= 5

        if _vp(a4, p) < 4:
            return "III*", n - 7, n, 2, u_exp
        if _vp(a6, p) < 6:
            return "II*", n - 8, n, 1, u_exp

        # Step 13: non-minimal at p; rescale by u = p and restart.
        assert _vp(a1, p) >= 1 and _vp(a2, p) >= 2 and _vp(a3, p) >= 3
        ai = [a1 // p, a2 // p**2, a3 // p**3, a4 // p**4, a6 // p**6]
        u_exp += 1


_OGG_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


def _component_count(kodaira: str) -> int:
    if kodaira in _OGG_COMPONENTS:
        return _OGG_COMPONENTS[kodaira]
    if kodaira.endswith("*"):
        return 5 + int(kodaira[1:-1])
    return int(kodaira[1:])  # type In: n components (n >= 1)


def build_curve(a: int, b: int, *, discriminant_factors: arith.Factorization | None = None,
                factor_cap: int = arith.FACTORIZATION_CAP) -> CurveModel:
    """Construct a CurveModel with complete local data at every bad prime.

    ``discriminant_factors`` is the escape hatch for inputs whose
    discriminant exceeds the factorization cap: pass the factorization of
    the (signed) discriminant -16(4a^3 + 27b^2) computed elsewhere.
    """
    a, b = int(a), int(b)
    disc = -16 * (4 * a**3 + 27 * b * b)
    if disc == 0:
        raise SingularCurveError(f"curve ({a},{b}) is singular")
    if discriminant_factors is None:
        fac = arith.factorize(disc, cap=factor_cap)
    else:
        fac = discriminant_factors
        if fac.reconstruct() != disc:
            raise ValueError("supplied factorization does not match the discriminant")

    ai = [0, 0, 0, a, b]
    local: list[LocalReduction] = []
    min_disc = disc
    conductor = 1
    for p, e in fac.factors:
        kodaira, f, vmin, c, u_exp = _tate_local(ai, p)
        # Ogg's relation f = v(Delta_min) + 1 - m is a hard consistency check
        if f > 0:
            assert f == vmin + 1 - _component_count(kodaira), \
                f"Ogg consistency failed at p={p}: {kodaira}, f={f}, v={vmin}"
        cap = 8 if p == 2 else (5 if p == 3 else 2)
        assert 0 <= f <= cap, f"conductor exponent {f} out of range at p={p}"
        assert e - 12 * u_exp == vmin, f"discriminant bookkeeping failed at p={p}"
        if u_exp:
            min_disc //= p ** (12 * u_exp)
        if f > 0:
            conductor *= p**f
            local.append(LocalReduction(p, kodaira, f, vmin, c, u_exp))
        else:
            assert vmin == 0
    local.sort(key=lambda L: L.prime)
    return CurveModel(a=a, b=b, discriminant=disc, minimal_discriminant=min_disc,
                      conductor=conductor, local_data=tuple(local))


def curve_from_rationals(a, b) -> CurveModel:
    """Clear rational coefficients by (u^4, u^6) scaling and build the curve."""
    a, b = Fraction(a), Fraction(b)
    den = a.denominator * b.denominator
    u = 1
    if den > 1:
        for p, _ in arith.factorize(den).factors:
            k = 0
            if a:
                va = arith.padic_valuation(a, p)
                k = max(k, -(-max(0, -va) // 4))  # ceil(max(0,-v_p(a)) / 4)
            if b:
                vb = arith.padic_valuation(b, p)
                k = max(k, -(-max(0, -vb) // 6))
            u *= p**k
    A = a * u**4
    B = b * u**6
    if A.denominator != 1 or B.denominator != 1:
        raise ValueError("could not clear denominators")
    return build_curve(int(A), int(B))


# ---------------------------------------------------------------------------
# torsion via Nagell-Lutz


def torsion(C: CurveModel) -> TorsionData:
    """Exact torsion subgroup by Nagell-Lutz bounded search (Mazur cap 12).

    On an integral model y^2 = x^3 + ax + b every torsion point has integer
    coordinates with y = 0 or y^2 | 4a^3 + 27b^2.
    """
    if C._torsion_cache:
        return C._torsion_cache[0]
    D = abs(4 * C.a**3 + 27 * C.b * C.b)
    fac = arith.factorize(D)
    ys = [1]
    for p, e in fac.factors:
        ys = [h * p**k for h in ys for k in range(e // 2 + 1)]
    candidates = {0} | set(ys)
    pts: list[RationalPoint] = []
    for y in sorted(candidates):
        const = C.b - y * y
        for x in _integer_cubic_roots(C.a, const):
            P = RationalPoint.affine(x, y)
            if not C.contains(P):
                continue
            n = _small_order(C, P)
            if n is None:
                continue
            pts.append(P)
            if y > 0:
                pts.append(-P)
    pts = sorted(set(pts), key=lambda P: (P.x, P.y))
    order = len(pts) + 1
    two_torsion = 1 + sum(1 for P in pts if P.y == 0)
    if two_torsion == 4:
        structure = (2, order // 2)
    else:
        structure = (order,)
    assert order in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12), f"Mazur violation: {order}"
    data = TorsionData(order=order, structure=structure,
                       points=tuple([INFINITY_POINT] + pts))
    C._torsion_cache.append(data)
    return data


def _integer_cubic_roots(a: int, const: int) -> list[int]:
    """Integer roots of x^3 + a x + const."""
    roots = set()
    if const == 0:
        roots.add(0)
        if a <= 0:
            import math
            r = math.isqrt(-a)
            if r * r == -a:
                roots.update([r, -r])
        return sorted(roots)
    for d in _divisors(abs(const)):
        for r in (d, -d):
            if r**3 + a * r + const == 0:
                roots.add(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    fac = arith.factorize(n)
    ds = [1]
    for p, e in fac.factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _small_order(C: CurveModel, P: RationalPoint, cap: int = 12) -> int | None:
    Q = P
    for n in range(1, cap + 1):
        if Q.is_infinity:
            return n
        if not Q.x.denominator == 1:  # left the integers: not torsion
            return None
        Q = add(C, Q, P)
    return None


# ---------------------------------------------------------------------------
# twists


def quadratic_twist(C: CurveModel, d: int) -> CurveModel:
    """The quadratic twist y^2 = x^3 + a d^2 x + b d^3 (d squarefree)."""
    if d == 0:
        raise ValueError("twist by 0")
    if d not in (1, -1):
        fac = arith.factorize(d)
        if any(e > 1 for _, e in fac.factors):
            raise ValueError(f"{d} is not squarefree")
    return build_curve(C.a * d * d, C.b * d**3)
