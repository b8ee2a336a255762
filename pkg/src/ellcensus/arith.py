"""Exact integer and rational arithmetic services.

Factorization with certified primality, prime counting by sieve,
primorials, and p-adic valuations.  Everything here is deterministic:
primality below ~3.3e24 is settled by Miller-Rabin with proven witness
sets, and anything larger gets a recursive Pratt certificate or an
explicit refusal (CapExceededError) so the caller can supply data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INFINITY = math.inf  # valuation of 0, by convention

FACTORIZATION_CAP = 2**128
SIEVE_CAP = 10**7
PRIMORIAL_CAP = 10**4

# Miller-Rabin witness sets with proven deterministic ranges.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # valid below 3.317e24
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)


class CapExceededError(ValueError):
    """Input exceeds a configured cap; caller must supply data externally."""


@dataclass(frozen=True)
class Factorization:
    """Complete factorization of a nonzero integer.

    ``factors`` lists (prime, exponent) pairs with strictly increasing,
    certified primes; the sign is carried by ``value``.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def reconstruct(self) -> int:
        n = -1 if self.value < 0 else 1
        for p, e in self.factors:
            n *= p**e
        return n

    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    def radical(self) -> int:
        r = 1
        for p, _ in self.factors:
            r *= p
        return r


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _pratt_certified(n: int, depth: int = 0) -> bool:
    # Pocklington-Lehmer style certificate: exhibit a primitive root g with
    # g^(n-1) = 1 and g^((n-1)/q) != 1 for every prime q | n-1.  The q are
    # certified recursively, so success is a genuine primality proof.
    if depth > 64:
        raise CapExceededError(f"primality certificate recursion too deep for {n}")
    if n < _MR_DETERMINISTIC_LIMIT:
        return is_prime(n)
    if any(not _miller_rabin(n, b) for b in _MR_BASES_64):
        return False
    try:
        qs = [q for q, _ in factorize(n - 1).factors]
    except CapExceededError:
        raise CapExceededError(f"cannot certify primality of {n}: n-1 resists factoring")
    for g in range(2, 10**4):
        if pow(g, n - 1, n) != 1:
            return False
        if all(pow(g, (n - 1) // q, n) != 1 for q in qs):
            return True
    raise CapExceededError(f"no certifying witness found for {n}")


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Trial division, then Miller-Rabin over a witness set proven complete
    below 3.3e24, then a Pratt certificate for anything larger.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, b) for b in _MR_BASES_64)
    return _pratt_certified(n)


def _pollard_brent(n: int) -> int:
    # Brent's cycle variant of Pollard rho; n must be odd composite, not a
    # prime power obstacle in practice since we retry with shifted c.
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise CapExceededError(f"factorization stalled on {n}")


def factorize(n: int, cap: int = FACTORIZATION_CAP) -> Factorization:
    """Complete factorization of a nonzero integer with certified primes.

    Raises CapExceededError when |n| exceeds ``cap``, signalling the caller
    to supply the factorization externally.
    """
    if n == 0:
        raise ValueError("cannot factorize 0")
    if abs(n) > cap:
        raise CapExceededError(f"|n| = {abs(n)} exceeds factorization cap {cap}")
    m = abs(n)
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        # perfect power short-cut keeps rho off squares
        for k in (2, 3, 5):
            r = round(m ** (1.0 / k))
            for cand in (r - 1, r, r + 1):
                if cand > 1 and cand**k == m:
                    stack.extend([cand] * k)
                    m = 1
                    break
            if m == 1:
                break
        if m == 1:
            continue
        d = _pollard_brent(m)
        stack.extend([d, m // d])
    factors = tuple(sorted(found.items()))
    return Factorization(value=n, factors=factors)


_sieve_counts: list[int] | None = None
_sieve_limit = 0
_sieve_primes: list[int] = []


def _ensure_sieve(limit: int) -> None:
    global _sieve_counts, _sieve_limit, _sieve_primes
    if limit <= _sieve_limit:
        return
    limit = max(limit, 1 << 16)
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    counts = [0] * (limit + 1)
    running = 0
    primes = []
    for i in range(limit + 1):
        if flags[i]:
            running += 1
            primes.append(i)
        counts[i] = running
    _sieve_counts, _sieve_limit, _sieve_primes = counts, limit, primes


def prime_pi(x: float, cap: int = SIEVE_CAP) -> int:
    """Exact count of primes <= x, by sieve."""
    if x < 2:
        raise ValueError("prime_pi requires x >= 2")
    if x > cap:
        raise CapExceededError(f"x = {x} exceeds sieve cap {cap}")
    n = math.floor(x)
    _ensure_sieve(n)
    assert _sieve_counts is not None
    return _sieve_counts[n]


def nth_primes(n: int) -> list[int]:
    """The first n primes."""
    if n <= 0:
        return []
    # p_n < n(log n + log log n) for n >= 6
    bound = 15 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 10
    _ensure_sieve(bound)
    while len(_sieve_primes) < n:
        _ensure_sieve(_sieve_limit * 2)
    return _sieve_primes[:n]


def primorial(n: int, cap: int = PRIMORIAL_CAP) -> int:
    """Product of the first n primes, exactly."""
    if n < 1:
        raise ValueError("primorial requires n >= 1")
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds primorial cap {cap}")
    out = 1
    for p in nth_primes(n):
        out *= p
    return out


def padic_valuation(q: int | Fraction, p: int) -> int | float:
    """v_p(q) for rational q, with v_p(0) = +infinity (math.inf sentinel)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INFINITY
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def int_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer, no primality check (internal fast path)."""
    if n == 0:
        raise ValueError("valuation of 0 requested in integer fast path")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
