"""Bounded-height point censuses and explicit constants for elliptic curves over Q."""

from .arith import CapExceededError, Factorization, factorize, padic_valuation, prime_pi, primorial
from .elliptic import (
    CurveModel,
    LocalReduction,
    RationalPoint,
    SingularCurveError,
    TorsionData,
    add,
    build_curve,
    curve_from_rationals,
    multiply,
    quadratic_twist,
    torsion,
)

__version__ = "0.1.0"
