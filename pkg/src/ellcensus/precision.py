"""Working-precision policy for all floating evaluations.

Constants and heights are evaluated with mpmath at a configurable number
of decimal digits (environment variable ELLCENSUS_DPS, default 50).
Directed rounding for inequality verdicts is realized by nudging final
values outward by a few ulps at working precision, so every reported
upper bound is >= the true value and every lower bound is <=.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import mpmath as mp

DEFAULT_DPS = 50
ENV_VAR = "ELLCENSUS_DPS"


def working_dps() -> int:
    raw = os.environ.get(ENV_VAR, "")
    try:
        dps = int(raw)
    except ValueError:
        return DEFAULT_DPS
    return max(15, dps) if dps else DEFAULT_DPS


@contextmanager
def working_precision(extra: int = 0):
    """Context with the configured precision (plus optional guard digits)."""
    with mp.workdps(working_dps() + extra):
        yield mp.mp


def _nudge() -> mp.mpf:
    # relative outward shift of 10^(5-dps); invisible at reporting scale
    return mp.mpf(10) ** (5 - working_dps())


def round_up(x) -> mp.mpf:
    """Directed rounding toward +inf at working precision."""
    x = mp.mpf(x)
    return x + abs(x) * _nudge() + mp.mpf(10) ** (-working_dps() * 2)


def round_down(x) -> mp.mpf:
    """Directed rounding toward -inf at working precision."""
    x = mp.mpf(x)
    return x - abs(x) * _nudge() - mp.mpf(10) ** (-working_dps() * 2)
