"""Numerical constants and the start-up certificate for Euler's constant."""

from __future__ import annotations

import math
from functools import lru_cache

EULER_GAMMA_LITERAL = "0.57721566490153286061"
EULER_GAMMA = float(EULER_GAMMA_LITERAL)
# half an ulp of the stored double plus the truncation of the 20-digit literal
EULER_GAMMA_ERR = 0.5 * math.ulp(EULER_GAMMA) + 1e-20

ZETA2 = math.pi**2 / 6
ZETA2_ERR = 2 * math.ulp(ZETA2)
E = math.e
E_ERR = 0.5 * math.ulp(E)

CERTIFICATE_M = 10**6


class ConstantCheckError(RuntimeError):
    """The stored Euler constant failed its harmonic-sum certificate."""


@lru_cache(maxsize=None)
def euler_gamma_bracket(m=CERTIFICATE_M):
    """(D_m - 1, C_m): an enclosure of Euler's constant from harmonic sums.

    C_m = H_m - ln m decreases to the constant and D_m = H_m - ln(m!)/m
    increases to the constant plus one.
    """
    from ._backend import harmonic_table

    H, _, LF = harmonic_table(m)
    c_m = H[m] - math.log(m)
    d_m = H[m] - LF[m] / m
    return d_m - 1.0, c_m


@lru_cache(maxsize=None)
def validate_euler_gamma(m=CERTIFICATE_M):
    lo, hi = euler_gamma_bracket(m)
    # slack covers rounding in H_m and ln(m!)/m (a few ulps of values < 20)
    slack = 1e-13
    if not (lo + slack < EULER_GAMMA < hi - slack):
        raise ConstantCheckError(f"Euler constant {EULER_GAMMA!r} not in ({lo!r}, {hi!r})")
    return lo, hi
