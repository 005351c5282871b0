"""Certified summation of the positive series behind ln Gamma, psi, psi', g, h, f''.

Every term function D(t) used here is positive, decreasing and convex on
t > 0, so the tail after N terms is enclosed by the integral test,

    int_{N+1}^inf D  <  sum_{n>N} D(n)  <  int_N^inf D,

and, tighter, by the trapezoid and midpoint rules,

    int_N^inf D - D(N)/2  <=  sum_{n>N} D(n)  <=  int_{N+1/2}^inf D.

The driver intersects both brackets, reports ``partial sum + bracket midpoint``
and charges half the bracket width plus rounding allowances to ``err``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend
from ._pycore import (
    DIGAMMA,
    FPP,
    GSUM,
    HSUM,
    LGAMMA,
    NCOEF,
    SMALL_ARG,
    TRIGAMMA,
    TRIREM,
    horner,
)
from .certified import EPS

KINDS = {
    "lgamma": LGAMMA,
    "digamma": DIGAMMA,
    "trigamma": TRIGAMMA,
    "g": GSUM,
    "h": HSUM,
    "fpp": FPP,
    "trigamma_excess": TRIREM,
}

FIRST_INDEX = {k: (0 if k in (TRIGAMMA, TRIREM) else 1) for k in KINDS.values()}

# Tail integrals as power series in b = x/t (or v = 1/(x+t) for TRIREM).
_LG_TAIL = [0.0, 0.0] + [(-1.0) ** k / (k * (k - 1)) for k in range(2, NCOEF)]
_H_TAIL = [0.0] + [(-1.0) ** (k + 1) / (k + 1) for k in range(1, NCOEF)]
_FPP_TAIL = [0.0, 0.0] + [(-1.0) ** k * (0.5 - 1.0 / (k + 1)) for k in range(2, NCOEF)]
_TRIREM_TAIL = [0.0, 0.0, 0.0] + [
    0.5 * (-1.0) ** (k - 1) * (1.0 - 2.0 / k) for k in range(3, NCOEF)
]


def term(kind, x, t):
    """Single term D(t) of a series, evaluated for real t > 0."""
    if kind == DIGAMMA:
        return x / (t * (x + t))
    if kind == TRIGAMMA:
        return 1.0 / ((x + t) * (x + t))
    if kind == GSUM:
        return x / ((x + t) * (x + t))
    if kind == TRIREM:
        u = (x + t) * (x + t + 1.0)
        return 0.5 / (u * u)
    a = x / t
    if kind == LGAMMA:
        return a - math.log1p(a)
    if kind == HSUM:
        return (math.log1p(a) - a / (1.0 + a)) / x
    if kind == FPP:
        return (math.log1p(a) - a * (3.0 * a + 2.0) / (2.0 * (1.0 + a) ** 2)) / x
    raise ValueError(f"unknown series kind {kind}")


def tail_integral(kind, x, t):
    """int_t^inf D(s) ds. Returns (value, rounding scale)."""
    if kind == DIGAMMA:
        v = math.log1p(x / t)
        return v, v
    if kind == TRIGAMMA:
        v = 1.0 / (x + t)
        return v, v
    if kind == GSUM:
        v = x / (x + t)
        return v, v
    if kind == TRIREM:
        u = x + t
        w = 1.0 / u
        if w <= SMALL_ARG:
            return horner(_TRIREM_TAIL, w)
        a = 0.5 * (w + 1.0 / (u + 1.0))
        b = math.log1p(w)
        return a - b, a + b
    b = x / t
    if kind == LGAMMA:
        # (t + x) ln(1 + x/t) - x = t * ((1 + b) ln(1 + b) - b)
        if b <= SMALL_ARG:
            s, sc = horner(_LG_TAIL, b)
            return t * s, t * sc
        p = (t + x) * math.log1p(b)
        return p - x, p + x
    if kind == HSUM:
        # 1 - (t/x) ln(1 + x/t)
        if b <= SMALL_ARG:
            return horner(_H_TAIL, b)
        q = math.log1p(b) / b
        return 1.0 - q, 1.0 + q
    if kind == FPP:
        # 1/2 - (t/x) ln(1 + x/t) + t / (2 (x + t))
        if b <= SMALL_ARG:
            return horner(_FPP_TAIL, b)
        q = math.log1p(b) / b
        r = 0.5 / (1.0 + b)
        return 0.5 - q + r, 0.5 + q + r
    raise ValueError(f"unknown series kind {kind}")


def tail_bracket(kind, x, n):
    """Enclosure (lo, hi, rounding) of sum_{k>n} D(k)."""
    i_n, s1 = tail_integral(kind, x, n)
    i_n1, s2 = tail_integral(kind, x, n + 1)
    i_mid, s3 = tail_integral(kind, x, n + 0.5)
    d_n = term(kind, x, n)
    lo = max(i_n1, i_n - 0.5 * d_n)
    hi = min(i_n, i_mid)
    rounding = 8 * EPS * (s1 + s2 + s3 + d_n)
    return lo, max(hi, lo), rounding


@dataclass(frozen=True)
class SeriesResult:
    value: float
    err: float
    n_terms: int
    accurate: bool


def certified_sum(kind, x, target_err, max_terms, backend=None):
    """Sum a series to absolute error ``target_err`` using at most ``max_terms`` terms.

    The number of summed terms doubles until the error budget is met or the
    term budget is exhausted; in the latter case ``accurate`` is False.
    """
    impl = backend or _backend.impl
    first = FIRST_INDEX[kind]
    n = min(max_terms, 256) + first - 1
    done = first - 1
    parts = []
    scale = 0.0
    while True:
        hi, lo, sc = impl.partial_sum(kind, x, done + 1, n)
        parts += [hi, lo]
        scale += sc
        count = n - first + 1
        done = n
        s = math.fsum(parts)
        t_lo, t_hi, t_round = tail_bracket(kind, x, n)
        trunc = 0.5 * (t_hi - t_lo)
        rnd = t_round + 4 * EPS * scale + 2 * EPS * abs(s) + count * EPS * EPS * scale
        err = trunc + rnd
        if err <= target_err or count >= max_terms:
            break
        # rounding floor above target: more terms cannot help
        if rnd > target_err and trunc <= rnd:
            break
        n = first - 1 + min(max_terms, 2 * count)
    value = s + 0.5 * (t_lo + t_hi)
    err += EPS * abs(value)
    return SeriesResult(value, err, count, err <= target_err)
