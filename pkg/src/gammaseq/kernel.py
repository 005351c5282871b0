"""Certified ln Gamma, psi and psi' for real x > 0.

Two evaluation routes:

``asymptotic`` (default)
    Shift x upward by the recurrences until it reaches
    ``cfg.shift_threshold``, evaluate Stirling's series there, shift back.
    The remainder bounds are the classical enveloping-series bounds for real
    positive arguments (first omitted term, same sign). They are a standard
    analytic fact about Stirling's series, not something derived here.

``series``
    Sum the Weierstrass product series (ln Gamma, psi) or
    sum 1/(x+n)^2 (psi') with a certified tail bracket; see
    :mod:`gammaseq.series`.

Both routes return :class:`CertifiedValue`; the routes are cross-checked in
the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend
from .certified import DEFAULT_CONFIG, EPS, CertifiedValue, DomainError, check_positive
from .constants import EULER_GAMMA, EULER_GAMMA_ERR
from .series import DIGAMMA, LGAMMA, TRIGAMMA, TRIREM, certified_sum

METHODS = ("asymptotic", "series")


@dataclass(frozen=True)
class KernelRow:
    x: float
    ln_gamma: CertifiedValue
    psi: CertifiedValue
    psi1: CertifiedValue


def _method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    return method


def _finish(value, err, cfg, ok=True):
    return CertifiedValue(value, err, ok and err <= cfg.target_err)


def ln_gamma(x, cfg=None, method="asymptotic"):
    """Certified ln Gamma(x)."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    if _method(method) == "asymptotic":
        value, err = _backend.lgamma_asym(x, cfg.shift_threshold)
        return _finish(value, err, cfg)
    # ln Gamma(x) = -C x - ln x + sum_{n>=1} (x/n - ln(1 + x/n))
    s = certified_sum(LGAMMA, x, cfg.target_err, cfg.max_terms)
    lx = math.log(x)
    cx = EULER_GAMMA * x
    value = s.value - cx - lx
    err = s.err + x * EULER_GAMMA_ERR + 2 * EPS * (cx + abs(lx) + 0.5) + EPS * abs(value)
    return _finish(value, err, cfg, s.accurate)


def digamma(x, cfg=None, method="asymptotic"):
    """Certified psi(x) = (ln Gamma)'(x)."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    if _method(method) == "asymptotic":
        value, err = _backend.digamma_asym(x, cfg.shift_threshold)
        return _finish(value, err, cfg)
    # psi(x) = -C - 1/x + sum_{n>=1} x / (n (x + n))
    s = certified_sum(DIGAMMA, x, cfg.target_err, cfg.max_terms)
    inv = 1.0 / x
    value = s.value - EULER_GAMMA - inv
    err = s.err + EULER_GAMMA_ERR + 2 * EPS * (EULER_GAMMA + inv + s.value)
    return _finish(value, err, cfg, s.accurate)


def trigamma(x, cfg=None, method="asymptotic"):
    """Certified psi'(x) = sum_{n>=0} 1/(x+n)^2."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    if _method(method) == "asymptotic":
        value, err = _backend.trigamma_asym(x, cfg.shift_threshold)
        return _finish(value, err, cfg)
    s = certified_sum(TRIGAMMA, x, cfg.target_err, cfg.max_terms)
    return _finish(s.value, s.err, cfg, s.accurate)


def trigamma_excess(x, cfg=None, method="asymptotic"):
    """Certified psi'(x) - 1/x - 1/(2x^2), free of the cancellation at large x.

    The series route sums the trapezoid defects
    1 / (2 (x+n)^2 (x+n+1)^2), n >= 0, which add up to exactly this quantity.
    """
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    if _method(method) == "asymptotic":
        value, err = _backend.trigamma_excess_asym(x, cfg.shift_threshold)
        return CertifiedValue(value, err)
    target = cfg.target_err / max(1.0, x * x)
    s = certified_sum(TRIREM, x, target, cfg.max_terms)
    return CertifiedValue(s.value, s.err)


def trigamma_enclosure(x):
    """Gordon's closed-form bracket (lo, hi) for psi'(x), x > 0."""
    x = check_positive(x)
    base = 1.0 / x + 0.5 / (x * x)
    lo = base + 1.0 / (6.0 * (x + 1.0 / 14) ** 3)
    hi = base + 1.0 / (6.0 * x**3)
    return lo, hi


def ln_factorial(n):
    """Certified ln(n!) for integer n >= 0."""
    if isinstance(n, bool) or not isinstance(n, int):
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        else:
            raise DomainError(f"n must be a non-negative integer, got {n!r}")
    if n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    if n < 2:
        return CertifiedValue(0.0, 0.0)
    if n <= 20:
        v = math.log(math.factorial(n))
        return CertifiedValue(v, 2 * EPS * v)
    value, err = _backend.lgamma_asym(float(n + 1), DEFAULT_CONFIG.shift_threshold)
    return CertifiedValue(value, err)


def kernel_row(x, cfg=None, method="asymptotic"):
    cfg = cfg or DEFAULT_CONFIG
    return KernelRow(
        float(x),
        ln_gamma(x, cfg, method),
        digamma(x, cfg, method),
        trigamma(x, cfg, method),
    )
