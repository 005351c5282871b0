"""Pure-Python implementation of the hot kernels.

Mirrors ``_core.pyx`` function for function. Array loops are vectorised with
numpy and summed with :func:`math.fsum`; scalar kernels are plain Python.
"""

from __future__ import annotations

import math

import numpy as np

EPS = 2.0**-52

# Series kinds. The integer codes are shared with the compiled core.
LGAMMA = 0  # x/n - ln(1 + x/n), n >= 1
DIGAMMA = 1  # x / (n (x + n)), n >= 1
TRIGAMMA = 2  # 1 / (x + n)^2, n >= 0
GSUM = 3  # x / (x + n)^2, n >= 1
HSUM = 4  # (1/x) ln(1 + x/n) - 1/(x + n), n >= 1
FPP = 5  # (1/x) ln(1 + x/n) - (3x + 2n) / (2 (x + n)^2), n >= 1
TRIREM = 6  # 1 / (2 (x + n)^2 (x + n + 1)^2), n >= 0

SMALL_ARG = 0.25
NCOEF = 40

# Power-series coefficients in a = x/n, indexed by power; used when a <= SMALL_ARG.
_LG_SERIES = [0.0, 0.0] + [(-1.0) ** k / k for k in range(2, NCOEF)]
_H_SERIES = [0.0, 0.0] + [(-1.0) ** k * (k - 1) / k for k in range(2, NCOEF)]
_FPP_SERIES = [0.0, 0.0, 0.0] + [
    (-1.0) ** (k - 1) * (1.0 / k + (k - 3) / 2.0) for k in range(3, NCOEF)
]

CHUNK = 1 << 18


def horner(coef, a):
    """Evaluate sum(coef[k] * a**k) and sum(|coef[k]| * a**k) for a >= 0."""
    s = 0.0
    t = 0.0
    for c in reversed(coef):
        s = s * a + c
        t = t * a + abs(c)
    return s, t


def _horner_vec(coef, a):
    s = np.zeros_like(a)
    t = np.zeros_like(a)
    for c in reversed(coef):
        s = s * a + c
        t = t * a + abs(c)
    return s, t


def _terms(kind, x, n):
    """Vectorised term values and rounding scales for integer indices ``n``."""
    if kind == DIGAMMA:
        v = x / (n * (x + n))
        return v, v
    if kind == TRIGAMMA:
        v = 1.0 / ((x + n) * (x + n))
        return v, v
    if kind == GSUM:
        v = x / ((x + n) * (x + n))
        return v, v
    if kind == TRIREM:
        u = (x + n) * (x + n + 1.0)
        v = 0.5 / (u * u)
        return v, v

    a = x / n
    small = a <= SMALL_ARG
    v = np.empty_like(a)
    sc = np.empty_like(a)
    a_s = a[small]
    a_d = a[~small]
    if kind == LGAMMA:
        s, t = _horner_vec(_LG_SERIES, a_s)
        v[small], sc[small] = s, t
        l1 = np.log1p(a_d)
        v[~small] = a_d - l1
        sc[~small] = a_d + l1
        return v, sc
    if kind == HSUM:
        s, t = _horner_vec(_H_SERIES, a_s)
        v[small], sc[small] = s / x, t / x
        l1 = np.log1p(a_d)
        r = a_d / (1.0 + a_d)
        v[~small] = (l1 - r) / x
        sc[~small] = (l1 + r) / x
        return v, sc
    if kind == FPP:
        s, t = _horner_vec(_FPP_SERIES, a_s)
        v[small], sc[small] = s / x, t / x
        l1 = np.log1p(a_d)
        r = a_d * (3.0 * a_d + 2.0) / (2.0 * (1.0 + a_d) ** 2)
        v[~small] = (l1 - r) / x
        sc[~small] = (l1 + r) / x
        return v, sc
    raise ValueError(f"unknown series kind {kind}")


def partial_sum(kind, x, n_lo, n_hi):
    """Sum terms n_lo..n_hi inclusive.

    Returns ``(hi, lo, scale)``: the sum as an unevaluated pair ``hi + lo``
    and the sum of per-term rounding scales.
    """
    parts = []
    scale = 0.0
    start = n_lo
    while start <= n_hi:
        stop = min(n_hi, start + CHUNK - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        v, sc = _terms(kind, x, n)
        parts.append(math.fsum(v))
        scale += math.fsum(sc)
        start = stop + 1
    return math.fsum(parts), 0.0, scale


def harmonic_table(m_max):
    """Running H_m, H_m^(2) and ln(m!) for m = 0..m_max.

    Blocked prefix sums: exact (fsum) block offsets plus a short float cumsum
    inside each block, so the error per entry stays a few ulps.
    """
    block = 64
    k = np.arange(1, m_max + 1, dtype=np.float64)
    out = []
    for vals in (1.0 / k, 1.0 / (k * k), np.log(k)):
        res = np.zeros(m_max + 1)
        offset_hi = 0.0
        offset_lo = 0.0
        for b in range(0, m_max, block):
            chunk = vals[b : b + block]
            res[b + 1 : b + 1 + len(chunk)] = (offset_hi + np.cumsum(chunk)) + offset_lo
            total = math.fsum([offset_hi, offset_lo, math.fsum(chunk)])
            offset_lo = math.fsum([offset_hi, offset_lo, math.fsum(chunk), -total])
            offset_hi = total
        out.append(res)
    return out[0], out[1], out[2]


def scan_na(log_a, n_cap):
    """First n in 1..n_cap with ln(n!) >= n*log_a by running sums, or -1."""
    offset = 0.0
    start = 1
    while start <= n_cap:
        stop = min(n_cap, start + CHUNK - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        lf = offset + np.cumsum(np.log(n))
        hit = np.nonzero(lf >= n * log_a)[0]
        if hit.size:
            return int(start + hit[0])
        offset = float(lf[-1])
        start = stop + 1
    return -1


# Enveloping Stirling series (x > 0 real): the remainder after the last kept
# term has the sign of, and is smaller than, the first omitted term.
# Bernoulli numbers B2..B12; the remainder constant uses B14 = 7/6.
_B2K = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730)
_LG_C = tuple(b / ((2 * k + 2) * (2 * k + 1)) for k, b in enumerate(_B2K))
_PSI_C = tuple(b / (2 * k + 2) for k, b in enumerate(_B2K))
_LG_REM = (7.0 / 6) / (14 * 13)
_PSI_REM = (7.0 / 6) / 14
_TRI_REM = 7.0 / 6
HALF_LOG_2PI = 0.91893853320467274178


def _odd_poly(coef, r, r2):
    # sum(coef[k] * r**(2k+1))
    s = 0.0
    for c in reversed(coef):
        s = s * r2 + c
    return s * r


def _shift(x, threshold):
    k = 0
    if x < threshold:
        k = int(math.ceil(threshold - x))
    return k


def lgamma_asym(x, threshold):
    """ln Gamma(x) via upward shift and Stirling's series. Returns (value, err)."""
    k = _shift(x, threshold)
    logs = [math.log(x + j) for j in range(k)]
    y = x + k
    ly = math.log(y)
    r = 1.0 / y
    corr = _odd_poly(_LG_C, r, r * r)
    main = (y - 0.5) * ly
    val_y = math.fsum([main, -y, HALF_LOG_2PI, corr])
    shift = math.fsum(logs)
    value = val_y - shift
    err = _LG_REM * r**13
    # log within 1 ulp, one product rounding, exact y - 0.5 and -y, correctly rounded fsum
    err += 2 * EPS * abs(main) + EPS * (abs(corr) + HALF_LOG_2PI + abs(val_y))
    if k:
        err += 0.5 * EPS * y * max(ly, 0.6)
        err += 4 * EPS * math.fsum(abs(v) for v in logs) + EPS * k + 2 * EPS * abs(shift)
    err += EPS * abs(value)
    return value, err


def digamma_asym(x, threshold):
    """psi(x) via upward shift and the asymptotic series. Returns (value, err)."""
    k = _shift(x, threshold)
    inv = [1.0 / (x + j) for j in range(k)]
    y = x + k
    ly = math.log(y)
    r = 1.0 / y
    r2 = r * r
    corr = _odd_poly(_PSI_C, r, r2) * r
    val_y = math.fsum([ly, -0.5 * r, -corr])
    shift = math.fsum(inv)
    value = val_y - shift
    err = _PSI_REM * r2**7
    err += 4 * EPS * (abs(ly) + 0.5 * r + abs(corr) + abs(val_y))
    if k:
        err += EPS * y * r  # argument rounding of y, |psi'(y)| <= 2/y
        err += 6 * EPS * shift
    err += EPS * abs(value)
    return value, err


def trigamma_asym(x, threshold):
    """psi'(x) via upward shift and the asymptotic series. Returns (value, err)."""
    k = _shift(x, threshold)
    sq = [1.0 / ((x + j) * (x + j)) for j in range(k)]
    y = x + k
    r = 1.0 / y
    r2 = r * r
    corr = _odd_poly(_B2K, r, r2) * r2
    val_y = math.fsum([r, 0.5 * r2, corr])
    shift = math.fsum(sq)
    value = val_y + shift
    err = _TRI_REM * r * r2**7
    err += 4 * EPS * (r + 0.5 * r2 + abs(corr) + val_y)
    if k:
        err += EPS * y * r2  # argument rounding of y, |psi''(y)| <= 2/y^2
        err += 6 * EPS * shift
    err += EPS * abs(value)
    return value, err


def trigamma_excess_asym(x, threshold):
    """psi'(x) - 1/x - 1/(2x^2), cancellation-free for x >= threshold."""
    if x >= threshold:
        r = 1.0 / x
        r2 = r * r
        corr = _odd_poly(_B2K, r, r2) * r2
        return corr, _TRI_REM * r * r2**7 + 8 * EPS * abs(corr)
    value, err = trigamma_asym(x, threshold)
    r = 1.0 / x
    lead = r + 0.5 * r * r
    out = value - lead
    return out, err + 2 * EPS * (abs(value) + lead) + EPS * abs(out)
