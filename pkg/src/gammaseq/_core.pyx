# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same contract as ``_pycore``."""

from libc.math cimport log, log1p, ceil, fabs, pow

import numpy as np

cdef double EPS = 2.220446049250313e-16
cdef double SMALL_ARG = 0.25
DEF NCOEF = 40

cdef enum:
    LGAMMA = 0
    DIGAMMA = 1
    TRIGAMMA = 2
    GSUM = 3
    HSUM = 4
    FPP = 5
    TRIREM = 6

cdef double LG_S[NCOEF]
cdef double H_S[NCOEF]
cdef double FPP_S[NCOEF]

cdef int _k
for _k in range(NCOEF):
    LG_S[_k] = 0.0
    H_S[_k] = 0.0
    FPP_S[_k] = 0.0
for _k in range(2, NCOEF):
    LG_S[_k] = (-1.0) ** _k / _k
    H_S[_k] = (-1.0) ** _k * (_k - 1) / _k
for _k in range(3, NCOEF):
    FPP_S[_k] = (-1.0) ** (_k - 1) * (1.0 / _k + (_k - 3) / 2.0)


cdef inline void _horner(double* coef, double a, double* s, double* t) noexcept nogil:
    cdef double sv = 0.0, tv = 0.0
    cdef int k
    for k in range(NCOEF - 1, -1, -1):
        sv = sv * a + coef[k]
        tv = tv * a + fabs(coef[k])
    s[0] = sv
    t[0] = tv


cdef inline void _term(int kind, double x, double n, double* v, double* sc) noexcept nogil:
    cdef double a, l1, r, u, s, t
    if kind == DIGAMMA:
        v[0] = x / (n * (x + n))
        sc[0] = v[0]
        return
    if kind == TRIGAMMA:
        v[0] = 1.0 / ((x + n) * (x + n))
        sc[0] = v[0]
        return
    if kind == GSUM:
        v[0] = x / ((x + n) * (x + n))
        sc[0] = v[0]
        return
    if kind == TRIREM:
        u = (x + n) * (x + n + 1.0)
        v[0] = 0.5 / (u * u)
        sc[0] = v[0]
        return
    a = x / n
    if kind == LGAMMA:
        if a <= SMALL_ARG:
            _horner(LG_S, a, v, sc)
        else:
            l1 = log1p(a)
            v[0] = a - l1
            sc[0] = a + l1
        return
    if kind == HSUM:
        if a <= SMALL_ARG:
            _horner(H_S, a, &s, &t)
            v[0] = s / x
            sc[0] = t / x
        else:
            l1 = log1p(a)
            r = a / (1.0 + a)
            v[0] = (l1 - r) / x
            sc[0] = (l1 + r) / x
        return
    # FPP
    if a <= SMALL_ARG:
        _horner(FPP_S, a, &s, &t)
        v[0] = s / x
        sc[0] = t / x
    else:
        l1 = log1p(a)
        r = a * (3.0 * a + 2.0) / (2.0 * (1.0 + a) * (1.0 + a))
        v[0] = (l1 - r) / x
        sc[0] = (l1 + r) / x


cdef inline void _neumaier(double* s, double* c, double v) noexcept nogil:
    cdef double t = s[0] + v
    if fabs(s[0]) >= fabs(v):
        c[0] += (s[0] - t) + v
    else:
        c[0] += (v - t) + s[0]
    s[0] = t


def partial_sum(int kind, double x, long n_lo, long n_hi):
    """Sum terms n_lo..n_hi inclusive; returns (hi, lo, scale)."""
    if kind < 0 or kind > TRIREM:
        raise ValueError(f"unknown series kind {kind}")
    cdef double s = 0.0, c = 0.0, sc_s = 0.0, sc_c = 0.0, v = 0.0, sc = 0.0
    cdef long n
    with nogil:
        for n in range(n_lo, n_hi + 1):
            _term(kind, x, <double>n, &v, &sc)
            _neumaier(&s, &c, v)
            _neumaier(&sc_s, &sc_c, sc)
    return s, c, sc_s + sc_c


def harmonic_table(long m_max):
    """Running H_m, H_m^(2), ln(m!) for m = 0..m_max with compensated sums."""
    H = np.zeros(m_max + 1)
    H2 = np.zeros(m_max + 1)
    LF = np.zeros(m_max + 1)
    cdef double[::1] h = H, h2 = H2, lf = LF
    cdef double s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0, s3 = 0.0, c3 = 0.0, k
    cdef long m
    with nogil:
        for m in range(1, m_max + 1):
            k = <double>m
            _neumaier(&s1, &c1, 1.0 / k)
            _neumaier(&s2, &c2, 1.0 / (k * k))
            _neumaier(&s3, &c3, log(k))
            h[m] = s1 + c1
            h2[m] = s2 + c2
            lf[m] = s3 + c3
    return H, H2, LF


def scan_na(double log_a, long n_cap):
    """First n in 1..n_cap with ln(n!) >= n*log_a by running sums, or -1."""
    cdef double s = 0.0, c = 0.0
    cdef long n
    cdef long found = -1
    with nogil:
        for n in range(1, n_cap + 1):
            _neumaier(&s, &c, log(<double>n))
            if s + c >= n * log_a:
                found = n
                break
    return found


# Enveloping Stirling series; see _pycore for the remainder convention.
cdef double B2K[6]
B2K[:] = [1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730]
cdef double LG_C[6]
cdef double PSI_C[6]
for _k in range(6):
    LG_C[_k] = B2K[_k] / ((2 * _k + 2) * (2 * _k + 1))
    PSI_C[_k] = B2K[_k] / (2 * _k + 2)
cdef double LG_REM = (7.0 / 6) / (14 * 13)
cdef double PSI_REM = (7.0 / 6) / 14
cdef double TRI_REM = 7.0 / 6
cdef double HALF_LOG_2PI = 0.91893853320467274178


cdef inline double _odd_poly(double* coef, double r, double r2) noexcept nogil:
    cdef double s = 0.0
    cdef int k
    for k in range(5, -1, -1):
        s = s * r2 + coef[k]
    return s * r


cdef inline long _shift(double x, double threshold) noexcept nogil:
    if x < threshold:
        return <long>ceil(threshold - x)
    return 0


def lgamma_asym(double x, double threshold):
    cdef long k = _shift(x, threshold), j
    cdef double s = 0.0, c = 0.0, scale = 0.0, lv, y, ly, r, corr, main, val_y, vs = 0.0, vc = 0.0
    cdef double shift, value, err
    for j in range(k):
        lv = log(x + j)
        _neumaier(&s, &c, lv)
        scale += fabs(lv)
    shift = s + c
    y = x + k
    ly = log(y)
    r = 1.0 / y
    corr = _odd_poly(LG_C, r, r * r)
    main = (y - 0.5) * ly
    _neumaier(&vs, &vc, main)
    _neumaier(&vs, &vc, -y)
    _neumaier(&vs, &vc, HALF_LOG_2PI)
    _neumaier(&vs, &vc, corr)
    val_y = vs + vc
    value = val_y - shift
    err = LG_REM * pow(r, 13)
    # log within 1 ulp, one product rounding, exact y - 0.5 and -y
    err += 2 * EPS * fabs(main) + EPS * (fabs(corr) + HALF_LOG_2PI + 2 * fabs(val_y))
    if k:
        err += 0.5 * EPS * y * (ly if ly > 0.6 else 0.6)
        err += 4 * EPS * scale + EPS * k + 2 * EPS * fabs(shift)
    err += EPS * fabs(value)
    return value, err


def digamma_asym(double x, double threshold):
    cdef long k = _shift(x, threshold), j
    cdef double s = 0.0, c = 0.0, y, ly, r, r2, corr, val_y, vs = 0.0, vc = 0.0
    cdef double shift, value, err
    for j in range(k):
        _neumaier(&s, &c, 1.0 / (x + j))
    shift = s + c
    y = x + k
    ly = log(y)
    r = 1.0 / y
    r2 = r * r
    corr = _odd_poly(PSI_C, r, r2) * r
    _neumaier(&vs, &vc, ly)
    _neumaier(&vs, &vc, -0.5 * r)
    _neumaier(&vs, &vc, -corr)
    val_y = vs + vc
    value = val_y - shift
    err = PSI_REM * pow(r2, 7)
    err += 4 * EPS * (fabs(ly) + 0.5 * r + fabs(corr) + fabs(val_y))
    if k:
        err += EPS * y * r
        err += 6 * EPS * shift
    err += EPS * fabs(value)
    return value, err


def trigamma_asym(double x, double threshold):
    cdef long k = _shift(x, threshold), j
    cdef double s = 0.0, c = 0.0, y, r, r2, corr, val_y, vs = 0.0, vc = 0.0
    cdef double shift, value, err
    for j in range(k):
        _neumaier(&s, &c, 1.0 / ((x + j) * (x + j)))
    shift = s + c
    y = x + k
    r = 1.0 / y
    r2 = r * r
    corr = _odd_poly(B2K, r, r2) * r2
    _neumaier(&vs, &vc, r)
    _neumaier(&vs, &vc, 0.5 * r2)
    _neumaier(&vs, &vc, corr)
    val_y = vs + vc
    value = val_y + shift
    err = TRI_REM * r * pow(r2, 7)
    err += 4 * EPS * (r + 0.5 * r2 + fabs(corr) + val_y)
    if k:
        err += EPS * y * r2
        err += 6 * EPS * shift
    err += EPS * fabs(value)
    return value, err


def trigamma_excess_asym(double x, double threshold):
    cdef double r, r2, corr, value, err, lead, out
    if x >= threshold:
        r = 1.0 / x
        r2 = r * r
        corr = _odd_poly(B2K, r, r2) * r2
        return corr, TRI_REM * r * pow(r2, 7) + 8 * EPS * fabs(corr)
    value, err = trigamma_asym(x, threshold)
    r = 1.0 / x
    lead = r + 0.5 * r * r
    out = value - lead
    return out, err + 2 * EPS * (fabs(value) + lead) + EPS * fabs(out)
