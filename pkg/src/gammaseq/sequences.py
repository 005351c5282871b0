"""Integer-indexed objects: harmonic rows, C_m, D_m, closed forms, sigma_n, S_n, n_a."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from . import _backend
from .certified import EPS, CertifiedValue, DomainError
from .constants import E, E_ERR, EULER_GAMMA, ZETA2
from .kernel import ln_factorial

_E = CertifiedValue(E, E_ERR)


@dataclass(frozen=True)
class HarmonicRow:
    m: int
    H: float
    H2: float
    C_m: float
    D_m: float


@dataclass(frozen=True)
class SigmaTerm:
    n: int
    sigma: CertifiedValue
    S: CertifiedValue


@dataclass(frozen=True)
class NaResult:
    a_in: float
    n_a: int
    interval_lo: float
    interval_hi: float


def _check_index(m, name="m", minimum=1):
    if isinstance(m, bool) or not isinstance(m, int) or m < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {m!r}")
    return m


@lru_cache(maxsize=8)
def _raw_table(size):
    return _backend.harmonic_table(size)


def _table(m):
    # share one cached table across nearby sizes
    size = max(1024, 1 << (m - 1).bit_length())
    return _raw_table(size)


class HarmonicTable(Sequence):
    """Rows m = 1..m_max, backed by arrays; indexing yields :class:`HarmonicRow`."""

    def __init__(self, m_max):
        self.m_max = _check_index(m_max, "m_max")
        H, H2, LF = _table(m_max)
        self.H = H[: m_max + 1]
        self.H2 = H2[: m_max + 1]
        self.ln_fact = LF[: m_max + 1]

    def __len__(self):
        return self.m_max

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        m = i + 1
        return HarmonicRow(m, float(self.H[m]), float(self.H2[m]), self.c(m), self.d(m))

    def row(self, m):
        return self[m - 1]

    def c(self, m):
        return float(self.H[m]) - math.log(m)

    def d(self, m):
        return float(self.H[m]) - float(self.ln_fact[m]) / m


def harmonic_rows(m_max):
    """Harmonic rows m = 1..m_max (ln m! as a running sum of ln k)."""
    return HarmonicTable(m_max)


def c_m(m):
    _check_index(m)
    H, _, _ = _table(m)
    return float(H[m]) - math.log(m)


def d_m(m):
    _check_index(m)
    H, _, LF = _table(m)
    return float(H[m]) - float(LF[m]) / m


def g_closed(m):
    """g(m) = m (pi^2/6 - sum_{n<=m} 1/n^2)."""
    _check_index(m)
    _, H2, _ = _table(m)
    return m * (ZETA2 - float(H2[m]))


def g_closed_err(m):
    """Rounding bound for :func:`g_closed`: zeta(2) and H2 each carry a few ulps, scaled by m."""
    return m * 8 * EPS * ZETA2


def h_closed(m, route="cor"):
    """h(m) = D_m - C, or via the C_1 + ... + C_{m-1} route."""
    _check_index(m)
    if route == "cor":
        return d_m(m) - EULER_GAMMA
    if route == "sum":
        return 1.0 - EULER_GAMMA + (_c_prefix(m - 1) - math.log(m)) / m
    raise ValueError(f"unknown route {route!r}")


def d_closed(m, route="cor"):
    """d(m) = C + 1 - D_m, or via the C_1 + ... + C_{m-1} route."""
    _check_index(m)
    if route == "cor":
        return EULER_GAMMA + 1.0 - d_m(m)
    if route == "sum":
        return EULER_GAMMA - (_c_prefix(m - 1) - math.log(m)) / m
    raise ValueError(f"unknown route {route!r}")


def d_closed_err(m):
    """Rounding bound for :func:`d_closed`."""
    H, _, LF = _table(m)
    return 8 * EPS * (2.0 + float(H[m]) + float(LF[m]) / m)


def _c_prefix(k):
    # C_1 + ... + C_k
    if k <= 0:
        return 0.0
    H, _, _ = _table(k)
    return math.fsum(float(H[l]) - math.log(l) for l in range(1, k + 1))


def lemma_sums_check(seq, m, N, rel_tol=1e-10):
    """Check sum_{n=1}^N (a_{m+n} - a_n) == sum_{l=1}^m (a_{N+l} - a_l).

    ``seq[0]`` is a_1. Tolerance is relative to the magnitude of the summands.
    """
    _check_index(m)
    _check_index(N, "N")
    if N < m:
        raise DomainError(f"need N >= m, got N={N}, m={m}")
    if len(seq) < N + m:
        raise DomainError(f"sequence needs at least N + m = {N + m} entries, has {len(seq)}")
    a = [float(v) for v in seq[: N + m]]
    left = math.fsum(a[m + n - 1] - a[n - 1] for n in range(1, N + 1))
    right = math.fsum(a[N + l - 1] - a[l - 1] for l in range(1, m + 1))
    scale = max(1.0, max(abs(v) for v in a))
    return abs(left - right) <= rel_tol * scale


def lemma_simplify_sides(m):
    """Both sides of sum_{l<=m} C_l = (m+1)(C_{m+1} + ln(m+1) - 1) - ln(m!)."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise DomainError(f"m must be a non-negative integer, got {m!r}")
    left = _c_prefix(m)
    H, _, LF = _table(m + 1)
    c_next = float(H[m + 1]) - math.log(m + 1)
    right = (m + 1) * (c_next + math.log(m + 1) - 1.0) - float(LF[m])
    return left, right


def lemma_simplify_check(m, tol=1e-10):
    left, right = lemma_simplify_sides(m)
    return abs(left - right) <= tol


def _g_int(n):
    # G(n) = (n!)^(1/n) in the log domain
    return (ln_factorial(n) / n).exp()


def sigma(n):
    """sigma_n = (n+1)!^(1/(n+1)) - n!^(1/n) and S_n = e sigma_n."""
    _check_index(n, "n")
    s = _g_int(n + 1) - _g_int(n)
    return SigmaTerm(n, s, _E * s)


def sigma_table(n_max):
    _check_index(n_max, "n_max")
    g = [None] + [_g_int(k) for k in range(1, n_max + 2)]
    out = []
    for n in range(1, n_max + 1):
        s = g[n + 1] - g[n]
        out.append(SigmaTerm(n, s, _E * s))
    return out


def _parse_a(a):
    """(float value, exact Fraction or None)."""
    if isinstance(a, bool):
        raise DomainError(f"a must be a real number, got {a!r}")
    if isinstance(a, str):
        try:
            exact = Fraction(Decimal(a.strip()))
        except Exception:
            raise DomainError(f"cannot parse {a!r} as a decimal number") from None
        return float(exact), exact
    if isinstance(a, (Fraction, Decimal, int)):
        exact = Fraction(a)
        return float(exact), exact
    v = float(a)
    if not math.isfinite(v):
        raise DomainError(f"a must be finite, got {a!r}")
    return v, Fraction(v)


EXACT_LIMIT = 25


def _na_cap(a):
    return int(3 * a * math.log(a) + 3) + 1


def n_a(a, exact=False):
    """Smallest n with a^n <= n!, with its half-open interval ((n-1)!^(1/(n-1)), n!^(1/n)].

    The comparison is n ln a <= ln(n!) + err(ln n!): a point within the
    certified error of the boundary counts as on it. With ``exact=True`` the
    first ``EXACT_LIMIT`` candidates are decided in exact rational arithmetic.
    """
    value, frac = _parse_a(a)
    if not (frac > 1 and value > 1):
        raise DomainError(f"a must be > 1, got {a!r}")
    n = None
    if exact:
        power = Fraction(1)
        fact = 1
        for k in range(1, EXACT_LIMIT + 1):
            power *= frac
            fact *= k
            if power <= fact:
                n = k
                break
    if n is None:
        n = _na_float(value, EXACT_LIMIT + 1 if exact else 1)
    return NaResult(value, n, _root_edge(n - 1, -1), _root_edge(n, 1))


def _root_edge(k, side):
    """(k!)^(1/k) taken at the upper edge of ln(k!), nudged outward by a few ulps.

    These are the endpoints the tie rule actually decides against, so
    ``interval_lo < a <= interval_hi`` holds for the returned n even when a
    sits within rounding of a boundary.
    """
    if k <= 1:
        return 1.0
    lf = ln_factorial(k)
    return math.exp((lf.value + lf.err) / k) * (1.0 + side * 4 * EPS)


def _na_float(a, n_min):
    log_a = math.log(a)
    cap = _na_cap(a)

    def holds(k):
        lf = ln_factorial(k)
        return k * log_a <= lf.value + lf.err

    n = _backend.scan_na(log_a, cap)
    if n < 0:
        raise RuntimeError(f"internal error: n_a search for a={a!r} exceeded cap {cap}")
    n = max(n, n_min)
    # the running-sum scan is approximate; settle the boundary with certified values
    while n > n_min and holds(n - 1):
        n -= 1
    while not holds(n):
        n += 1
        if n > cap:
            raise RuntimeError(f"internal error: n_a search for a={a!r} exceeded cap {cap}")
    return n
