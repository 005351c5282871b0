"""G(x) = Gamma(x+1)^(1/x), its log f, and everything derived from them.

Notation used throughout:

    f(x) = ln Gamma(x+1) / x          G = exp(f)
    h(x) = x f'(x)                     d = 1 - h
    g(x) = sum_{n>=1} x / (x+n)^2      = x psi'(x) - 1/x
    G'   = f' G                        G'' = (f'' + f'^2) G
    A(x) = e G'(x)                     a(x) = (A(x) - 1) x
    R(x) = (1+x)/x^2 * (x - ln(1+x))

h, g and f'' come from their own series (independent of the psi/psi' kernel),
so identities linking them to the kernel are meaningful cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certified import DEFAULT_CONFIG, EPS, CertifiedValue, DomainError, check_positive
from .constants import E, E_ERR
from .kernel import digamma, ln_gamma
from .series import FPP, GSUM, HSUM, certified_sum

MIN_X = 0.01

_E = CertifiedValue(E, E_ERR)


@dataclass(frozen=True)
class GPoint:
    x: float
    f: CertifiedValue
    fp: CertifiedValue
    fpp: CertifiedValue
    G: CertifiedValue
    Gp: CertifiedValue
    Gpp: CertifiedValue
    g: CertifiedValue
    h: CertifiedValue
    d: CertifiedValue
    A: CertifiedValue
    a_of_x: CertifiedValue
    r_factor: CertifiedValue

    def field(self, name):
        """Look up a field by its short CLI name (``a`` and ``R`` are aliases)."""
        return getattr(self, FIELD_ALIASES.get(name, name))


FIELD_ALIASES = {"a": "a_of_x", "R": "r_factor"}
FIELD_NAMES = ("f", "fp", "fpp", "G", "Gp", "Gpp", "g", "h", "d", "A", "a", "R")


def _series(kind, x, cfg, target=None):
    s = certified_sum(kind, x, target or cfg.target_err, cfg.max_terms)
    return s


def f_of(x, cfg=None):
    """Certified f(x) = ln Gamma(x+1) / x."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    y = x + 1.0
    lg = ln_gamma(y, cfg)
    # y = x + 1 is rounded; |psi| on [1, inf) is below max(C, ln y)
    arg_err = abs(y - 1.0 - x) * max(0.58, math.log(y))
    num = CertifiedValue(lg.value, lg.err + arg_err, lg.accurate)
    out = num / x
    return CertifiedValue(out.value, out.err, out.err <= cfg.target_err)


def h_series(x, cfg=None):
    """h(x) = x f'(x) = sum_{n>=1} [ln(1 + x/n)/x - 1/(x+n)]."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    s = _series(HSUM, x, cfg)
    return CertifiedValue(s.value, s.err, s.accurate)


def h_kernel(x, cfg=None):
    """h(x) = 1/x + psi(x) - f(x), through the ln Gamma / psi kernel."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    inv = CertifiedValue(1.0 / x, 0.5 * EPS / x)
    out = inv + digamma(x, cfg) - f_of(x, cfg)
    return CertifiedValue(out.value, out.err, out.err <= cfg.target_err)


def g_series(x, cfg=None):
    """g(x) = sum_{n>=1} x / (x+n)^2."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    s = _series(GSUM, x, cfg)
    return CertifiedValue(s.value, s.err, s.accurate)


def fpp_sum(x, cfg=None):
    """sum_{n>=1} D(n) with D(t) = ln(1 + x/t)/x - (3x + 2t) / (2 (x+t)^2); equals -x^2 f''(x) / 2."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    target = cfg.target_err * 0.5 * min(1.0, x * x)
    s = _series(FPP, x, cfg, target)
    return CertifiedValue(s.value, s.err, s.accurate)


def fpp_series(x, cfg=None):
    """Certified f''(x) = -(2/x^2) sum_{n>=1} D(n); always negative."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    s = fpp_sum(x, cfg)
    out = s * (-2.0 / (x * x))
    err = out.err + 2 * EPS * abs(out.value)
    return CertifiedValue(out.value, err, s.accurate and err <= cfg.target_err)


def fpp_identity(x, cfg=None):
    """f'' by the identity route (g + d^2 - 1 - h^2) / x^2; a cross-check only."""
    cfg = cfg or DEFAULT_CONFIG
    x = check_positive(x)
    h = h_series(x, cfg)
    d = 1.0 - h
    return (g_series(x, cfg) + d.square() - 1.0 - h.square()) / (x * x)


def _x_minus_log1p(x):
    # x - ln(1 + x), accurate for small x
    if x <= 0.25:
        s = 0.0
        for k in range(40, 1, -1):
            s = s * x + (-1.0) ** k / k
        return s * x * x
    return x - math.log1p(x)


def r_factor(x):
    """R(x) = (1+x)/x^2 * (x - ln(1+x)); lies in (0, 1) and increases to 1."""
    x = check_positive(x)
    v = (1.0 + x) / (x * x) * _x_minus_log1p(x)
    return CertifiedValue(v, 8 * EPS * v)


def _check_g_domain(x):
    x = check_positive(x)
    if x < MIN_X:
        raise DomainError(f"G and its derivatives are supported for x >= {MIN_X}, got {x!r}")
    return x


def eval_point(x, cfg=None):
    """Every function of the family at one point."""
    cfg = cfg or DEFAULT_CONFIG
    x = _check_g_domain(x)
    f = f_of(x, cfg)
    h = h_series(x, cfg)
    g = g_series(x, cfg)
    fpp = fpp_series(x, cfg)
    fp = h / x
    G = f.exp()
    Gp = fp * G
    Gpp = (fpp + fp.square()) * G
    d = CertifiedValue(1.0 - h.value, h.err + EPS, h.accurate)
    A = _E * Gp
    a = (A - 1.0) * x
    return GPoint(
        x=x,
        f=f,
        fp=fp,
        fpp=fpp,
        G=G,
        Gp=Gp,
        Gpp=Gpp,
        g=g,
        h=h,
        d=d,
        A=A,
        a_of_x=a,
        r_factor=r_factor(x),
    )


def gprime_sandwich(x, cfg=None):
    """(G R / (x+1), G / (x+1)), the closed-form enclosure of G'(x)."""
    cfg = cfg or DEFAULT_CONFIG
    x = _check_g_domain(x)
    G = f_of(x, cfg).exp()
    hi = G / (x + 1.0)
    lo = hi * r_factor(x)
    return lo.value, hi.value


def g_over_x_plus_1(x, cfg=None):
    """G(x) / (x+1), a strictly decreasing function."""
    cfg = cfg or DEFAULT_CONFIG
    x = _check_g_domain(x)
    return f_of(x, cfg).exp() / (x + 1.0)
