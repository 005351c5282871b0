import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gammaseq.certified import CertifiedValue
from gammaseq.gfun import eval_point, r_factor
from gammaseq.kernel import digamma, ln_gamma, trigamma
from gammaseq.sequences import lemma_sums_check, n_a

xs = st.floats(min_value=0.01, max_value=1e4, allow_nan=False, allow_infinity=False)
small = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(xs)
def test_recurrences(x):
    a, b = ln_gamma(x), ln_gamma(x + 1)
    assert abs(b.value - a.value - math.log(x)) <= a.err + b.err + 4e-16 * (abs(b.value) + abs(math.log(x)))
    a, b = digamma(x), digamma(x + 1)
    assert abs(b.value - a.value - 1 / x) <= a.err + b.err + 4e-16 * (abs(b.value) + 1 / x)
    a, b = trigamma(x), trigamma(x + 1)
    assert abs(a.value - b.value - 1 / x**2) <= a.err + b.err + 4e-16 * a.value


@settings(max_examples=100, deadline=None)
@given(xs)
def test_point_invariants(x):
    p = eval_point(x)
    assert p.G.value > 0 and p.g.value > 0 and p.h.value > 0 and p.fpp.value < 0
    lhs = (p.fpp + p.fp.square()) * (x * x)
    rhs = p.g + p.d.square() - 1.0
    assert abs(lhs.value - rhs.value) <= lhs.err + rhs.err
    assert 0 < p.r_factor.value < 1


@settings(max_examples=200, deadline=None)
@given(small, small)
def test_r_increasing(x, y):
    if x == y:
        return
    lo, hi = sorted((x, y))
    if hi - lo < 1e-6 * hi:
        return
    assert r_factor(lo).value < r_factor(hi).value


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1001, 1000), max_value=Fraction(40)))
def test_n_a_exact_agrees(a):
    n = 1
    p, f = a, 1
    while p > f:
        n += 1
        p *= a
        f *= n
    assert n_a(a, exact=True).n_a == n


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=2, max_size=80), st.data())
def test_lemma_sums(seq, data):
    half = len(seq) // 2
    m = data.draw(st.integers(1, half))
    N = data.draw(st.integers(m, len(seq) - m))
    assert lemma_sums_check(seq, m, N)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-1e3, 1e3),
    st.floats(0, 1),
    st.floats(-1e3, 1e3),
    st.floats(0, 1),
)
def test_certified_arithmetic_encloses(a, ea, b, eb):
    A, B = CertifiedValue(a, ea), CertifiedValue(b, eb)
    for sa in (-1, 0, 1):
        for sb in (-1, 0, 1):
            x, y = Fraction(a) + sa * Fraction(ea), Fraction(b) + sb * Fraction(eb)
            for res, exact in ((A + B, x + y), (A - B, x - y), (A * B, x * y)):
                assert abs(Fraction(res.value) - exact) <= Fraction(res.err)
