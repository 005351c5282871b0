import math

import pytest

from gammaseq import analysis as an
from gammaseq.certified import CertifiedValue, DomainError
from gammaseq.constants import EULER_GAMMA, ZETA2
from gammaseq.gfun import eval_point

# high-precision zeros of d5' and d5, used only as an independent cross-check
A_REF = 7.61316945644139859667
C_REF = 17.116504913988555705767


def test_d5_values():
    assert an.d5(17) < 0 < an.d5(18)
    assert an.d5_prime(math.e - 1) < 0
    assert an.d5_prime(1e12) == pytest.approx(0.5, abs=1e-9)
    assert an.d5(1) == pytest.approx(2 / 6 - math.log(2) ** 2, abs=1e-16)
    assert an.d5(1) < 0
    with pytest.raises(DomainError):
        an.d5(0)
    with pytest.raises(DomainError):
        an.d5_prime(-1)


def test_d5_prime_shape():
    # decreasing on (0, e-1] from +1/2 down to 1/2 - 2/e < 0, then increasing back towards 1/2
    xs = [0.01 + (math.e - 1 - 0.01) * k / 200 for k in range(201)]
    vals = [an.d5_prime(x) for x in xs]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[0] > 0 > vals[-1]
    assert an.d5_prime(math.e - 1) == pytest.approx(0.5 - 2 / math.e, abs=1e-15)
    up = [math.e - 1 + (20 - math.e + 1) * k / 400 for k in range(401)]
    vals = [an.d5_prime(x) for x in up]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_bisect_identity():
    rb = an.bisect(lambda t: t, -1.0, 2.0, 1e-9)
    assert rb.lo <= 0 <= rb.hi and rb.width <= 1e-9
    with pytest.raises(ValueError):
        an.bisect(lambda t: t * t + 1, -1.0, 1.0, 1e-3)
    with pytest.raises(ValueError):
        an.bisect(lambda t: t, 1.0, -1.0, 1e-3)
    with pytest.raises(ValueError):
        an.bisect(lambda t: t, -1.0, 1.0, 0.0)


def test_bisect_deterministic():
    assert an.bisect(an.d5, 8.0, 18.0, 1e-8) == an.bisect(an.d5, 8.0, 18.0, 1e-8)


def test_roots():
    a = an.find_root_a(1e-7)
    c = an.find_root_c(1e-7)
    assert a.width <= 1e-7 and c.width <= 1e-7
    assert 7.61316 < a.lo < a.hi < 7.61317
    assert 17.11650 < c.lo < c.hi < 17.11651
    assert a.lo <= A_REF <= a.hi and c.lo <= C_REF <= c.hi
    assert an.d5_prime(a.lo) < 0 < an.d5_prime(a.hi)
    assert an.d5(c.lo) < 0 < an.d5(c.hi)
    assert abs(math.log1p(a.mid) / (1 + a.mid) - 0.25) <= 1e-7
    assert an.root_contained(a) and an.root_contained(c)
    for off in (0.1, 1, 10, 100):
        assert eval_point(c.hi + off).Gpp.hi < 0


def test_wide_roots():
    a, c = an.find_root_a(0.5), an.find_root_c(0.5)
    assert 7 < a.lo < a.hi < 8 and 17 < c.lo < c.hi < 18


def test_report_verdicts():
    rep = an.SuiteReport("t", "r")
    rep.less(1, "ok", 1.0, 2.0)
    assert rep.verdict == an.PASS and rep.exit_code == 0
    rep.less(2, "tight", CertifiedValue(1.0, 0.5), CertifiedValue(1.2, 0.0))
    assert rep.verdict == an.INCONCLUSIVE and rep.exit_code == 3
    rep.less(3, "bad", 2.0, 1.0)
    assert rep.verdict == an.FAIL and rep.exit_code == 1
    assert rep.n_failed == len(rep.failures) == 1
    assert rep.worst_margin == -1.0
    other = an.SuiteReport("t", "r")
    other.less(4, "ok", 0.0, 5.0)
    merged = rep.merge(other)
    assert merged.n_checked == 4 and merged.n_failed == 1 and merged.n_inconclusive == 1


def test_cor_euler():
    rep = an.verify_cor_euler(10**4)
    assert rep.n_checked == 10**4 and rep.n_failed == 0 and rep.n_inconclusive == 0
    assert rep.worst_margin > 0
    # m = 1 by hand
    assert ZETA2 - 1 + EULER_GAMMA**2 < 1


def test_cor_polygamma():
    rep = an.verify_cor_polygamma(10**4)
    assert rep.n_failed == 0 and rep.n_inconclusive == 0
    assert ZETA2 + EULER_GAMMA**2 < 2


def test_bounds_default_grid():
    rep = an.verify_bounds()
    assert rep.verdict == an.PASS, rep.failures[:5] + rep.inconclusive[:5]
    assert rep.n_checked >= 19 * 20


def test_bounds_at_one():
    g = ZETA2 - 1
    assert 0.5 < g < 0.75
    xg_x = g - 1
    assert -0.5 + 1 / (6 * (15 / 14) ** 3) < xg_x < -0.5 + 1 / 6


def test_grid_suites():
    for rep in (an.verify_majorant(), an.verify_sign_bridge(), an.verify_identities(an.IDENTITY_XS[::10])):
        assert rep.verdict == an.PASS, (rep.suite_id, rep.failures[:5], rep.inconclusive[:5])


def test_threads_do_not_change_reports():
    a = an.verify_bounds(an.DEFAULT_BOUNDS_GRID[:8], threads=1)
    b = an.verify_bounds(an.DEFAULT_BOUNDS_GRID[:8], threads=3)
    assert (a.n_checked, a.n_failed, a.worst_margin) == (b.n_checked, b.n_failed, b.worst_margin)
    c = an.verify_cor_euler(500, threads=4)
    d = an.verify_cor_euler(500)
    assert c == d


def test_monotone():
    rep = an.verify_monotone(5000, 10**5)
    assert rep.verdict == an.PASS


def test_limits():
    t = an.limit_diagnostics()
    assert all(t.shrinking.values())
    last = t.rows[-1]
    assert abs(last["x2_Gpp"] + 1 / (2 * math.e)) <= 0.01
    assert abs(last["a"] - 0.5) <= 0.05
    assert abs(last["x2_fpp"] + 1) <= 0.01
    assert abs(last["Gp"] - 1 / math.e) <= 1e-3
    x = 1e4
    assert 1 - math.log1p(x) / x < last["h"] < x / (x + 1)
    # tolerance for a(x) set from the value at 1e5
    assert abs(eval_point(1e5).a_of_x.value - 0.5) < abs(last["a"] - 0.5)
    assert an.verify_limits().verdict == an.PASS
    with pytest.raises(DomainError):
        an.limit_diagnostics([10.0, 5.0])


def test_grid_validation():
    with pytest.raises(DomainError):
        an.verify_bounds([])
    with pytest.raises(DomainError):
        an.verify_bounds([1.0, -2.0])
    with pytest.raises(DomainError):
        an.verify_cor_euler(0)
