"""Acceptance criteria 1-13, one test each; a PASS/FAIL line per criterion is printed at the end of the run."""

import math
import random
import time
from fractions import Fraction

import pytest
from conftest import ACCEPTANCE

from gammaseq import analysis as an
from gammaseq.gfun import eval_point, g_series, h_series
from gammaseq.sequences import (
    g_closed,
    g_closed_err,
    h_closed,
    lemma_simplify_check,
    lemma_sums_check,
    n_a,
    sigma_table,
)


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_c01_root_a():
    t = time.perf_counter()
    rb = an.find_root_a(1e-7)
    dt = time.perf_counter() - t
    ok = rb.width <= 1e-7 and 7.61316 < rb.lo and rb.hi < 7.61317 and dt < 0.1
    record(1, ok, f"a in [{rb.lo!r}, {rb.hi!r}], width {rb.width:.3g}, {dt * 1e3:.2f} ms")


def test_c02_root_c():
    rb = an.find_root_c(1e-7)
    signs = an.d5(17) < 0 < an.d5(18)
    ok = rb.width <= 1e-7 and 17.11650 < rb.lo and rb.hi < 17.11651 and signs
    record(2, ok, f"c in [{rb.lo!r}, {rb.hi!r}], width {rb.width:.3g}, d5(17)={an.d5(17):.4g}, d5(18)={an.d5(18):.4g}")


def test_c03_sigma():
    tab = sigma_table(5000)
    first = tab[0].sigma.hi < 0.42
    dec = all(b.sigma.hi < a.sigma.lo for a, b in zip(tab, tab[1:]))
    above = all(t.sigma.lo > 1 / math.e for t in tab)
    record(3, first and dec and above, f"sigma_1={tab[0].sigma}, decreasing={dec}, >1/e={above}, n=1..5000")


def test_c04_s_sandwich():
    s1 = sigma_table(1)[0].S
    rep = an.verify_s_sandwich(18, 1000)
    ok = s1.hi < 1.15 and rep.verdict == an.PASS and rep.n_checked == 2 * 983
    record(4, ok, f"S_1={s1}; sandwich n=18..1000: {rep.n_checked} checks, {rep.n_failed} failed, {rep.n_inconclusive} inconclusive")


def test_c05_cor_euler():
    rep = an.verify_cor_euler(10**4)
    ok = rep.n_checked == 10**4 and rep.n_failed == 0 and rep.n_inconclusive == 0
    record(5, ok, f"m=1..10^4: {rep.n_failed} failures, worst margin {rep.worst_margin:.6g}")


def test_c06_cor_polygamma():
    rep = an.verify_cor_polygamma(10**4)
    ok = rep.n_failed == 0 and rep.n_inconclusive == 0
    record(6, ok, f"m=1..10^4: {rep.n_checked} checks, {rep.n_failed} failures, {rep.n_inconclusive} inconclusive")


def test_c07_identities():
    xs = an.IDENTITY_XS
    rep = an.verify_identities(xs)
    ok = len(xs) == 500 and 0.01 < min(xs) and max(xs) < 1e4 and rep.n_failed == 0 and rep.n_checked == 1000
    record(7, ok, f"500 log-spaced points: {rep.n_checked} checks, {rep.n_failed} failures")


def test_c08_closed_vs_series():
    worst = 0.0
    bad = []
    for m in range(1, 101):
        h = h_series(float(m))
        g = g_series(float(m))
        dh = abs(h.value - h_closed(m)) - (h.err + 1e-9)
        dg = abs(g.value - g_closed(m)) - (g.err + g_closed_err(m) + 1e-9)
        worst = max(worst, dh + 1e-9, dg + 1e-9)
        if dh > 0 or dg > 0:
            bad.append(m)
    record(8, not bad, f"m=1..100: failures {bad}, largest |series - closed| minus err {worst:.3g}")


def test_c09_limits():
    x = 1e4
    p = eval_point(x)
    checks = {
        "x^2 G''": (abs(x * x * p.Gpp.value + 1 / (2 * math.e)), 0.01),
        "a(x)": (abs(p.a_of_x.value - 0.5), 0.05),
        "x^2 f''": (abs(x * x * p.fpp.value + 1), 0.01),
        "G'": (abs(p.Gp.value - 1 / math.e), 1e-3),
    }
    ok = all(d <= tol for d, tol in checks.values())
    record(9, ok, ", ".join(f"{k}: {d:.3g} <= {tol}" for k, (d, tol) in checks.items()))


def test_c10_finite_differences():
    d = 1e-5
    worst1 = worst2 = 0.0
    for x in (1.0, 2.0, 5.0, 10.0, 50.0):
        p = eval_point(x)
        a, b, c = eval_point(x + d).G.value, eval_point(x - d).G.value, p.G.value
        worst1 = max(worst1, abs((a - b) / (2 * d) - p.Gp.value))
        worst2 = max(worst2, abs((a - 2 * c + b) / d**2 - p.Gpp.value))
    record(10, worst1 <= 1e-6 and worst2 <= 1e-4, f"max |G' diff| {worst1:.3g} (tol 1e-6), max |G'' diff| {worst2:.3g} (tol 1e-4)")


def test_c11_bounds():
    rep = an.verify_bounds()
    ok = rep.n_failed == 0 and rep.n_inconclusive == 0
    record(11, ok, f"{rep.n_checked} checks on 2^k/4, k=0..18: {rep.n_failed} failed, {rep.n_inconclusive} inconclusive, worst margin {rep.worst_margin:.3g}")


def _brute_exact(a):
    n, p, f = 1, a, 1
    while p > f:
        n += 1
        p *= a
        f *= n
    return n


def _brute_log(a):
    la, n, lf = math.log(a), 1, 0.0
    while n * la > lf:
        n += 1
        lf += math.log(n)
    return n


def test_c12_n_a_oracle():
    rng = random.Random(2024)
    bad = []
    for i in range(200):
        if i % 2 == 0:
            text = f"{rng.uniform(1.0, 50.0):.6f}"
            if Fraction(text) <= 1:
                text = "1.000001"
            want = _brute_exact(Fraction(text))
            got = n_a(text).n_a
        else:
            a = math.sqrt(rng.uniform(1.0, 2500.0))
            a = max(a, 1.0 + 1e-6)
            want = _brute_log(a)
            got = n_a(a).n_a
        if got != want:
            bad.append((i, got, want))
    record(12, not bad, f"200 random a in (1, 50): mismatches {bad}")


def test_c13_lemmas():
    rng = random.Random(99)
    sums_ok = 0
    for _ in range(100):
        m = rng.randint(1, 30)
        N = rng.randint(m, 200)
        seq = [rng.gauss(0, 10) for _ in range(N + m)]
        sums_ok += lemma_sums_check(seq, m, N)
    simp = [m for m in range(0, 1001) if not lemma_simplify_check(m, 1e-10)]
    record(13, sums_ok == 100 and not simp, f"shifted sums {sums_ok}/100, simplification failures at m={simp[:5]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
