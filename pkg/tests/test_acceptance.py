"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import math
import time
from fractions import Fraction
from functools import lru_cache

from binocert.binom import GeneralWindow, SymmetricWindow, pmf, window_prob_sym
from binocert.certify_gen import (
    check_general_sandwich,
    left_atoms,
    reflect_left_window,
    right_atoms,
    symmetric_discrepancy,
)
from binocert.certify_sym import (
    certify_unified,
    check_pi_bounds_even,
    check_pi_bounds_odd,
    check_window_sandwich_even,
    check_window_sandwich_odd,
    nonasymptotic_bound,
)
from binocert.exactnum import Precision
from binocert.gauss import gauss_integral
from binocert.lemmas import run_lemma_suite
from binocert.oracle import float_gauss, float_window_sym
from binocert.report import Verdict
from binocert.wallis import (
    PiMultiple,
    central_sandwich_even,
    central_sandwich_odd,
    check_product_identity,
    wallis,
    wallis_closed_form,
    wallis_ratio_bracket,
)
from oracles import gauss_simpson

BAD = (Verdict.VIOLATED, Verdict.UNDECIDED)


def line(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}: {detail}")


def bad_claims(report) -> list[str]:
    return [f"{c.name}={c.verdict}" for c in report.claims if c.verdict in BAD]


def test_criterion_1_lemma_suite():
    start = time.perf_counter()
    results = run_lemma_suite()
    elapsed = time.perf_counter() - start
    sizes = {name: res.points for name, res in results.items()}
    ok = all(res.holds for res in results.values()) and min(sizes.values()) >= 2000 and elapsed < 10
    line(1, ok, f"points {sizes}, all Hold={all(r.holds for r in results.values())}, {elapsed:.2f}s")
    assert set(sizes) == {"bce", "ine1", "ine2", "lowi"}
    assert min(sizes.values()) >= 2000
    for name, res in results.items():
        assert res.holds, (name, res.failures[:5])
    assert elapsed < 10


def test_criterion_2_wallis_suite():
    start = time.perf_counter()
    prec = Precision(Fraction(1, 10**30))
    failures = []
    assert wallis(1) * wallis(0) == PiMultiple(Fraction(1, 2), 1)
    for n in range(2, 501):
        if n * wallis(n) != (n - 1) * wallis(n - 2) or wallis(n) != wallis_closed_form(n):
            failures.append(("recurrence", n))
    for n in range(1, 501):
        ok, product = check_product_identity(n)
        if not ok or product != PiMultiple(Fraction(1, 2), 1):
            failures.append(("identity", n))
    for n in range(1, 301):
        for report in (central_sandwich_even(n, prec), central_sandwich_odd(n, prec)):
            if report.overall is not Verdict.HOLDS:
                failures.append(("sandwich", n, bad_claims(report)))
    for n in range(1, 201):
        if wallis_ratio_bracket(n, prec).overall is not Verdict.HOLDS:
            failures.append(("bracket", n))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    line(2, ok, f"{len(failures)} failures, {elapsed:.2f}s")
    assert not failures, failures[:5]
    assert elapsed < 60


def test_criterion_3_product_bounds():
    start = time.perf_counter()
    failures = []
    checked = 0
    for n in range(2, 201):
        report = check_pi_bounds_even(n, n)
        checked += len(report.claims)
        failures += [(n, b) for b in bad_claims(report)]
        # the lower bound must have been asserted for every 1 <= j <= n/2
        lowers = [c for c in report.claims if c.name.startswith("linos[") and c.verdict is Verdict.HOLDS]
        if len(lowers) != n // 2 + 1:
            failures.append((n, "linos coverage"))
    for n in range(1, 201):
        report = check_pi_bounds_odd(n, n)
        checked += len(report.claims)
        failures += [(n, b) for b in bad_claims(report)]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    line(3, ok, f"{checked} claims, {len(failures)} not Holds, {elapsed:.2f}s")
    assert not failures, failures[:10]
    assert elapsed < 300


def test_criterion_4_window_sandwiches():
    xs = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
    violated = []
    undecided = []
    instances = 0
    for n in range(1, 201):
        for x in xs:
            for report in (check_window_sandwich_even(n, x), check_window_sandwich_odd(n, x)):
                if report.overall is Verdict.SKIPPED:
                    continue
                instances += 1
                for c in report.claims:
                    if c.verdict is Verdict.VIOLATED:
                        violated.append((report.instance["parity"], n, str(x), c.name))
                    elif c.verdict is Verdict.UNDECIDED:
                        undecided.append((report.instance["parity"], n, str(x), c.name))
    names = sorted({v[3] for v in violated})
    sample = ", ".join(f"{p} n={n} x={x}" for p, n, x, _ in violated[:6])
    ok = not violated and not undecided
    line(4, ok, f"{instances} gated instances, {len(violated)} Violated {names} e.g. {sample}; "
                f"{len(undecided)} Undecided")
    assert not violated, f"{len(violated)} Violated claims, e.g. {violated[:6]}"
    assert not undecided


@lru_cache(maxsize=1)
def unified_grid() -> dict[tuple[int, Fraction], object]:
    out = {}
    for x in (Fraction(1, 2), Fraction(1), Fraction(2)):
        for n_total in range(1, 2001):
            out[(n_total, x)] = certify_unified(n_total, x)
    return out


def test_criterion_5_nonasymptotic():
    start = time.perf_counter()
    grid = unified_grid()
    failures = []
    certified = {"gluvex": 0, "luvex": 0, "siluvex": 0}
    for (n_total, x), report in grid.items():
        for c in report.claims:
            if c.verdict is Verdict.HOLDS:
                certified[c.name] += 1
            elif c.verdict is not Verdict.SKIPPED:
                failures.append((n_total, str(x), c.name, str(c.verdict)))
        # gate bookkeeping: gluvex is asserted exactly when N >= max(4x^2, 2)
        gated = n_total >= max(4 * x * x, 2)
        if gated != (report.claim("gluvex").verdict is not Verdict.SKIPPED):
            failures.append((n_total, str(x), "gate"))
    prob = window_prob_sym(SymmetricWindow(8, 1))
    diff = abs(prob - gauss_integral(1).enclosure)
    bound = nonasymptotic_bound(8, 1)
    spot = (prob == Fraction(182, 256) and abs(float(diff.mid) - 0.0283) < 5e-4
            and diff.hi <= bound.lo and abs(float(bound.mid) - (math.exp(12 / math.sqrt(8)) - 1)) < 1e-9)
    # float screen of the same grid: every bound has room to spare in floats too
    screen = [
        (n, float(x)) for (n, x) in grid if n >= max(4 * x * x, 2)
        and abs(float_window_sym(n, float(x)) - float_gauss(float(x))) > math.exp((4 * float(x) ** 3 + 8) / math.sqrt(n)) - 1
    ]
    elapsed = time.perf_counter() - start
    ok = not failures and spot and not screen and elapsed < 600
    line(5, ok, f"Holds counts {certified}, {len(failures)} failures, spot={spot}, {elapsed:.1f}s")
    assert spot
    assert not failures, failures[:10]
    assert not screen
    assert elapsed < 600


def test_criterion_6_general_p():
    ps = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10))
    xs = (Fraction(1, 2), Fraction(1), Fraction(2))
    failures = []
    sandwiches = 0
    for p in ps:
        for n in range(1, 201):
            for x in xs:
                win = GeneralWindow(n, p, x)
                report = check_general_sandwich(win)
                if report.claim("bwex").verdict is not Verdict.HOLDS:
                    failures.append(("bwex", n, str(p), str(x)))
                failures += [(n, str(p), str(x), b) for b in bad_claims(report)]
                sandwiches += sum(report.claim(k).verdict is Verdict.HOLDS for k in ("azoex", "bzoex"))
                if not reflect_left_window(win).agree:
                    failures.append(("reflection", n, str(p), str(x)))
    # p = 1/2: left and right windows compose to the symmetric window exactly for even n,
    # and differ by at most two boundary atoms for odd n
    for n in range(1, 201):
        for x in xs:
            union, sym, diff = symmetric_discrepancy(n, x)
            if len(diff) > 2 or (n % 2 == 0 and union != sym):
                failures.append(("p=1/2", n, str(x), sorted(diff)))
            if n % 2 == 1:
                half = Fraction(1, 2)
                win = GeneralWindow(n, half, x)
                signed = sum((pmf(n, half, k) if k in set(_union_atoms(win)) else -pmf(n, half, k)) for k in diff)
                if union - sym != signed:
                    failures.append(("p=1/2 accounting", n, str(x)))
    ok = not failures
    line(6, ok, f"{sandwiches} sandwich claims Hold, {len(failures)} failures")
    assert not failures, failures[:10]


def _union_atoms(win: GeneralWindow) -> list[int]:
    return left_atoms(win) + right_atoms(win)


def test_criterion_7_convergence():
    grid = unified_grid()
    one = Fraction(1)
    failures = []
    bounds = []
    for n_total in range(4, 2001):
        claim = grid[(n_total, one)].claim("gluvex")
        if claim.verdict is not Verdict.HOLDS:
            failures.append(n_total)
        bounds.append(claim.rhs)
    # the certified bound decreases strictly with n
    monotone = all(b.lo < a.hi and b.hi < a.lo for a, b in zip(bounds, bounds[1:]))
    float_err = abs(float_window_sym(2000, 1.0) - float_gauss(1.0))
    ok = not failures and monotone and float_err < 0.02
    line(7, ok, f"{len(failures)} gated n not Holds, bound decreasing={monotone}, float error at n=2000 {float_err:.5f}")
    assert not failures, failures[:10]
    assert monotone
    assert float_err < 0.02


def test_criterion_8_quadrature():
    gauss_integral.cache_clear()
    prec = Precision(Fraction(1, 10**9))
    results = []
    for x, ref in ((1, Fraction(682689492137, 10**12)), (2, Fraction(954499736104, 10**12))):
        start = time.perf_counter()
        enc = gauss_integral(x, prec).enclosure
        elapsed = time.perf_counter() - start
        # the 12-digit reference is rounded, so it stands for [ref - 5e-13, ref + 5e-13]
        half_ulp = Fraction(5, 10**13)
        meets = enc.lo <= ref + half_ulp and ref - half_ulp <= enc.hi
        lo, hi = gauss_simpson(float(x))
        # both are certified enclosures of the same number, so they must meet
        inside_oracle = float(enc.lo) <= hi and lo <= float(enc.hi)
        results.append((x, enc.width <= Fraction(1, 10**9), meets, inside_oracle, elapsed))
    ok = all(w and m and o and t < 5 for _, w, m, o, t in results)
    line(8, ok, "; ".join(f"I({x}) width-ok={w} ref={m} oracle={o} {t*1000:.1f}ms" for x, w, m, o, t in results))
    for _, w, m, o, t in results:
        assert w and m and o and t < 5
