from __future__ import annotations

import math
from fractions import Fraction

import pytest

from binocert.binom import SymmetricWindow, window_prob_sym
from binocert.exactnum import Enclosure, Precision
from binocert.report import Verdict, decide
from binocert.certify_sym import (
    check_pi_bounds_even,
    check_pi_bounds_odd,
    check_window_sandwich_even,
    check_window_sandwich_odd,
    certify_nonasymptotic_even,
    certify_nonasymptotic_odd,
    certify_unified,
    concavity_gate,
    interval_difference,
    nonasymptotic_bound,
)

HALF, ONE, THREE_HALVES, TWO = Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)


def verdicts(report) -> dict[str, Verdict]:
    return {c.name: c.verdict for c in report.claims}


def test_pi_bounds_even_examples():
    r = check_pi_bounds_even(2, 1)
    assert r.overall is Verdict.HOLDS
    # exp(-3/4) ~ 0.472 <= 2/3 <= exp(-3/8) ~ 0.687
    assert float(r.claim("linos[1]").rhs.hi) < 0.4724 and float(r.claim("hinos[1]").rhs.lo) > 0.6872
    assert check_pi_bounds_even(100, 50).overall is Verdict.HOLDS
    j0 = check_pi_bounds_even(5, 0)
    assert j0.claim("hinos[0]").verdict is Verdict.HOLDS and j0.claim("linos[0]").verdict is Verdict.HOLDS


def test_pi_bounds_even_skips_lower_past_half():
    r = check_pi_bounds_even(6, 6)
    v = verdicts(r)
    assert all(v[f"hinos[{j}]"] is Verdict.HOLDS for j in range(7))
    assert v["linos[3]"] is Verdict.HOLDS and v["linos[4]"] is Verdict.SKIPPED
    with pytest.raises(ValueError):
        check_pi_bounds_even(6, 7)


def test_pi_bounds_odd():
    assert check_pi_bounds_odd(1, 1).overall is Verdict.HOLDS
    assert check_pi_bounds_odd(60, 60).count(Verdict.VIOLATED) == 0
    with pytest.raises(ValueError):
        check_pi_bounds_odd(3, 0)


def test_even_sandwich_examples():
    r = check_window_sandwich_even(4, ONE)
    assert r.instance["window_prob"] == Fraction(182, 256)
    assert r.overall is Verdict.HOLDS
    assert check_window_sandwich_even(2, ONE).claim("fvex").verdict is Verdict.HOLDS
    gated = check_window_sandwich_even(3, TWO)
    assert gated.claim("uwex").verdict is Verdict.SKIPPED
    assert gated.claim("fvex").verdict is Verdict.SKIPPED


@pytest.mark.parametrize("x", [HALF, ONE, TWO])
def test_upper_chain_weakens_step_by_step(x):
    # P <= tvex <= fwex <= wvex: each substitution gives a larger bound
    for n in range(1, 101):
        r = check_window_sandwich_even(n, x)
        if n < x * x:
            continue
        for name in ("fnst.range", "fnst.cube", "tvex", "fwex.sum", "fwex.integral", "uwex"):
            assert r.claim(name).verdict is Verdict.HOLDS, (n, x, name)
        tv, fw = r.claim("fwex.sum").lhs, r.claim("fwex.sum").rhs
        assert tv.lo <= fw.hi


def test_odd_sandwich_examples():
    r = check_window_sandwich_odd(4, ONE)
    assert r.instance["window_prob"] == Fraction(252, 512)
    assert r.overall is Verdict.HOLDS
    r1 = check_window_sandwich_odd(1, ONE)
    assert r1.instance["window_prob"] == Fraction(6, 8)
    assert r1.claim("oouwvex.upper").verdict is Verdict.HOLDS
    assert r1.claim("oouwvex.lower").verdict is Verdict.SKIPPED
    assert check_window_sandwich_odd(3, TWO).overall is Verdict.SKIPPED


def test_concavity_gate():
    for n in range(1, 200):
        for x in (HALF, ONE, THREE_HALVES, TWO):
            if n >= x * x:
                x_n = float(x) / 2 * math.sqrt(2 * n + 1) - 0.5
                assert concavity_gate(n, x)
                assert x_n < float(x) * math.sqrt(n / 2)


def _float_odd_sides(n: int, x: float) -> tuple[float, float]:
    """Both sides of the literal odd lower bound, recomputed in floats."""
    total = 2 * n + 1
    inside = [k for k in range(total + 1) if abs(k - total / 2) < x / 2 * math.sqrt(total)]
    prob = sum(math.comb(total, k) for k in inside) / 2**total
    central = math.comb(total, n) / 2**total
    ratio = prob / (math.sqrt(n * math.pi) * central)
    bound = math.exp(-(x**3) / math.sqrt(2 * n)) * math.erf(x / math.sqrt(2))
    return ratio, bound


def test_literal_odd_lower_bound_fails_at_small_x():
    r = check_window_sandwich_odd(10, HALF)
    assert r.claim("oouwvex.lower").verdict is Verdict.VIOLATED
    assert r.claim("oouwvex.lower.sound").verdict is Verdict.HOLDS
    ratio, bound = _float_odd_sides(10, 0.5)
    assert ratio < bound
    assert abs(ratio - 0.3568) < 1e-3 and abs(bound - 0.3724) < 1e-3
    # the certified sides agree with the float recomputation
    c = r.claim("oouwvex.lower")
    assert float(c.lhs.lo) - 1e-12 <= ratio <= float(c.lhs.hi) + 1e-12
    assert float(c.rhs.lo) - 1e-12 <= bound <= float(c.rhs.hi) + 1e-12


def test_odd_lower_bound_holds_for_larger_x_and_sound_form_everywhere():
    for n in range(1, 121):
        for x in (HALF, ONE, THREE_HALVES, TWO):
            r = check_window_sandwich_odd(n, x)
            v = verdicts(r)
            if n < 2 * x * x:
                assert v["oouwvex.lower"] is Verdict.SKIPPED
                continue
            assert v["oouwvex.lower.sound"] is Verdict.HOLDS, (n, x)
            if x >= 1:
                assert v["oouwvex.lower"] is Verdict.HOLDS, (n, x)
            for name, verdict in v.items():
                if name.startswith("ztnos") or name in ("concavs", "oouwvex.upper"):
                    assert verdict is Verdict.HOLDS, (n, x, name)
            # literal claim verdict matches the float recomputation
            ratio, bound = _float_odd_sides(n, float(x))
            if abs(ratio - bound) > 1e-9:
                assert (v["oouwvex.lower"] is Verdict.HOLDS) == (ratio >= bound)


def test_nonasymptotic_even_examples():
    r = certify_nonasymptotic_even(4, ONE)
    assert r.overall is Verdict.HOLDS
    diff = abs(182 / 256 - math.erf(1 / math.sqrt(2)))
    assert abs(diff - 0.0283) < 1e-3
    r200 = certify_nonasymptotic_even(200, ONE)
    assert r200.overall is Verdict.HOLDS
    assert abs(math.exp(3 / math.sqrt(200)) - 1 - 0.236) < 1e-3
    assert certify_nonasymptotic_even(1, ONE).overall is Verdict.SKIPPED


def test_nonasymptotic_odd_examples():
    r = certify_nonasymptotic_odd(2, ONE)
    assert r.instance["window_prob"] == Fraction(20, 32)
    assert r.overall is Verdict.HOLDS
    assert certify_nonasymptotic_odd(50, ONE).overall is Verdict.HOLDS
    assert certify_nonasymptotic_odd(1, ONE).overall is Verdict.SKIPPED


def test_unified_examples():
    r8 = certify_unified(8, ONE)
    assert r8.overall is Verdict.HOLDS and r8.instance["window_prob"] == Fraction(182, 256)
    bound = nonasymptotic_bound(8, ONE)
    assert abs(float(bound.mid) - (math.exp(12 / math.sqrt(8)) - 1)) < 1e-9
    assert abs(float(bound.mid) - 68.6) < 0.1
    r9 = certify_unified(9, ONE)
    assert r9.overall is Verdict.HOLDS and r9.instance["window_prob"] == Fraction(252, 512)
    assert abs(float(nonasymptotic_bound(9, ONE).mid) - 53.6) < 0.1
    assert certify_unified(3, ONE).overall is Verdict.SKIPPED


def test_unified_matches_parity_engines():
    for n_total in range(4, 80):
        sub = certify_unified(n_total, ONE).claims[1]
        assert sub.name == ("luvex" if n_total % 2 == 0 else "siluvex")
        assert sub.verdict in (Verdict.HOLDS, Verdict.SKIPPED)


def test_interval_difference():
    prob, mass = interval_difference(1, 2, 8)
    assert prob == Fraction(56, 256)
    assert abs(float(mass.mid) - 0.2718) < 1e-4
    assert prob == window_prob_sym(SymmetricWindow(8, 2)) - window_prob_sym(SymmetricWindow(8, 1))
    with pytest.raises(ValueError):
        interval_difference(1, 1, 8)
    with pytest.raises(ValueError):
        interval_difference(2, 1, 8)


def test_undecided_only_shrinks_with_precision():
    # a true claim with a 2^-40 margin cannot be separated at 24 bits
    gap = Fraction(1, 2**40)

    def sides(pr: Precision):
        w = pr.target_width
        return Fraction(1, 3), Enclosure(Fraction(1, 3) + gap - w, Fraction(1, 3) + gap + w)

    coarse = decide("tight", "<", sides, Precision.from_bits(24, max_refinements=1))
    fine = decide("tight", "<", sides, Precision.from_bits(48, max_refinements=3))
    assert coarse.verdict is Verdict.UNDECIDED
    assert fine.verdict is Verdict.HOLDS

    reports = [check_window_sandwich_even(n, ONE, Precision.from_bits(24, 1)) for n in range(2, 40)]
    coarse_count = sum(r.count(Verdict.UNDECIDED) for r in reports)
    fine_count = sum(check_window_sandwich_even(n, ONE).count(Verdict.UNDECIDED) for n in range(2, 40))
    assert fine_count <= coarse_count and fine_count == 0
