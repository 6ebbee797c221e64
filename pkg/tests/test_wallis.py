from __future__ import annotations

import math
from fractions import Fraction

import pytest

from binocert.report import Verdict
from binocert.wallis import (
    PiMultiple,
    central_sandwich_even,
    central_sandwich_odd,
    check_product_identity,
    pmf_identities,
    wallis,
    wallis_closed_form,
    wallis_le,
    wallis_ratio_bracket,
)

HALF_PI = PiMultiple(Fraction(1, 2), 1)


def _brackets(enc, value: float) -> bool:
    # claims stop refining once decided, so the stored enclosure can be coarse
    return float(enc.lo) - 1e-15 <= value <= float(enc.hi) + 1e-15 and enc.width < Fraction(1, 10**6)


def test_seeds_and_first_steps():
    assert wallis(0) == HALF_PI
    assert wallis(1) == PiMultiple(1, 0)
    assert wallis(2) == PiMultiple(Fraction(1, 4), 1)
    assert wallis(3) == PiMultiple(Fraction(2, 3), 0)
    assert str(wallis(2)) == "1/4*pi"


def test_recurrence_and_closed_form_up_to_500():
    for n in range(2, 501):
        assert n * wallis(n) == (n - 1) * wallis(n - 2)
        assert wallis(n) == wallis_closed_form(n)


def test_product_identity_up_to_500():
    assert check_product_identity(1) == (True, HALF_PI)
    assert check_product_identity(2)[0]
    for n in range(1, 501):
        ok, product = check_product_identity(n)
        assert ok and product == HALF_PI


def test_pmf_identities():
    for n in range(0, 60):
        assert pmf_identities(n) == (True, True)


def test_even_sandwich_examples():
    r1 = central_sandwich_even(1)
    assert r1.overall is Verdict.HOLDS
    # (3/2) pi (1/4) = 3 pi / 8
    assert _brackets(r1.claim("cwdn.lower").rhs, 3 * math.pi / 8)
    r4 = central_sandwich_even(4)
    assert r4.overall is Verdict.HOLDS
    # (9/2) pi (70/256)^2, recomputed in floats
    assert _brackets(r4.claim("cwdn.upper").lhs, 4.5 * math.pi * (70 / 256) ** 2)
    assert Fraction(10569, 10000) < r4.claim("cwdn.upper").lhs.lo < Fraction(9, 8)


def test_odd_sandwich_examples():
    for n in (1, 2, 50):
        assert central_sandwich_odd(n).overall is Verdict.HOLDS
    r = central_sandwich_odd(1)
    assert _brackets(r.claim("dwdn.upper").lhs, math.pi * (3 / 8) ** 2)


def test_ratio_bracket_examples():
    r = wallis_ratio_bracket(1)
    assert r.instance["ratio"] == PiMultiple(Fraction(3, 8), 1)
    assert r.overall is Verdict.HOLDS
    assert wallis_ratio_bracket(10).overall is Verdict.HOLDS


def test_sandwiches_hold_on_grid():
    for n in range(1, 301):
        assert central_sandwich_even(n).overall is Verdict.HOLDS
        assert central_sandwich_odd(n).overall is Verdict.HOLDS
    for n in range(1, 201):
        assert wallis_ratio_bracket(n).overall is Verdict.HOLDS


def test_wallis_sequence_decreasing():
    for n in range(0, 201):
        assert wallis_le(wallis(n + 1), wallis(n)).verdict is Verdict.HOLDS


def test_pi_multiple_enclosure_and_errors():
    e = PiMultiple(Fraction(1, 2), -1).enclose()
    assert abs(float(e.mid) - 0.15915494309189535) < 1e-15
    with pytest.raises(ValueError):
        wallis(-1)
    with pytest.raises(ValueError):
        check_product_identity(0)
