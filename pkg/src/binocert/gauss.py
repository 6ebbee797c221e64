"""Certified enclosures of Gaussian integrals.

I(x) = integral of exp(-s^2/2) / sqrt(2 pi) over [-x, x].

The main route integrates the power series of exp(-a t^2) term by term.
The resulting series alternates and its terms decrease once
a y^2 (2k+1) / ((k+1)(2k+3)) < 1, so two consecutive partial sums
bracket the integral; every partial sum is an exact rational.

A second, independent route brackets the integrand by step functions on a
uniform partition (valid because it is decreasing on [0, x]).  It is slow
to converge, O(x/N), and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (
    DEFAULT_PRECISION,
    Enclosure,
    Precision,
    RationalLike,
    exp_enclose,
    pi_enclose,
    sqrt_of,
)


@dataclass(frozen=True)
class GaussianIntegral:
    """I(x) as an enclosure, with the number of pieces used to get it.

    ``partitions`` counts series terms for ``method="series"``, step
    partitions for ``method="step"`` and is 0 for the Mills tail bound.
    """

    x: Fraction
    enclosure: Enclosure
    partitions: int
    method: str = "series"


@lru_cache(maxsize=4096)
def half_gauss_series(y: RationalLike, a: RationalLike, prec: Precision = DEFAULT_PRECISION) -> tuple[Enclosure, int]:
    """Enclosure of the integral of exp(-a t^2) over [0, y], y >= 0, a > 0.

    Returns the enclosure and the number of series terms used.
    """
    y, a = Fraction(y), Fraction(a)
    if y < 0 or a <= 0:
        raise ValueError("need y >= 0 and a > 0")
    if y == 0:
        return Enclosure.exact(0), 0
    ay2 = a * y * y
    target = prec.target_width
    # power_k = (a y^2)^k y / k!,   term_k = power_k / (2k + 1)
    power = y
    partial = Fraction(0)
    k = 0
    while True:
        term = power / (2 * k + 1)
        decreasing = ay2 * (2 * k + 1) < (k + 1) * (2 * k + 3)
        if decreasing and term <= target:
            nxt = partial + (term if k % 2 == 0 else -term)
            lo, hi = sorted((partial, nxt))
            bits = prec.bits + 8
            return Enclosure(lo, hi).round_out(bits), k
        partial += term if k % 2 == 0 else -term
        k += 1
        power = power * ay2 / k


@lru_cache(maxsize=256)
def gauss_normalizer(prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of 2 / sqrt(2 pi) = sqrt(2 / pi)."""
    return sqrt_of(2 / pi_enclose(prec), prec)


@lru_cache(maxsize=1024)
def gauss_integral(x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> GaussianIntegral:
    """Certified I(x), refined until its width is at most prec.target_width."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if x >= 8:
        # Mills ratio: 0 <= 1 - I(x) <= sqrt(2/pi) exp(-x^2/2) / x
        tail = (gauss_normalizer(prec) * exp_enclose(-x * x / 2, prec) / x).hi
        if tail <= prec.target_width:
            return GaussianIntegral(x, Enclosure(1 - tail, 1), 0, "tail")
    work = Precision.from_bits(prec.bits + 4)
    enc = Enclosure.exact(0)
    terms = 0
    for _ in range(prec.max_refinements):
        half, terms = half_gauss_series(x, Fraction(1, 2), work)
        enc = (half * gauss_normalizer(work)).intersect(Enclosure(0, 1)).round_out(work.bits + 4)
        if enc.width <= prec.target_width:
            return GaussianIntegral(x, enc, terms)
        work = Precision.from_bits(2 * work.bits)
    return GaussianIntegral(x, Enclosure(enc.lo, enc.hi, exhausted=True), terms)


def gauss_tail_bound(x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> Fraction:
    """A certified upper bound on I(x) that never exceeds 1."""
    return min(gauss_integral(x, prec).enclosure.hi, Fraction(1))


def riemann_bracket(x: RationalLike, partitions: int, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Step-function bracket of the integral of exp(-s^2/2) over [0, x].

    Lower sum uses right endpoints, upper sum left endpoints, each with
    the matching end of the exp enclosure.
    """
    x = Fraction(x)
    if x <= 0 or partitions < 1:
        raise ValueError("need x > 0 and partitions >= 1")
    h = x / partitions
    values = [exp_enclose(-(i * h) ** 2 / 2, prec) for i in range(partitions + 1)]
    lower = sum((v.lo for v in values[1:]), Fraction(0)) * h
    upper = sum((v.hi for v in values[:-1]), Fraction(0)) * h
    return Enclosure(lower, upper)


def gauss_integral_step(x: RationalLike, partitions: int = 64,
                        prec: Precision = DEFAULT_PRECISION) -> GaussianIntegral:
    """I(x) from the step-function bracket, with the certified normalizer."""
    enc = (riemann_bracket(x, partitions, prec) * gauss_normalizer(prec)).intersect(Enclosure(0, 1))
    return GaussianIntegral(Fraction(x), enc, partitions, "step")
