"""Exact rationals and certified enclosures of exp, sqrt and pi.

Every transcendental quantity in the package is carried as an
:class:`Enclosure`, a closed interval with rational endpoints that is
guaranteed to contain the real value.  No floating point is used here.
Bounds for exp and pi are computed in fixed point (integers scaled by a
power of two) with explicit directed rounding, then returned as exact
``Fraction`` endpoints.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


class Order(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    OVERLAPPING = "Overlapping"


@dataclass(frozen=True)
class Precision:
    """Absolute target width for an enclosure and a cap on refinement rounds."""

    target_width: Fraction = Fraction(1, 10**30)
    max_refinements: int = 6

    def __post_init__(self) -> None:
        object.__setattr__(self, "target_width", Fraction(self.target_width))
        if self.target_width <= 0:
            raise ValueError("target_width must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")

    @classmethod
    def from_bits(cls, bits: int, max_refinements: int = 6) -> Precision:
        return cls(Fraction(1, 1 << bits), max_refinements)

    @property
    def bits(self) -> int:
        """Smallest B with 2**-B <= target_width."""
        w = self.target_width
        need = -((-w.denominator) // w.numerator)  # ceil(1/w)
        return max((need - 1).bit_length(), 1)


DEFAULT_PRECISION = Precision()


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] known to contain some real number."""

    lo: Fraction
    hi: Fraction
    exhausted: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v: RationalLike) -> Enclosure:
        v = Fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, v: RationalLike | Enclosure) -> bool:
        if isinstance(v, Enclosure):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= v <= self.hi

    def round_out(self, bits: int) -> Enclosure:
        """Widen outward to endpoints with denominator 2**bits."""
        if self.is_exact and self.lo.denominator <= (1 << bits):
            return self
        s = 1 << bits
        lo = Fraction((self.lo.numerator * s) // self.lo.denominator, s)
        hi = Fraction(-((-self.hi.numerator * s) // self.hi.denominator), s)
        return Enclosure(lo, hi, self.exhausted)

    def intersect(self, other: Enclosure) -> Enclosure:
        return Enclosure(max(self.lo, other.lo), min(self.hi, other.hi),
                         self.exhausted and other.exhausted)

    def __abs__(self) -> Enclosure:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi), self.exhausted)

    def __neg__(self) -> Enclosure:
        return Enclosure(-self.hi, -self.lo, self.exhausted)

    def __add__(self, other: RationalLike | Enclosure) -> Enclosure:
        o = _as_enclosure(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi,
                         self.exhausted or o.exhausted)

    __radd__ = __add__

    def __sub__(self, other: RationalLike | Enclosure) -> Enclosure:
        o = _as_enclosure(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo,
                         self.exhausted or o.exhausted)

    def __rsub__(self, other: RationalLike) -> Enclosure:
        return _as_enclosure(other) - self

    def __mul__(self, other: RationalLike | Enclosure) -> Enclosure:
        o = _as_enclosure(other)
        if self.lo >= 0 and o.lo >= 0:
            return Enclosure(self.lo * o.lo, self.hi * o.hi,
                             self.exhausted or o.exhausted)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(p), max(p), self.exhausted or o.exhausted)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike | Enclosure) -> Enclosure:
        o = _as_enclosure(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        return self * Enclosure(1 / o.hi, 1 / o.lo, o.exhausted)

    def __rtruediv__(self, other: RationalLike) -> Enclosure:
        return _as_enclosure(other) / self

    def __pow__(self, k: int) -> Enclosure:
        if k < 0:
            raise ValueError("negative powers are not supported")
        if self.lo >= 0:
            return Enclosure(self.lo**k, self.hi**k, self.exhausted)
        out = Enclosure.exact(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _as_enclosure(v: RationalLike | Enclosure) -> Enclosure:
    if isinstance(v, Enclosure):
        return v
    return Enclosure.exact(v)


def cmp_certified(a: RationalLike | Enclosure, b: RationalLike | Enclosure) -> Order:
    """Order two enclosures only when they are disjoint."""
    a, b = _as_enclosure(a), _as_enclosure(b)
    if a.hi < b.lo:
        return Order.LESS
    if a.lo > b.hi:
        return Order.GREATER
    return Order.OVERLAPPING


# --------------------------------------------------------------------------
# exp
# --------------------------------------------------------------------------

def _exp_fixed(a: int, b: int, k: int, w: int) -> tuple[int, int, int]:
    """Bounds L <= 2**w * exp(a / (b * 2**k)) <= H, with 0 <= a/b/2**k <= 1/2.

    Returns (L, H, taylor_terms).
    """
    one = 1 << w
    den = b << k
    lo_sum = hi_sum = one
    t_lo = t_hi = one
    i = 0
    while True:
        i += 1
        t_lo = (t_lo * a) // (den * i)
        t_hi = -((-t_hi * a) // (den * i))
        if t_hi <= 1:
            # Lagrange remainder: exp(xi) r^i / i! <= e^(1/2) t_i < 2 t_i
            hi_sum += 2 * t_hi
            break
        lo_sum += t_lo
        hi_sum += t_hi
    lo, hi = lo_sum, hi_sum
    for _ in range(k):
        lo = (lo * lo) >> w
        hi = -((-hi * hi) >> w)
    return lo, hi, i


def _reduction_steps(a: Fraction) -> int:
    """Smallest k >= 0 with a / 2**k <= 1/2."""
    k = max(a.numerator.bit_length() - a.denominator.bit_length() + 1, 0)
    while a > Fraction(1, 2) * (1 << k):
        k += 1
    while k > 0 and a <= Fraction(1, 2) * (1 << (k - 1)):
        k -= 1
    return k


@lru_cache(maxsize=16384)
def exp_enclose(t: RationalLike, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Certified enclosure of exp(t) for rational t.

    Argument reduction exp(t) = exp(t / 2**k) ** (2**k) with a Taylor
    polynomial plus Lagrange remainder on the reduced argument.  Negative
    arguments go through 1 / exp(|t|), so small results keep relative
    accuracy as well.  The working precision doubles each round until the
    width is at most ``prec.target_width`` and, for t >= -1, the lower end
    is at least 1 + t.  When rounds run out the last enclosure is returned
    with ``exhausted`` set.
    """
    t = Fraction(t)
    if t == 0:
        return Enclosure.exact(1)
    a = abs(t)
    k = _reduction_steps(a)
    target = prec.bits
    # exp(a) <= 2**ceil(3a/2), since 1/ln 2 < 3/2
    mag = -((-3 * a.numerator) // (2 * a.denominator))
    work = target + k + 24 + (mag if t > 0 else 0)
    lo = hi = Fraction(0)
    for _ in range(prec.max_refinements):
        L, H, _ = _exp_fixed(a.numerator, a.denominator, k, work)
        if t > 0:
            lo, hi = Fraction(L, 1 << work), Fraction(H, 1 << work)
        else:
            lo, hi = Fraction(1 << work, H), Fraction(1 << work, L)
        if hi - lo <= prec.target_width and (t < -1 or lo >= 1 + t):
            return Enclosure(lo, hi)
        work *= 2
    return Enclosure(lo, hi, exhausted=True)


def exp_of(e: Enclosure, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """exp over an enclosure, using monotonicity."""
    if e.is_exact:
        return exp_enclose(e.lo, prec)
    lo = exp_enclose(e.lo, prec)
    hi = exp_enclose(e.hi, prec)
    return Enclosure(lo.lo, hi.hi, lo.exhausted or hi.exhausted or e.exhausted)


# --------------------------------------------------------------------------
# sqrt
# --------------------------------------------------------------------------

def _exact_sqrt(t: Fraction) -> Fraction | None:
    rn, rd = math.isqrt(t.numerator), math.isqrt(t.denominator)
    if rn * rn == t.numerator and rd * rd == t.denominator:
        return Fraction(rn, rd)
    return None


@lru_cache(maxsize=16384)
def sqrt_enclose(t: RationalLike, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Certified enclosure of sqrt(t); exact when t is a rational square."""
    t = Fraction(t)
    if t < 0:
        raise ValueError(f"sqrt of negative number {t}")
    r = _exact_sqrt(t)
    if r is not None:
        return Enclosure.exact(r)
    w = prec.bits + 2
    s = math.isqrt((t.numerator << (2 * w)) // t.denominator)
    return Enclosure(Fraction(s, 1 << w), Fraction(s + 1, 1 << w))


def sqrt_of(e: Enclosure, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    if e.lo < 0:
        raise ValueError("sqrt of enclosure reaching below zero")
    if e.is_exact:
        return sqrt_enclose(e.lo, prec)
    return Enclosure(sqrt_enclose(e.lo, prec).lo, sqrt_enclose(e.hi, prec).hi,
                     e.exhausted)


# --------------------------------------------------------------------------
# pi
# --------------------------------------------------------------------------

# Archimedes' bracket, refined below.
_PI_BRACKET = Enclosure(Fraction(223, 71), Fraction(22, 7))


def _arctan_inv(x: int, w: int) -> tuple[int, int]:
    """Bounds (L, H) on 2**w * arctan(1/x) for integer x >= 2.

    The alternating series has decreasing terms, so partial sums ending on
    a subtracted term are lower bounds and those ending on an added term
    are upper bounds.
    """
    one = 1 << w
    x2 = x * x
    lo = hi = 0
    i = 0
    power = x
    while True:
        d = (2 * i + 1) * power
        t_floor = one // d
        t_ceil = -(-one // d)
        if i % 2 == 0:
            lo += t_floor
            hi += t_ceil
        else:
            lo -= t_ceil
            hi -= t_floor
        if t_ceil <= 1 and i % 2 == 1:
            # hi currently ends on a subtraction: add the next term back
            hi += -(-one // ((2 * i + 3) * power * x2))
            return lo, hi
        i += 1
        power *= x2


@lru_cache(maxsize=64)
def pi_enclose(prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Certified enclosure of pi from Machin's formula.

    pi = 16 arctan(1/5) - 4 arctan(1/239).
    """
    w = prec.bits + 16
    while True:
        a_lo, a_hi = _arctan_inv(5, w)
        b_lo, b_hi = _arctan_inv(239, w)
        s = 1 << w
        e = Enclosure(Fraction(16 * a_lo - 4 * b_hi, s),
                      Fraction(16 * a_hi - 4 * b_lo, s))
        if e.width <= prec.target_width:
            return e.intersect(_PI_BRACKET)
        w += 16
