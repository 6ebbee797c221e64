"""Exact binomial probabilities, deviation windows and central-term ratios.

All values are ``Fraction``.  Window boundaries are decided by squared
integer/rational comparisons, so no square root is ever evaluated, and
the strict ``<`` is honoured exactly: an atom sitting on the boundary
(for instance when x**2 * n is a perfect square) is excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import RationalLike


def _check_p(p: Fraction) -> None:
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")


def _check_x(x: Fraction) -> None:
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")


@dataclass(frozen=True)
class SymmetricWindow:
    """The event |S_n - n/2| < x * sqrt(n) / 2 for S_n ~ B(n, 1/2)."""

    n: int
    x: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        _check_x(self.x)

    def contains(self, k: int) -> bool:
        return 0 <= k <= self.n and (2 * k - self.n) ** 2 < self.x**2 * self.n

    def atoms(self) -> range:
        # |2k - n| < x sqrt(n); scan outward from the centre
        lo = hi = self.n // 2
        while lo - 1 >= 0 and self.contains(lo - 1):
            lo -= 1
        while hi + 1 <= self.n and self.contains(hi + 1):
            hi += 1
        if not self.contains(lo):
            # only happens for odd n when even the two central atoms are out
            return range(0)
        return range(lo, hi + 1)


def central_index(n: int, p: RationalLike) -> tuple[int, Fraction]:
    """The unique m = n p + delta with -q < delta <= p, and that delta."""
    p = Fraction(p)
    _check_p(p)
    q = 1 - p
    m = math.floor((n + 1) * p)
    delta = m - n * p
    assert -q < delta <= p
    assert not (-q < delta + 1 <= p) and not (-q < delta - 1 <= p)
    return m, delta


@dataclass(frozen=True)
class GeneralWindow:
    """The right half-window m <= S_n < m + x * sqrt(n p q), S_n ~ B(n, p)."""

    n: int
    p: Fraction
    x: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "x", Fraction(self.x))
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        _check_p(self.p)
        _check_x(self.x)

    @property
    def q(self) -> Fraction:
        return 1 - self.p

    @property
    def npq(self) -> Fraction:
        return self.n * self.p * self.q

    @property
    def m(self) -> int:
        return central_index(self.n, self.p)[0]

    @property
    def delta(self) -> Fraction:
        return central_index(self.n, self.p)[1]

    def offset_in_window(self, j: int) -> bool:
        """0 <= j < x sqrt(npq)."""
        return j >= 0 and j * j < self.x**2 * self.npq

    def contains(self, k: int) -> bool:
        return 0 <= k <= self.n and self.offset_in_window(k - self.m)

    def offsets(self) -> range:
        """Window offsets j = k - m that land on actual atoms (k <= n)."""
        j = 0
        last = self.n - self.m
        while j + 1 <= last and self.offset_in_window(j + 1):
            j += 1
        return range(0, j + 1)


def pmf(n: int, p: RationalLike, k: int) -> Fraction:
    """P(S_n = k) = C(n, k) p^k (1-p)^(n-k), exactly."""
    p = Fraction(p)
    _check_p(p)
    if not 0 <= k <= n:
        return Fraction(0)
    q = 1 - p
    num = math.comb(n, k) * p.numerator**k * q.numerator ** (n - k)
    return Fraction(num, p.denominator**k * q.denominator ** (n - k))


def central_pmf_even(n: int) -> Fraction:
    """P(S_2n = n) = C(2n, n) / 4^n."""
    return Fraction(math.comb(2 * n, n), 4**n)


def central_pmf_odd(n: int) -> Fraction:
    """P(S_{2n+1} = n) = C(2n+1, n) / 2^(2n+1)."""
    return Fraction(math.comb(2 * n + 1, n), 2 ** (2 * n + 1))


def pi_sym(j: int, n: int) -> Fraction:
    """prod_{1<=l<=j} (n + l - j) / (n + l), the ratio C(2n, n+j) / C(2n, n)."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    value = Fraction(math.prod(range(n - j + 1, n + 1)), math.prod(range(n + 1, n + j + 1)))
    if value != Fraction(math.comb(2 * n, n + j), math.comb(2 * n, n)):
        raise ArithmeticError(f"product/binomial mismatch at j={j}, n={n}")
    return value


def pi_sym_odd(j: int, n: int) -> Fraction:
    """prod_{1<=l<=j} (n + l - j) / (n + l + 1), via (n+1)/(n+j+1) * pi_sym(j, n)."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    value = Fraction(n + 1, n + j + 1) * pi_sym(j, n)
    direct = Fraction(math.prod(range(n - j + 1, n + 1)), math.prod(range(n + 2, n + j + 2)))
    if value != direct:
        raise ArithmeticError(f"odd product identity fails at j={j}, n={n}")
    return value


def pi_gen_product(j: int, win: GeneralWindow, form: str = "qent") -> Fraction:
    """The product form of pi(j) for the general window.

    ``form="qent"`` multiplies (n - m - l + 1) p / ((m + l) q); ``form="qrnt"``
    substitutes m = np + delta and multiplies
    (npq - (delta + l - 1) p) / (npq + (delta + l) q).
    """
    n, p, q = win.n, win.p, win.q
    m, delta = central_index(n, p)
    out = Fraction(1)
    if form == "qent":
        for l in range(1, j + 1):
            out *= Fraction((n - m - l + 1) * p, (m + l) * q)
    elif form == "qrnt":
        npq = n * p * q
        for l in range(1, j + 1):
            out *= (npq - (delta + l - 1) * p) / (npq + (delta + l) * q)
    else:
        raise ValueError(f"unknown form {form!r}")
    return out


def pi_gen(j: int, win: GeneralWindow) -> Fraction:
    """pi(j) = P(S_n = m + j) / P(S_n = m), checked against the product form."""
    m = win.m
    if j < 0 or m + j > win.n:
        raise ValueError(f"need 0 <= j <= n - m, got j={j}, m={m}, n={win.n}")
    value = pmf(win.n, win.p, m + j) / pmf(win.n, win.p, m)
    if value != pi_gen_product(j, win):
        raise ArithmeticError(f"pmf ratio and product disagree at j={j}")
    return value


def _window_sym_direct(win: SymmetricWindow) -> Fraction:
    n = win.n
    atoms = win.atoms()
    if not atoms:
        return Fraction(0)
    # walk C(n, k) upward from the left edge; the last value is checked against comb
    term = math.comb(n, atoms[0])
    total = 0
    for k in atoms:
        total += term
        last = term
        term = term * (n - k) // (k + 1)
    if last != math.comb(n, atoms[-1]):
        raise ArithmeticError(f"binomial recurrence drifted for n={n}")
    return Fraction(total, 2**n)


def _window_sym_decomposed(win: SymmetricWindow) -> Fraction:
    n, x = win.n, win.x
    if n % 2 == 0:
        h = n // 2
        acc = Fraction(1)
        ratio = Fraction(1)
        j = 1
        # j < x sqrt(h / 2)  <=>  2 j^2 < x^2 h
        while j <= h and 2 * j * j < x * x * h:
            ratio *= Fraction(h - j + 1, h + j)
            acc += 2 * ratio
            j += 1
        return central_pmf_even(h) * acc
    h = (n - 1) // 2
    acc = Fraction(0)
    ratio = Fraction(1)
    j = 0
    # j + 1/2 < (x/2) sqrt(2h + 1)  <=>  (2j + 1)^2 < x^2 (2h + 1)
    while j <= h and (2 * j + 1) ** 2 < x * x * (2 * h + 1):
        if j > 0:
            ratio *= Fraction(h - j + 1, h + j + 1)
        acc += ratio
        j += 1
    return 2 * central_pmf_odd(h) * acc


@lru_cache(maxsize=8192)
def window_prob_sym(win: SymmetricWindow) -> Fraction:
    """P(|S_n - n/2| < x sqrt(n)/2), by summation and by the central-term product."""
    direct = _window_sym_direct(win)
    decomposed = _window_sym_decomposed(win)
    if direct != decomposed:
        raise ArithmeticError(f"window decomposition mismatch for {win}")
    return direct


def window_prob_gen(win: GeneralWindow) -> Fraction:
    """P(m <= S_n < m + x sqrt(npq)), by summation and by P(S_n = m) * sum pi(j)."""
    n, p = win.n, win.p
    m = win.m
    offsets = win.offsets()
    direct = sum((pmf(n, p, m + j) for j in offsets), Fraction(0))
    q = win.q
    acc = Fraction(0)
    ratio = Fraction(1)
    for j in offsets:
        if j > 0:
            ratio *= Fraction((n - m - j + 1) * p, (m + j) * q)
        acc += ratio
    decomposed = pmf(n, p, m) * acc
    if direct != decomposed:
        raise ArithmeticError(f"window decomposition mismatch for {win}")
    return direct
