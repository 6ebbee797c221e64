"""Double-precision reference values, independent of the exact code paths.

The pmf goes through ``math.lgamma``, the Gaussian mass through
``math.erf``.  These are cross-checks and pre-screens only; no verdict
is ever taken from them.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactnum import RationalLike

MAX_N = 10**6


def _guard(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise OverflowError(f"float oracle limited to 0 <= n <= {MAX_N}, got {n}")


def float_pmf(n: int, p: float, k: int) -> float:
    _guard(n)
    if not 0 <= k <= n:
        return 0.0
    q = 1.0 - p
    log = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    log += k * math.log(p) + (n - k) * math.log(q)
    return math.exp(log)


def float_window_sym(n: int, x: float) -> float:
    """P(|S_n - n/2| < x sqrt(n)/2), S_n ~ B(n, 1/2)."""
    _guard(n)
    half = x * math.sqrt(n) / 2
    return math.fsum(float_pmf(n, 0.5, k) for k in range(n + 1) if abs(k - n / 2) < half)


def float_window_gen(n: int, p: float, x: float) -> float:
    """P(m <= S_n < m + x sqrt(npq)) with m = floor((n+1)p)."""
    _guard(n)
    m = math.floor((n + 1) * p)
    width = x * math.sqrt(n * p * (1 - p))
    return math.fsum(float_pmf(n, p, k) for k in range(m, n + 1) if k - m < width)


def float_gauss(x: float) -> float:
    """I(x) = erf(x / sqrt 2)."""
    return math.erf(x / math.sqrt(2))


def float_oracle(n: int, p: RationalLike | float, k: int | None = None, x: RationalLike | float | None = None) -> float:
    """pmf at k, or the window probability at x (symmetric window when p = 1/2)."""
    if (k is None) == (x is None):
        raise ValueError("give exactly one of k or x")
    pf = float(p)
    if k is not None:
        return float_pmf(n, pf, k)
    if Fraction(p) == Fraction(1, 2):
        return float_window_sym(n, float(x))
    return float_window_gen(n, pf, float(x))
