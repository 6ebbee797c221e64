"""Wallis integrals W_n as exact multiples of pi, and the central-probability
sandwich they give without Stirling's formula.

W_n = integral of sin(t)^n over [0, pi/2].  Even indices are rational
multiples of pi, odd indices are rational, so each value is stored as a
:class:`PiMultiple` and identities are checked symbolically.  Genuine real
comparisons (the brackets below) go through certified pi enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .binom import central_pmf_even, central_pmf_odd
from .exactnum import DEFAULT_PRECISION, Enclosure, Precision, RationalLike, pi_enclose
from .report import CertificateReport, Claim, decide, exact_claim


@dataclass(frozen=True)
class PiMultiple:
    """The real number coeff * pi**pi_power."""

    coeff: Fraction
    pi_power: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def __mul__(self, other: PiMultiple | RationalLike) -> PiMultiple:
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coeff * other.coeff, self.pi_power + other.pi_power)
        return PiMultiple(self.coeff * other, self.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other: PiMultiple | RationalLike) -> PiMultiple:
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coeff / other.coeff, self.pi_power - other.pi_power)
        return PiMultiple(self.coeff / other, self.pi_power)

    def enclose(self, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
        if self.pi_power == 0:
            return Enclosure.exact(self.coeff)
        if self.pi_power < 0:
            return self.coeff / pi_enclose(prec) ** (-self.pi_power)
        return self.coeff * pi_enclose(prec) ** self.pi_power

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coeff)
        power = "" if self.pi_power == 1 else f"^{self.pi_power}"
        return f"{self.coeff}*pi{power}"


WallisValue = PiMultiple


@lru_cache(maxsize=None)
def wallis(n: int) -> PiMultiple:
    """W_n from n W_n = (n - 1) W_{n-2}, W_0 = pi/2, W_1 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return PiMultiple(Fraction(1, 2), 1)
    if n == 1:
        return PiMultiple(Fraction(1), 0)
    # iterate from the seed of matching parity to keep recursion shallow
    w = wallis(n % 2)
    for i in range(2 + n % 2, n + 1, 2):
        w = w * Fraction(i - 1, i)
    return w


def wallis_closed_form(n: int) -> PiMultiple:
    """Double-factorial closed forms for even and odd indices."""
    if n % 2 == 0:
        num = den = 1
        for i in range(1, n, 2):
            num *= i
        for i in range(2, n + 1, 2):
            den *= i
        return PiMultiple(Fraction(num, den) / 2, 1)
    num = den = 1
    for i in range(2, n, 2):
        num *= i
    for i in range(3, n + 1, 2):
        den *= i
    return PiMultiple(Fraction(num, den), 0)


def check_product_identity(n: int) -> tuple[bool, PiMultiple]:
    """n W_n W_{n-1} == pi/2, compared symbolically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    product = n * wallis(n) * wallis(n - 1)
    return product == PiMultiple(Fraction(1, 2), 1), product


def central_sandwich_even(n: int, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """1/(1 + 1/(2n)) <= n pi P(S_2n = n)^2 <= 1, plus the (n + 1/2) form.

    Squared versions of 1/sqrt(1 + 1/(2n)) <= sqrt(n pi) P(S_2n = n) <= 1,
    which keeps every non-pi quantity exact.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c2 = central_pmf_even(n) ** 2
    lo = 1 / (1 + Fraction(1, 2 * n))
    hi = Fraction(1)
    half = n + Fraction(1, 2)
    claims = (
        decide("mwdn.lower", "<=", lambda pr: (lo, n * c2 * pi_enclose(pr)), prec),
        decide("mwdn.upper", "<=", lambda pr: (n * c2 * pi_enclose(pr), hi), prec),
        decide("cwdn.lower", "<=", lambda pr: (1, half * c2 * pi_enclose(pr)), prec),
        decide("cwdn.upper", "<=", lambda pr: (half * c2 * pi_enclose(pr), 1 + Fraction(1, 2 * n)), prec),
    )
    return CertificateReport({"n": n, "bracket_lo": lo, "bracket_hi": hi}, claims)


def central_sandwich_odd(n: int, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """n pi P(S_{2n+1} = n)^2 <= 1 and n pi P^2 (1 + 1/(2n))^3 >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c2 = central_pmf_odd(n) ** 2
    grow = (1 + Fraction(1, 2 * n)) ** 3
    claims = (
        decide("dwdn.upper", "<=", lambda pr: (n * c2 * pi_enclose(pr), 1), prec),
        decide("dwdn.lower", ">=", lambda pr: (n * c2 * grow * pi_enclose(pr), 1), prec),
        exact_claim("odd_central_relation", central_pmf_odd(n), "==",
                    Fraction(2 * n + 1, 2 * n + 2) * central_pmf_even(n)),
    )
    return CertificateReport({"n": n}, claims)


def wallis_ratio_bracket(n: int, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """1 <= W_2n / W_{2n+1} <= 1 + 1/(2n), with the ratio kept as a PiMultiple."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ratio = wallis(2 * n) / wallis(2 * n + 1)
    lo, hi = Fraction(1), 1 + Fraction(1, 2 * n)
    via_pmf = (n + Fraction(1, 2)) * central_pmf_even(n) ** 2
    claims = (
        decide("zwdn.lower", "<=", lambda pr: (lo, ratio.enclose(pr)), prec),
        decide("zwdn.upper", "<=", lambda pr: (ratio.enclose(pr), hi), prec),
        _identity_claim("lwdn", ratio, PiMultiple(via_pmf, 1)),
    )
    return CertificateReport({"n": n, "ratio": ratio, "bracket_lo": lo, "bracket_hi": hi}, claims)


def _identity_claim(name: str, a: PiMultiple, b: PiMultiple) -> Claim:
    if a.pi_power != b.pi_power:
        raise ValueError("identity between different powers of pi")
    return exact_claim(name, a.coeff, "==", b.coeff)


def wallis_le(a: PiMultiple, b: PiMultiple, prec: Precision = DEFAULT_PRECISION) -> Claim:
    """Certified a <= b between two Wallis values."""
    return decide("wrec", "<=", lambda pr: (a.enclose(pr), b.enclose(pr)), prec)


def pmf_identities(n: int) -> tuple[bool, bool]:
    """W_2n = P(S_2n = n) pi/2 and W_{2n+1} = 1/((2n + 1) P(S_2n = n))."""
    c = central_pmf_even(n)
    even_ok = wallis(2 * n) == PiMultiple(c / 2, 1)
    odd_ok = wallis(2 * n + 1) == PiMultiple(1 / ((2 * n + 1) * c), 0)
    return even_ok, odd_ok
