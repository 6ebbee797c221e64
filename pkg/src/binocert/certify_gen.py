"""Certificates for B(n, p) with general p, and the left/right window composition.

The right half-window is m <= S_n < m + x sqrt(npq), where m = floor((n+1)p)
is the central index.  The left half-window is obtained from the flipped
variable n - S_n ~ B(n, q), which has its own central index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binom import (
    GeneralWindow,
    SymmetricWindow,
    central_index,
    pi_gen,
    pi_gen_product,
    pmf,
    window_prob_gen,
    window_prob_sym,
)
from .exactnum import (
    DEFAULT_PRECISION,
    Enclosure,
    Precision,
    exp_enclose,
    exp_of,
    pi_enclose,
    sqrt_enclose,
    sqrt_of,
)
from .gauss import gauss_integral
from .report import CertificateReport, Claim, decide, exact_claim


@dataclass(frozen=True)
class GeneralCertificate(CertificateReport):
    p: Fraction = Fraction(1, 2)
    m: int = 0
    delta: Fraction = Fraction(0)


def _pi_or_zero(win: GeneralWindow, j: int) -> Fraction:
    # pi(j) vanishes once m + j runs past n
    return pi_gen(j, win) if win.m + j <= win.n else Fraction(0)


def check_pi_gen_upper(win: GeneralWindow, j: int, prec: Precision = DEFAULT_PRECISION) -> Claim:
    """pi(j) <= exp(-(j-1)^2/(2(n+1)pq) + j^3/(2 n^2 p^2 q)) for 1 <= j <= (n+1)p.

    At j = 0 the right side is below 1 = pi(0), so j = 0 is Skipped by
    convention rather than asserted.
    """
    name = f"vinos[{j}]"
    n, p, q = win.n, win.p, win.q
    if j == 0:
        return Claim.skipped(name, "<=", "j = 0 not asserted pointwise (bound is below pi(0) = 1)")
    if not 0 < j <= (n + 1) * p:
        return Claim.skipped(name, "<=", f"precondition 0 <= j <= (n+1)p fails for j={j}")
    value = _pi_or_zero(win, j)
    t = -Fraction((j - 1) ** 2) / (2 * (n + 1) * p * q) + Fraction(j**3) / (2 * n * n * p * p * q)
    return decide(name, "<=", lambda pr: (value, exp_enclose(t, pr)), prec)


def check_pi_gen_lower(win: GeneralWindow, j: int, prec: Precision = DEFAULT_PRECISION) -> Claim:
    """pi(j) >= exp(-(j+1)^2/(2npq) - (j+1)^3/(n^2 p q^2)) for 0 <= j <= (n+1)pq/2."""
    name = f"ginos[{j}]"
    n, p, q = win.n, win.p, win.q
    if not 0 <= j <= (n + 1) * p * q / 2:
        return Claim.skipped(name, ">=", f"precondition 0 <= j <= (n+1)pq/2 fails for j={j}")
    value = _pi_or_zero(win, j)
    t = -Fraction((j + 1) ** 2) / (2 * n * p * q) - Fraction((j + 1) ** 3) / (n * n * p * q * q)
    return decide(name, ">=", lambda pr: (value, exp_enclose(t, pr)), prec)


def upper_gate(win: GeneralWindow) -> bool:
    """n >= (q/p) x^2."""
    return win.n * win.p >= win.q * win.x**2


def lower_gate(win: GeneralWindow) -> bool:
    """x sqrt(npq) >= max(1, 2x^2), squared: x^2 npq >= 1 and npq >= 4 x^2."""
    x2 = win.x**2
    return x2 * win.npq >= 1 and win.npq >= 4 * x2


def check_general_sandwich(win: GeneralWindow, prec: Precision = DEFAULT_PRECISION) -> GeneralCertificate:
    """Bounds on P_n(x) = P(m <= S_n < m + x sqrt(npq)):

        P_n(x) <= sqrt(2 pi npq) c e^{(x^3+1)/sqrt(pn)} (1/sqrt(npq) + I(x)/2)
        P_n(x) >= sqrt(2 pi npq) c e^{-8x^3/sqrt(qn)} (I(x)/2 - 1/sqrt(npq))

    with c = P(S_n = m).  The exact decomposition P_n(x) = c sum pi(j) and
    the per-offset product bounds are certified alongside.
    """
    n, p, q, x = win.n, win.p, win.q, win.x
    m, delta = central_index(n, p)
    prob = window_prob_gen(win)
    c = pmf(n, p, m)
    npq = win.npq
    offsets = win.offsets()
    claims: list[Claim] = [
        exact_claim("bwex", prob, "==", c * sum((pi_gen(j, win) for j in offsets), Fraction(0))),
    ]

    def scale(pr: Precision) -> Enclosure:
        return sqrt_of(2 * npq * pi_enclose(pr), pr) * c

    def half_gauss(pr: Precision) -> Enclosure:
        return gauss_integral(x, pr).enclosure / 2

    def upper(pr: Precision) -> Enclosure:
        grow = exp_of((x**3 + 1) / sqrt_enclose(p * n, pr), pr)
        return scale(pr) * grow * (1 / sqrt_enclose(npq, pr) + half_gauss(pr))

    def lower(pr: Precision) -> Enclosure:
        shrink = exp_of(-8 * x**3 / sqrt_enclose(q * n, pr), pr)
        return scale(pr) * shrink * (half_gauss(pr) - 1 / sqrt_enclose(npq, pr))

    if upper_gate(win):
        claims.append(decide("azoex", "<=", lambda pr: (prob, upper(pr)), prec))
    else:
        claims.append(Claim.skipped("azoex", "<=", f"precondition n >= (q/p)x^2 fails for n={n}, p={p}, x={x}"))
    if lower_gate(win):
        claims.append(decide("bzoex", ">=", lambda pr: (prob, lower(pr)), prec))
    else:
        claims.append(
            Claim.skipped("bzoex", ">=", f"precondition x sqrt(npq) >= max(1, 2x^2) fails for n={n}, p={p}, x={x}")
        )
    for j in offsets:
        claims.append(check_pi_gen_upper(win, j, prec))
        claims.append(check_pi_gen_lower(win, j, prec))
    instance = {"n": n, "p": p, "x": x, "m": m, "delta": delta, "window_prob": prob}
    return GeneralCertificate(instance, tuple(claims), p=p, m=m, delta=delta)


def product_forms_agree(win: GeneralWindow) -> bool:
    """The two product forms of pi(j) coincide for every 1 <= j <= n - m."""
    return all(
        pi_gen_product(j, win, "qent") == pi_gen_product(j, win, "qrnt") for j in range(1, win.n - win.m + 1)
    )


@dataclass(frozen=True)
class Reflection:
    """Left and right half-windows and their two composition conventions.

    ``union`` counts a shared central atom once, ``double_counted`` is the
    plain sum right + left.  They differ only when ``shared_atom`` is set.
    """

    direct: Fraction
    flipped: Fraction
    right: Fraction
    left_top: int
    shared_atom: int | None
    union: Fraction
    double_counted: Fraction

    @property
    def agree(self) -> bool:
        return self.direct == self.flipped


def left_atoms(win: GeneralWindow) -> list[int]:
    """Atoms k with n - m~ - x sqrt(npq) < k <= n - m~, m~ the central index of B(n, q)."""
    top = win.n - central_index(win.n, win.q)[0]
    bound = win.x**2 * win.npq
    return [k for k in range(top, -1, -1) if (top - k) ** 2 < bound]


def right_atoms(win: GeneralWindow) -> list[int]:
    return [win.m + j for j in win.offsets()]


def reflect_left_window(win: GeneralWindow) -> Reflection:
    """Left window probability by direct summation and through n - S_n ~ B(n, q)."""
    n, p = win.n, win.p
    top = n - central_index(n, win.q)[0]
    direct = sum((pmf(n, p, k) for k in left_atoms(win)), Fraction(0))
    flipped = window_prob_gen(GeneralWindow(n, win.q, win.x))
    right = window_prob_gen(win)
    shared = top if top == win.m else None
    overlap = pmf(n, p, top) if shared is not None else Fraction(0)
    return Reflection(direct, flipped, right, top, shared, right + direct - overlap, right + direct)


def symmetric_discrepancy(n: int, x: Fraction) -> tuple[Fraction, Fraction, set[int]]:
    """Compare the p = 1/2 left/right union with the symmetric window on the same n.

    Returns (union probability, symmetric window probability, the atoms in
    exactly one of the two events).
    """
    win = GeneralWindow(n, Fraction(1, 2), x)
    union_atoms = set(left_atoms(win)) | set(right_atoms(win))
    sym_atoms = set(SymmetricWindow(n, x).atoms())
    return reflect_left_window(win).union, window_prob_sym(SymmetricWindow(n, x)), union_atoms ^ sym_atoms
