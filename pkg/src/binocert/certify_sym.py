"""Certificates for the symmetric binomial B(n, 1/2).

Index conventions: the even routines take the half-index n of S_2n and the
odd routines the half-index n of S_{2n+1}.  :func:`certify_unified` takes
the total number of trials.

Every claim compares an exact rational (a window probability, a central
term, a product ratio) with an expression in exp, sqrt, pi and I(x),
decided by :func:`binocert.report.decide`.  Gate conditions are compared
exactly in squared or cubed form; an instance outside a gate yields
Skipped claims, never a failure.
"""

from __future__ import annotations

from fractions import Fraction

from .binom import (
    SymmetricWindow,
    central_pmf_even,
    central_pmf_odd,
    pi_sym,
    pi_sym_odd,
    window_prob_sym,
)
from .exactnum import (
    DEFAULT_PRECISION,
    Enclosure,
    Precision,
    RationalLike,
    exp_enclose,
    exp_of,
    pi_enclose,
    sqrt_enclose,
    sqrt_of,
)
from .gauss import gauss_integral, half_gauss_series
from .report import CertificateReport, Claim, decide, exact_claim


def _gauss(x: Fraction, pr: Precision) -> Enclosure:
    return gauss_integral(x, pr).enclosure


def _sqrt_n_pi(n: int, pr: Precision) -> Enclosure:
    return sqrt_of(n * pi_enclose(pr), pr)


def _upper_exponent(n: int, x: Fraction, pr: Precision) -> Enclosure:
    """x^3 / (2 sqrt(2n))."""
    return x**3 / (2 * sqrt_enclose(2 * n, pr))


def _lower_exponent(n: int, x: Fraction, pr: Precision) -> Enclosure:
    """x^3 / sqrt(2n)."""
    return x**3 / sqrt_enclose(2 * n, pr)


def _window_offsets_even(n: int, x: Fraction) -> range:
    """1 <= j < x sqrt(n/2), i.e. 2 j^2 < x^2 n, capped at n."""
    j = 0
    while j + 1 <= n and 2 * (j + 1) ** 2 < x * x * n:
        j += 1
    return range(1, j + 1)


def odd_offsets(n: int, x: Fraction) -> range:
    """0 <= j < x_n = (x/2) sqrt(2n+1) - 1/2, i.e. (2j+1)^2 < x^2 (2n+1)."""
    j = -1
    while j + 1 <= n and (2 * j + 3) ** 2 < x * x * (2 * n + 1):
        j += 1
    return range(0, j + 1)


def _cube_gate(name: str, n: int, x: Fraction, js: range, j_cap: Fraction) -> tuple[Claim, Claim]:
    """j <= j_cap and j^3/n^2 <= x^3/(2 sqrt(2n)) (as 8 j^6 <= x^6 n^3) for all j in js."""
    j_top = js[-1] if js else 0
    return (
        exact_claim(f"{name}.range", j_top, "<=", j_cap),
        exact_claim(f"{name}.cube", 8 * j_top**6, "<=", x**6 * n**3),
    )


def _gate_note(what: str, cond: str) -> str:
    return f"precondition {cond} fails for {what}"


# ---------------------------------------------------------------- products


def check_pi_bounds_even(n: int, j_max: int, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """exp(-j^2/n - 2j^3/n^2) <= pi(j, n) <= exp(-j^2/n + j^3/n^2) for 0 <= j <= j_max.

    The upper bound is asserted for every j <= n, the lower one for
    j <= n/2; larger j get a Skipped lower claim.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= j_max <= n:
        raise ValueError(f"j_max must lie in [0, n], got {j_max}")
    claims = []
    for j in range(j_max + 1):
        value = pi_sym(j, n)
        sq, cu = Fraction(j * j, n), Fraction(j**3, n * n)
        claims.append(decide(f"hinos[{j}]", "<=", lambda pr, v=value, t=cu - sq: (v, exp_enclose(t, pr)), prec))
        if 2 * j <= n:
            claims.append(
                decide(f"linos[{j}]", ">=", lambda pr, v=value, t=-sq - 2 * cu: (v, exp_enclose(t, pr)), prec)
            )
        else:
            claims.append(Claim.skipped(f"linos[{j}]", ">=", _gate_note(f"j={j}", "j <= n/2")))
    return CertificateReport({"n": n, "j_max": j_max, "parity": "even"}, tuple(claims))


def check_pi_bounds_odd(n: int, j_max: int, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """(n+1)/(n+j+1) exp(-j^2/n - 2j^3/n^2) <= pi~(j, n) <= exp(-j^2/n + j^3/n^2).

    pi~(j, n) = P(S_{2n+1} = n+1+j) / P(S_{2n+1} = n+1).  Upper for 1 <= j <= n,
    lower for 1 <= j <= n/2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= j_max <= n:
        raise ValueError(f"j_max must lie in [1, n], got {j_max}")
    claims = []
    for j in range(1, j_max + 1):
        value = pi_sym_odd(j, n)
        sq, cu = Fraction(j * j, n), Fraction(j**3, n * n)
        claims.append(decide(f"ytnos.upper[{j}]", "<=", lambda pr, v=value, t=cu - sq: (v, exp_enclose(t, pr)), prec))
        if 2 * j <= n:
            scale = Fraction(n + 1, n + j + 1)
            claims.append(
                decide(
                    f"ytnos.lower[{j}]", ">=",
                    lambda pr, v=value, s=scale, t=-sq - 2 * cu: (v, s * exp_enclose(t, pr)), prec,
                )
            )
        else:
            claims.append(Claim.skipped(f"ytnos.lower[{j}]", ">=", _gate_note(f"j={j}", "j <= n/2")))
    return CertificateReport({"n": n, "j_max": j_max, "parity": "odd"}, tuple(claims))


# ---------------------------------------------------------------- sandwiches


def check_window_sandwich_even(n: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """Upper and lower bounds on P(|S_2n - n| < x sqrt(n/2)) through each step of the chain.

    Upper (needs n >= x^2), with c = P(S_2n = n), a = x^3/(2 sqrt(2n)), J the
    largest offset in the window:

        P <= c (1 + 2 e^a sum_{1<=j<=J} e^{-j^2/n})          tvex
          <= c (1 + 2 e^a int_0^J e^{-t^2/n} dt)             fwex.sum
          <= c + sqrt(n pi) c e^a I(x)                       fwex.integral / uwex

    Lower (needs n >= 2 x^2), with b = x^3/sqrt(2n):

        P >= c (1 + 2 sum_{1<=j<=J} e^{-j^2/n - b})          hvex.direct
          >= c (2 e^{-b} sum_{0<=j<=J} e^{-j^2/n} - 1)       hvex.shift
          >= sqrt(n pi) c (e^{-b} I(x) - 1/sqrt(n pi))       hvex.integral / fvex
    """
    x = Fraction(x)
    win = SymmetricWindow(2 * n, x)
    prob = window_prob_sym(win)
    c = central_pmf_even(n)
    js = _window_offsets_even(n, x)
    big_j = js[-1] if js else 0
    sq = [Fraction(j * j, n) for j in js]
    claims: list[Claim] = []

    def sum_exp(shift: Enclosure | None, pr: Precision) -> Enclosure:
        """sum over window offsets j >= 1 of e^{-j^2/n - shift}."""
        total = Enclosure.exact(0)
        for s in sq:
            total = total + (exp_enclose(-s, pr) if shift is None else exp_of(-s - shift, pr))
        return total

    def tvex(pr: Precision) -> Enclosure:
        return c * (1 + 2 * exp_of(_upper_exponent(n, x, pr), pr) * sum_exp(None, pr))

    def fwex_sum(pr: Precision) -> Enclosure:
        integral = half_gauss_series(big_j, Fraction(1, n), pr)[0]
        return c * (1 + 2 * exp_of(_upper_exponent(n, x, pr), pr) * integral)

    def wvex(pr: Precision) -> Enclosure:
        return c + _sqrt_n_pi(n, pr) * c * exp_of(_upper_exponent(n, x, pr), pr) * _gauss(x, pr)

    if n >= x * x:
        claims.extend(_cube_gate("fnst", n, x, js, Fraction(n)))
        claims.append(decide("tvex", "<=", lambda pr: (prob, tvex(pr)), prec))
        claims.append(decide("fwex.sum", "<=", lambda pr: (tvex(pr), fwex_sum(pr)), prec))
        claims.append(decide("fwex.integral", "<=", lambda pr: (fwex_sum(pr), wvex(pr)), prec))
        claims.append(decide("uwex", "<=", lambda pr: (prob, wvex(pr)), prec))
    else:
        note = _gate_note(f"n={n}, x={x}", "n >= x^2")
        claims.extend(Claim.skipped(name, "<=", note) for name in ("fnst", "tvex", "fwex.sum", "fwex.integral", "uwex"))

    def hvex_direct(pr: Precision) -> Enclosure:
        return c * (1 + 2 * sum_exp(_lower_exponent(n, x, pr), pr))

    def hvex_shift(pr: Precision) -> Enclosure:
        return c * (2 * exp_of(-_lower_exponent(n, x, pr), pr) * (1 + sum_exp(None, pr)) - 1)

    def fvex(pr: Precision) -> Enclosure:
        root = _sqrt_n_pi(n, pr)
        return root * c * (exp_of(-_lower_exponent(n, x, pr), pr) * _gauss(x, pr) - 1 / root)

    if n >= 2 * x * x:
        claims.extend(_cube_gate("enst", n, x, js, Fraction(n, 2)))
        claims.append(decide("hvex.direct", ">=", lambda pr: (prob, hvex_direct(pr)), prec))
        claims.append(decide("hvex.shift", ">=", lambda pr: (hvex_direct(pr), hvex_shift(pr)), prec))
        claims.append(decide("hvex.integral", ">=", lambda pr: (hvex_shift(pr), fvex(pr)), prec))
        claims.append(decide("fvex", ">=", lambda pr: (prob, fvex(pr)), prec))
    else:
        note = _gate_note(f"n={n}, x={x}", "n >= 2x^2")
        claims.extend(
            Claim.skipped(name, ">=", note) for name in ("enst", "hvex.direct", "hvex.shift", "hvex.integral", "fvex")
        )
    instance = {"n": n, "n_total": 2 * n, "x": x, "parity": "even", "window_prob": prob}
    return CertificateReport(instance, tuple(claims))


def concavity_gate(n: int, x: Fraction) -> bool:
    """x_n < x sqrt(n/2), i.e. (x^2 - 1)/4 < x sqrt(n/2), decided exactly."""
    lhs = x * x - 1
    if lhs < 0:
        return True
    if lhs == 0:
        return n > 0
    return lhs * lhs / 16 < x * x * n / 2


def check_window_sandwich_odd(n: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """e^{-b} I(x) <= P'/(sqrt(n pi) c') <= 2/sqrt(n) + e^a I(x) for S_{2n+1}.

    P' = P(|S_{2n+1} - (2n+1)/2| < (x/2) sqrt(2n+1)), c' = P(S_{2n+1} = n).
    Upper needs n >= x^2, lower n >= 2x^2; both need n >= 1.  Per-offset
    bracketing of pi~(j, n) and the concavity step are certified alongside.

    The lower inequality as written fails at some small x (for instance
    x = 1/2, n = 10): the sum runs over j < x_n but is compared with an
    integral up to x sqrt(n/2) > x_n.  It is still checked and reported
    as is.  ``oouwvex.lower.sound`` is the bound the same steps do give:
    P'/(sqrt(n pi) c') >= 2/sqrt(n pi) * n/(n + x sqrt n) * e^{-b} * int_0^{x_n} e^{-t^2/n} dt.
    """
    x = Fraction(x)
    if n < 0:
        raise ValueError("n must be >= 0")
    prob = window_prob_sym(SymmetricWindow(2 * n + 1, x))
    c = central_pmf_odd(n)
    instance = {"n": n, "n_total": 2 * n + 1, "x": x, "parity": "odd", "window_prob": prob}
    upper_ok = n >= 1 and n >= x * x
    lower_ok = n >= 1 and n >= 2 * x * x
    js = odd_offsets(n, x)
    claims: list[Claim] = []

    def ratio(pr: Precision) -> Enclosure:
        return prob / (_sqrt_n_pi(n, pr) * c)

    def sound_lower(pr: Precision) -> Enclosure:
        # what the per-offset bounds give when the sum over j < x_n is compared
        # with the integral up to x_n only, keeping the n/(n + x sqrt n) factor
        x_n_lo = max((x / 2 * sqrt_enclose(2 * n + 1, pr) - Fraction(1, 2)).lo, Fraction(0))
        integral = half_gauss_series(x_n_lo, Fraction(1, n), pr)[0]
        shrink = n / (n + x * sqrt_enclose(n, pr)) * exp_of(-_lower_exponent(n, x, pr), pr)
        return 2 / _sqrt_n_pi(n, pr) * shrink * integral

    if upper_ok:
        claims.append(exact_claim("concavs", int(concavity_gate(n, x)), "==", 1))
        claims.append(
            decide(
                "oouwvex.upper", "<=",
                lambda pr: (ratio(pr), 2 / sqrt_enclose(n, pr) + exp_of(_upper_exponent(n, x, pr), pr) * _gauss(x, pr)),
                prec,
            )
        )
        for j in js:
            t = Fraction(-j * j, n)
            claims.append(
                decide(
                    f"ztnos.upper[{j}]", "<=",
                    lambda pr, j=j, t=t: (pi_sym_odd(j, n), exp_of(t + _upper_exponent(n, x, pr), pr)),
                    prec,
                )
            )
    else:
        note = _gate_note(f"n={n}, x={x}", "n >= max(x^2, 1)")
        claims.append(Claim.skipped("concavs", "==", note))
        claims.append(Claim.skipped("oouwvex.upper", "<=", note))
    if lower_ok:
        claims.append(
            decide(
                "oouwvex.lower", ">=",
                lambda pr: (ratio(pr), exp_of(-_lower_exponent(n, x, pr), pr) * _gauss(x, pr)),
                prec,
            )
        )
        claims.append(decide("oouwvex.lower.sound", ">=", lambda pr: (ratio(pr), sound_lower(pr)), prec))
        for j in js:
            t = Fraction(-j * j, n)
            claims.append(
                decide(
                    f"ztnos.lower[{j}]", ">=",
                    lambda pr, j=j, t=t: (
                        pi_sym_odd(j, n),
                        n / (n + x * sqrt_enclose(n, pr)) * exp_of(t - _lower_exponent(n, x, pr), pr),
                    ),
                    prec,
                )
            )
    else:
        claims.append(Claim.skipped("oouwvex.lower", ">=", _gate_note(f"n={n}, x={x}", "n >= max(2x^2, 1)")))
    return CertificateReport(instance, tuple(claims))


# ---------------------------------------------------------------- final bounds


def _abs_diff(prob: Fraction, x: Fraction, pr: Precision) -> Enclosure:
    return abs(prob - _gauss(x, pr))


def _bound(numer: RationalLike, n: int, pr: Precision) -> Enclosure:
    """e^{numer / sqrt(n)} - 1."""
    return exp_of(numer / sqrt_enclose(n, pr), pr) - 1


def nonasymptotic_bound(n_total: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of e^{(4x^3 + 8)/sqrt(n_total)} - 1."""
    x = Fraction(x)
    return _bound(4 * x**3 + 8, n_total, prec)


def certify_nonasymptotic_even(n: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """|P(|S_2n - n| < x sqrt(n/2)) - I(x)| <= e^{(x^3+2)/sqrt(n)} - 1 for n >= max(2x^2, 1).

    Also certifies the one-sided forms and the elementary steps joining
    them to the sandwich bounds:
      nakwex  P <= I + e^{(x^3+2)/(2 sqrt(2n))} - 1
      uuvex   P >= I + 1 - e^{(x^3+2)/sqrt(n)}
      iste    e^a + s <= e^a (1 + s) <= e^{a+s} <= e^{(x^3+2)/(2 sqrt(2n))},  s = 1/sqrt(n pi)
      fhh     (1 + 1/(2n))^{-1/2} e^{-b} >= e^{-1/(4n) - b}
      kuw     u - 1 - 1/sqrt(2n) >= u - e^{1/sqrt(2n)} >= 1 - e^{1/(4n)+b+1/sqrt(2n)} >= 1 - e^{(x^3+2)/sqrt(n)}
              with u = e^{-1/(4n) - b}
    """
    x = Fraction(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    prob = window_prob_sym(SymmetricWindow(2 * n, x))
    instance = {"n": n, "n_total": 2 * n, "x": x, "parity": "even", "window_prob": prob}
    names = ("luvex", "nakwex", "uuvex", "iste.1", "iste.2", "iste.3", "fhh", "kuw.1", "kuw.2", "kuw.3")
    if n < 2 * x * x:
        note = _gate_note(f"n={n}, x={x}", "n >= max(2x^2, 1)")
        return CertificateReport(instance, tuple(Claim.skipped(k, "<=", note) for k in names))

    cube = x**3

    def a(pr: Precision) -> Enclosure:
        return _upper_exponent(n, x, pr)

    def b(pr: Precision) -> Enclosure:
        return _lower_exponent(n, x, pr)

    def s(pr: Precision) -> Enclosure:
        return 1 / _sqrt_n_pi(n, pr)

    def half_bound(pr: Precision) -> Enclosure:
        return exp_of((cube + 2) / (2 * sqrt_enclose(2 * n, pr)), pr)

    def u(pr: Precision) -> Enclosure:
        return exp_of(Fraction(-1, 4 * n) - b(pr), pr)

    def r(pr: Precision) -> Enclosure:
        return 1 / sqrt_enclose(2 * n, pr)

    claims = (
        decide("luvex", "<=", lambda pr: (_abs_diff(prob, x, pr), _bound(cube + 2, n, pr)), prec),
        decide("nakwex", "<=", lambda pr: (prob, _gauss(x, pr) + half_bound(pr) - 1), prec),
        decide("uuvex", ">=", lambda pr: (prob, _gauss(x, pr) - _bound(cube + 2, n, pr)), prec),
        decide("iste.1", "<=", lambda pr: (exp_of(a(pr), pr) + s(pr), exp_of(a(pr), pr) * (1 + s(pr))), prec),
        decide("iste.2", "<=", lambda pr: (exp_of(a(pr), pr) * (1 + s(pr)), exp_of(a(pr) + s(pr), pr)), prec),
        decide("iste.3", "<=", lambda pr: (exp_of(a(pr) + s(pr), pr), half_bound(pr)), prec),
        decide(
            "fhh", ">=",
            lambda pr: (1 / sqrt_enclose(1 + Fraction(1, 2 * n), pr) * exp_of(-b(pr), pr), u(pr)),
            prec,
        ),
        decide("kuw.1", ">=", lambda pr: (u(pr) - 1 - r(pr), u(pr) - exp_of(r(pr), pr)), prec),
        decide(
            "kuw.2", ">=",
            lambda pr: (u(pr) - exp_of(r(pr), pr), 1 - exp_of(Fraction(1, 4 * n) + b(pr) + r(pr), pr)),
            prec,
        ),
        decide(
            "kuw.3", ">=",
            lambda pr: (1 - exp_of(Fraction(1, 4 * n) + b(pr) + r(pr), pr), -_bound(cube + 2, n, pr)),
            prec,
        ),
    )
    return CertificateReport(instance, claims)


def certify_nonasymptotic_odd(n: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """|P(|S_{2n+1} - (2n+1)/2| < (x/2) sqrt(2n+1)) - I(x)| <= e^{(x^3+2)/sqrt(n)} - 1.

    Valid for n >= max(2x^2, 1); n is the half-index, not the trial count.
    """
    x = Fraction(x)
    if n < 0:
        raise ValueError("n must be >= 0")
    prob = window_prob_sym(SymmetricWindow(2 * n + 1, x))
    instance = {"n": n, "n_total": 2 * n + 1, "x": x, "parity": "odd", "window_prob": prob}
    names = ("siluvex", "siluvex.upper", "siluvex.lower")
    if n < 1 or n < 2 * x * x:
        note = _gate_note(f"n={n}, x={x}", "n >= max(2x^2, 1)")
        return CertificateReport(instance, tuple(Claim.skipped(k, "<=", note) for k in names))
    cube = x**3
    claims = (
        decide("siluvex", "<=", lambda pr: (_abs_diff(prob, x, pr), _bound(cube + 2, n, pr)), prec),
        decide("siluvex.upper", "<=", lambda pr: (prob, _gauss(x, pr) + _bound(cube + 2, n, pr)), prec),
        decide("siluvex.lower", ">=", lambda pr: (prob, _gauss(x, pr) - _bound(cube + 2, n, pr)), prec),
    )
    return CertificateReport(instance, claims)


def certify_unified(n_total: int, x: RationalLike, prec: Precision = DEFAULT_PRECISION) -> CertificateReport:
    """|P(|S_N - N/2| < x sqrt(N)/2) - I(x)| <= e^{(4x^3+8)/sqrt(N)} - 1 for N >= max(4x^2, 2).

    The parity-specific bound (in its own half-index) is added when its
    gate also holds, which is always the case for even N.
    """
    x = Fraction(x)
    if n_total < 1:
        raise ValueError("n_total must be >= 1")
    parity = "even" if n_total % 2 == 0 else "odd"
    prob = window_prob_sym(SymmetricWindow(n_total, x))
    instance = {"n_total": n_total, "x": x, "parity": parity, "window_prob": prob}
    if n_total < 2 or n_total < 4 * x * x:
        note = _gate_note(f"n_total={n_total}, x={x}", "n_total >= max(4x^2, 2)")
        return CertificateReport(instance, (Claim.skipped("gluvex", "<=", note),))
    claims = [
        decide("gluvex", "<=", lambda pr: (_abs_diff(prob, x, pr), nonasymptotic_bound(n_total, x, pr)), prec),
    ]
    if parity == "even":
        sub = certify_nonasymptotic_even(n_total // 2, x, prec).claim("luvex")
    else:
        sub = certify_nonasymptotic_odd(n_total // 2, x, prec).claim("siluvex")
    claims.append(sub)
    return CertificateReport(instance, tuple(claims))


def interval_difference(x: RationalLike, y: RationalLike, n_total: int,
                        prec: Precision = DEFAULT_PRECISION) -> tuple[Fraction, Enclosure]:
    """P(x sqrt(N)/2 <= |S_N - N/2| < y sqrt(N)/2) exactly, and an enclosure of I(y) - I(x)."""
    x, y = Fraction(x), Fraction(y)
    if not 0 < x < y:
        raise ValueError("need 0 < x < y")
    prob = window_prob_sym(SymmetricWindow(n_total, y)) - window_prob_sym(SymmetricWindow(n_total, x))
    mass = gauss_integral(y, prec).enclosure - gauss_integral(x, prec).enclosure
    return prob, mass
