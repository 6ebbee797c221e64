"""The elementary inequalities behind the product bounds, checked on rational grids.

    exp(t) >= 1 + t            for all real t          (bce)
    1/(1 - t) >= 1 + t         for t in [-1, 1)        (ine1)
    1/(1 - t) <= 1 + 2t        for t in [0, 1/2]       (ine2)
    1/(1 + t) >= exp(-t)       for t in [0, 1]         (lowi)

ine1 and ine2 are pure rational comparisons; bce and lowi go through
certified exp enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .exactnum import DEFAULT_PRECISION, Precision, exp_enclose
from .report import Claim, Verdict, combine, decide, exact_claim


@dataclass(frozen=True)
class LemmaResult:
    name: str
    points: int
    verdicts: tuple[Verdict, ...]
    failures: tuple[Fraction, ...]

    @property
    def holds(self) -> bool:
        return self.points > 0 and all(v is Verdict.HOLDS for v in self.verdicts)

    @property
    def verdict(self) -> Verdict:
        return combine(self.verdicts)

    def count(self, verdict: Verdict) -> int:
        return sum(1 for v in self.verdicts if v is verdict)


def _grid(lo: int, hi: int, den: int) -> list[Fraction]:
    return [Fraction(k, den) for k in range(lo, hi + 1)]


GRIDS: dict[str, list[Fraction]] = {
    "bce": _grid(-1000, 1000, 100),
    "ine1": _grid(-2000, 1999, 2000),
    "ine2": _grid(0, 2000, 4000),
    "lowi": _grid(0, 2000, 2000),
}


def _bce(t: Fraction, prec: Precision) -> Claim:
    return decide("bce", ">=", lambda pr: (exp_enclose(t, pr), 1 + t), prec)


def _ine1(t: Fraction, prec: Precision) -> Claim:
    return exact_claim("ine1", 1 / (1 - t), ">=", 1 + t)


def _ine2(t: Fraction, prec: Precision) -> Claim:
    return exact_claim("ine2", 1 / (1 - t), "<=", 1 + 2 * t)


def _lowi(t: Fraction, prec: Precision) -> Claim:
    return decide("lowi", "<=", lambda pr: (exp_enclose(-t, pr), 1 / (1 + t)), prec)


CHECKS: dict[str, Callable[[Fraction, Precision], Claim]] = {
    "bce": _bce,
    "ine1": _ine1,
    "ine2": _ine2,
    "lowi": _lowi,
}


def check_lemma(name: str, grid: Iterable[Fraction] | None = None,
                prec: Precision = DEFAULT_PRECISION) -> LemmaResult:
    points = list(GRIDS[name] if grid is None else grid)
    check = CHECKS[name]
    verdicts = []
    failures = []
    for t in points:
        v = check(t, prec).verdict
        verdicts.append(v)
        if v is not Verdict.HOLDS:
            failures.append(t)
    return LemmaResult(name, len(points), tuple(verdicts), tuple(failures))


def run_lemma_suite(prec: Precision = DEFAULT_PRECISION) -> dict[str, LemmaResult]:
    return {name: check_lemma(name, prec=prec) for name in GRIDS}
