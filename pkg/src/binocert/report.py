"""Claims, three-valued verdicts and certificate reports.

A claim compares two enclosures.  It is decided by re-evaluating both
sides at increasing working precision until they separate, or until the
refinement rounds run out (Undecided).  Violated is only ever reported
from certified separation, or from exact equality against a strict
relation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from .exactnum import DEFAULT_PRECISION, Enclosure, Precision, RationalLike

Quantity = Union[Enclosure, Fraction, int]


class Verdict(enum.Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    UNDECIDED = "Undecided"
    SKIPPED = "Skipped"

    def __str__(self) -> str:
        return self.value


RELATIONS = ("<=", "<", ">=", ">", "==")


@dataclass(frozen=True)
class Claim:
    name: str
    lhs: Enclosure | None
    relation: str
    rhs: Enclosure | None
    verdict: Verdict
    note: str = ""
    bits: int = 0

    @classmethod
    def skipped(cls, name: str, relation: str, note: str) -> Claim:
        return cls(name, None, relation, None, Verdict.SKIPPED, note)


def _enc(v: Quantity) -> Enclosure:
    return v if isinstance(v, Enclosure) else Enclosure.exact(v)


def compare(lhs: Quantity, relation: str, rhs: Quantity) -> Verdict:
    """Decide ``lhs relation rhs`` from enclosures, never guessing."""
    a, b = _enc(lhs), _enc(rhs)
    if relation == "==":
        if a.is_exact and b.is_exact and a.lo == b.lo:
            return Verdict.HOLDS
        if a.hi < b.lo or b.hi < a.lo:
            return Verdict.VIOLATED
        return Verdict.UNDECIDED
    if relation in (">=", ">"):
        a, b = b, a
        relation = "<=" if relation == ">=" else "<"
    if relation == "<=":
        if a.hi <= b.lo:
            return Verdict.HOLDS
        if a.lo > b.hi:
            return Verdict.VIOLATED
        return Verdict.UNDECIDED
    if relation == "<":
        if a.hi < b.lo:
            return Verdict.HOLDS
        if a.lo >= b.hi:
            return Verdict.VIOLATED
        return Verdict.UNDECIDED
    raise ValueError(f"unknown relation {relation!r}")


def bits_schedule(prec: Precision) -> list[int]:
    """Working precisions tried in turn: a cheap screen, the target, then finer."""
    b = prec.bits
    out = []
    for i in range(prec.max_refinements):
        out.append(max(24, (b << i) >> 2))
    return out


def decide(
    name: str,
    relation: str,
    sides: Callable[[Precision], tuple[Quantity, Quantity]],
    prec: Precision = DEFAULT_PRECISION,
) -> Claim:
    """Evaluate ``sides`` at increasing precision until the claim is decided."""
    lhs = rhs = None
    verdict = Verdict.UNDECIDED
    bits = 0
    for bits in bits_schedule(prec):
        lhs, rhs = (_enc(v) for v in sides(Precision.from_bits(bits)))
        verdict = compare(lhs, relation, rhs)
        if verdict is not Verdict.UNDECIDED:
            break
    return Claim(name, lhs, relation, rhs, verdict, bits=bits)


def exact_claim(name: str, lhs: RationalLike, relation: str, rhs: RationalLike) -> Claim:
    a, b = Enclosure.exact(lhs), Enclosure.exact(rhs)
    return Claim(name, a, relation, b, compare(a, relation, b))


def overall(claims: Iterable[Claim]) -> Verdict:
    """Violated beats Undecided beats Holds; all-skipped stays Skipped."""
    return combine(c.verdict for c in claims)


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    verdicts = list(verdicts)
    if Verdict.VIOLATED in verdicts:
        return Verdict.VIOLATED
    if Verdict.UNDECIDED in verdicts:
        return Verdict.UNDECIDED
    if Verdict.HOLDS in verdicts:
        return Verdict.HOLDS
    return Verdict.SKIPPED


def decimal_str(v: RationalLike, places: int = 15) -> str:
    """Round-half-even decimal rendering of an exact rational."""
    v = Fraction(v)
    sign = "-" if v < 0 else ""
    v = abs(v)
    scaled, rem = divmod(v.numerator * 10**places, v.denominator)
    twice = 2 * rem
    if twice > v.denominator or (twice == v.denominator and scaled % 2 == 1):
        scaled += 1
    digits = str(scaled).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    if scaled == 0:
        sign = ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True)
class CertificateReport:
    instance: dict
    claims: tuple[Claim, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> Verdict:
        return overall(self.claims)

    def claim(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def count(self, verdict: Verdict) -> int:
        return sum(1 for c in self.claims if c.verdict is verdict)

    def to_text(self, places: int = 15) -> str:
        lines = [f"instance.{k}={str(v)}" for k, v in self.instance.items()]
        for c in self.claims:
            key = f"claim.{c.name}"
            lines.append(f"{key}.relation={c.relation}")
            lines.append(f"{key}.verdict={c.verdict}")
            if c.lhs is not None:
                lines.append(f"{key}.lhs=[{decimal_str(c.lhs.lo, places)}, {decimal_str(c.lhs.hi, places)}]")
                lines.append(f"{key}.rhs=[{decimal_str(c.rhs.lo, places)}, {decimal_str(c.rhs.hi, places)}]")
            if c.note:
                lines.append(f"{key}.note={c.note}")
        lines.append(f"overall={self.overall}")
        return "\n".join(lines) + "\n"

    def to_rows(self, places: int = 15) -> list[dict[str, str]]:
        """One flat dict per claim, for CSV output."""
        rows = []
        for c in self.claims:
            row = {k: str(v) for k, v in self.instance.items()}
            row.update(
                claim=c.name,
                relation=c.relation,
                verdict=str(c.verdict),
                lhs_lo=decimal_str(c.lhs.lo, places) if c.lhs else "",
                lhs_hi=decimal_str(c.lhs.hi, places) if c.lhs else "",
                rhs_lo=decimal_str(c.rhs.lo, places) if c.rhs else "",
                rhs_hi=decimal_str(c.rhs.hi, places) if c.rhs else "",
                note=c.note,
            )
            rows.append(row)
        return rows

