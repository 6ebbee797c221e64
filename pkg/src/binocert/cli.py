"""Command-line driver: certificates, sweeps, Wallis checks, histograms, lemmas.

Exit codes: 0 when every applicable claim Holds (all-Skipped included),
1 for malformed arguments or an unwritable output path, 2 when any claim
is Violated, 3 when a claim stays Undecided at the finest precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .binom import GeneralWindow, SymmetricWindow, pmf, window_prob_sym
from .certify_gen import check_general_sandwich, reflect_left_window
from .certify_sym import (
    certify_nonasymptotic_even,
    certify_nonasymptotic_odd,
    certify_unified,
    check_window_sandwich_even,
    check_window_sandwich_odd,
    nonasymptotic_bound,
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
from .lemmas import run_lemma_suite
from .report import CertificateReport, Verdict, combine, decimal_str, overall
from .wallis import central_sandwich_even, central_sandwich_odd, check_product_identity, wallis, wallis_ratio_bracket

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_UNDECIDED = 0, 1, 2, 3

CERTIFY_MODES = ("sym-even", "sym-odd", "unified", "general")
SWEEP_MODES = CERTIFY_MODES + ("wallis", "lemmas")

SWEEP_COLUMNS = (
    "n", "parity", "p", "x", "exact_window_prob", "num", "den",
    "gauss_lo", "gauss_hi", "abs_diff_lo", "abs_diff_hi", "paper_bound", "verdict",
)

HIST_MAX_N = 10**4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 instead of argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_rational(text: str) -> Fraction:
    """'a/b', an integer or a finite decimal, converted exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def parse_rational_list(text: str) -> list[Fraction]:
    items = [s for s in text.split(",") if s.strip()]
    return [parse_rational(s) for s in items]


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return v


def exit_code(verdict: Verdict) -> int:
    if verdict is Verdict.VIOLATED:
        return EXIT_VIOLATED
    if verdict is Verdict.UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_OK


def _merge(*reports: CertificateReport) -> CertificateReport:
    claims = tuple(c for r in reports for c in r.claims)
    return CertificateReport(dict(reports[0].instance), claims)


def build_certificate(mode: str, n: int, x: Fraction, p: Fraction | None, prec: Precision) -> CertificateReport:
    """Run one certificate; ``n`` is always the total number of trials."""
    if x <= 0:
        raise UsageError("--x must be positive")
    if mode == "sym-even":
        if n % 2:
            raise UsageError("sym-even needs an even --n (total trials)")
        return _merge(check_window_sandwich_even(n // 2, x, prec), certify_nonasymptotic_even(n // 2, x, prec))
    if mode == "sym-odd":
        if n % 2 == 0:
            raise UsageError("sym-odd needs an odd --n (total trials)")
        return _merge(check_window_sandwich_odd(n // 2, x, prec), certify_nonasymptotic_odd(n // 2, x, prec))
    if mode == "unified":
        return certify_unified(n, x, prec)
    if mode == "general":
        if p is None or not 0 < p < 1:
            raise UsageError("general mode needs --p in (0, 1)")
        win = GeneralWindow(n, p, x)
        report = check_general_sandwich(win, prec)
        refl = reflect_left_window(win)
        instance = dict(report.instance)
        instance.update(
            left_window_prob=refl.direct,
            left_window_prob_flipped=refl.flipped,
            union_prob=refl.union,
            sum_prob=refl.double_counted,
        )
        return CertificateReport(instance, report.claims)
    raise UsageError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------- sweep


@dataclass(frozen=True)
class SweepConfig:
    mode: str
    n_min: int
    n_max: int
    n_step: int
    x_list: tuple[Fraction, ...]
    p_list: tuple[Fraction, ...]
    precision: Precision = DEFAULT_PRECISION
    output_path: str = "-"

    def validate(self) -> None:
        if self.mode not in SWEEP_MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if not 1 <= self.n_min <= self.n_max or self.n_step < 1:
            raise UsageError("need 1 <= n_min <= n_max and n_step >= 1")
        if self.mode in CERTIFY_MODES and not self.x_list:
            raise UsageError("x list is empty")
        if any(x <= 0 for x in self.x_list):
            raise UsageError("x values must be positive")
        if self.mode == "general" and (not self.p_list or any(not 0 < p < 1 for p in self.p_list)):
            raise UsageError("general mode needs a non-empty p list inside (0, 1)")

    def instances(self) -> list[tuple]:
        ns = range(self.n_min, self.n_max + 1, self.n_step)
        if self.mode == "sym-even":
            ns = [n for n in ns if n % 2 == 0]
        elif self.mode == "sym-odd":
            ns = [n for n in ns if n % 2 == 1]
        if self.mode in ("wallis", "lemmas"):
            return [(self.mode, n, None, None, self.precision) for n in ns]
        ps = self.p_list if self.mode == "general" else (Fraction(1, 2),)
        return [(self.mode, n, x, p, self.precision) for n in ns for x in self.x_list for p in ps]


def _diff_bound(mode: str, n_total: int, x: Fraction, prec: Precision) -> Enclosure | None:
    """The bound on |P - I(x)| that applies to the instance, in that mode's own index."""
    if mode == "unified":
        return nonasymptotic_bound(n_total, x, prec)
    half = n_total // 2
    if mode in ("sym-even", "sym-odd") and half >= 1:
        return exp_of((x**3 + 2) / sqrt_enclose(half, prec), prec) - 1
    return None


def sweep_row(task: tuple) -> tuple[tuple, dict[str, str]]:
    mode, n, x, p, prec = task
    report = build_certificate(mode, n, x, p, prec)
    gauss = gauss_integral(x, prec).enclosure
    if mode == "general":
        prob = report.instance["window_prob"]
        gauss = gauss / 2  # the right half-window is compared with half the mass
    else:
        prob = window_prob_sym(SymmetricWindow(n, x))
    diff = abs(prob - gauss)
    bound = _diff_bound(mode, n, x, prec)
    row = {
        "n": str(n),
        "parity": "even" if n % 2 == 0 else "odd",
        "p": str(p),
        "x": str(x),
        "exact_window_prob": decimal_str(prob),
        "num": str(prob.numerator),
        "den": str(prob.denominator),
        "gauss_lo": decimal_str(gauss.lo),
        "gauss_hi": decimal_str(gauss.hi),
        "abs_diff_lo": decimal_str(diff.lo),
        "abs_diff_hi": decimal_str(diff.hi),
        "paper_bound": decimal_str(bound.hi) if bound is not None else "",
        "verdict": str(report.overall),
    }
    return (n, x, p), row


def wallis_row(task: tuple) -> tuple[tuple, dict[str, str]]:
    _, n, _, _, prec = task
    ok, product = check_product_identity(n)
    reports = [central_sandwich_even(n, prec), central_sandwich_odd(n, prec), wallis_ratio_bracket(n, prec)]
    verdict = overall(c for r in reports for c in r.claims)
    if not ok:
        verdict = Verdict.VIOLATED
    row = {
        "n": str(n),
        "wallis": str(wallis(n)),
        "product_identity": "pass" if ok else "fail",
        "product": str(product),
        "even_sandwich": str(reports[0].overall),
        "odd_sandwich": str(reports[1].overall),
        "ratio_bracket": str(reports[2].overall),
        "verdict": str(verdict),
    }
    return (n,), row


def run_sweep(config: SweepConfig, jobs: int = 1) -> tuple[list[str], list[dict[str, str]], Verdict]:
    """Compute all rows, sorted by (n, x, p) regardless of completion order."""
    config.validate()
    if config.mode == "lemmas":
        rows = []
        for name, res in run_lemma_suite(config.precision).items():
            rows.append({
                "lemma": name,
                "points": str(res.points),
                "holds": str(res.count(Verdict.HOLDS)),
                "violated": str(res.count(Verdict.VIOLATED)),
                "undecided": str(res.count(Verdict.UNDECIDED)),
                "verdict": str(res.verdict),
            })
        return list(rows[0].keys()), rows, combine(Verdict(r["verdict"]) for r in rows)
    worker = wallis_row if config.mode == "wallis" else sweep_row
    tasks = config.instances()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [worker(t) for t in tasks]
    results.sort(key=lambda kr: tuple(Fraction(-1) if v is None else v for v in kr[0]))
    rows = [r for _, r in results]
    columns = list(rows[0].keys()) if rows else list(SWEEP_COLUMNS)
    return columns, rows, combine(Verdict(r["verdict"]) for r in rows)


def rows_to_csv(columns: Sequence[str], rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- histogram


def emit_histogram(n: int, p: Fraction, prec: Precision = DEFAULT_PRECISION) -> tuple[list[str], list[dict[str, str]]]:
    """pmf of B(n, p) next to the standard normal density at z = (k - np)/sqrt(npq).

    ``normal_approx`` divides the density by sqrt(npq), which puts it on the
    pmf's scale (the N(np, npq) density at k).
    """
    p = Fraction(p)
    if not 1 <= n <= HIST_MAX_N:
        raise UsageError(f"histogram needs 1 <= n <= {HIST_MAX_N}")
    npq = n * p * (1 - p)
    root_2pi = sqrt_of(2 * pi_enclose(prec), prec)
    rows = []
    for k in range(n + 1):
        mass = pmf(n, p, k)
        z2 = (k - n * p) ** 2 / npq
        density = exp_enclose(-z2 / 2, prec) / root_2pi
        approx = density / sqrt_enclose(npq, prec)
        rows.append({
            "k": str(k),
            "pmf": decimal_str(mass),
            "num": str(mass.numerator),
            "den": str(mass.denominator),
            "gaussian_density": decimal_str(density.mid),
            "normal_approx": decimal_str(approx.mid),
        })
    return list(rows[0].keys()), rows


# ---------------------------------------------------------------- argparse


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mode", help="see the command's help for allowed modes")
    sub.add_argument("--n", type=positive_int, help="number of trials (or Wallis index)")
    sub.add_argument("--x", type=parse_rational_list, help="window half-width(s), e.g. 1 or 1/2,1,2")
    sub.add_argument("--p", type=parse_rational_list, help="success probability(ies), e.g. 1/4")
    sub.add_argument("--precision", type=parse_rational, default=DEFAULT_PRECISION.target_width,
                     help="target enclosure width (default 1e-30)")
    sub.add_argument("--max-refine", type=positive_int, default=DEFAULT_PRECISION.max_refinements,
                     help="refinement rounds before a claim is left Undecided")
    sub.add_argument("--out", default="-", help="output path, '-' for standard output")
    sub.add_argument("--format", choices=("csv", "text"), default=None)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binocert", description="Certified binomial vs Gaussian window bounds.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cert = subs.add_parser("certify", help="certify one instance")
    _add_common(cert)

    sweep = subs.add_parser("sweep", help="certify a range of instances and write CSV")
    _add_common(sweep)
    sweep.add_argument("--n-min", type=positive_int)
    sweep.add_argument("--n-max", type=positive_int)
    sweep.add_argument("--n-step", type=positive_int, default=1)
    sweep.add_argument("--jobs", type=positive_int, default=1)

    wal = subs.add_parser("wallis", help="Wallis integral identities and central-term sandwich")
    _add_common(wal)

    hist = subs.add_parser("hist", help="pmf and Gaussian density table")
    _add_common(hist)

    lem = subs.add_parser("lemmas", help="elementary inequalities on rational grids")
    _add_common(lem)
    return parser


def _single(values: list[Fraction] | None, flag: str, required: bool = True) -> Fraction | None:
    if values is None:
        if required:
            raise UsageError(f"{flag} is required")
        return None
    if len(values) != 1:
        raise UsageError(f"{flag} takes exactly one value here")
    return values[0]


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


def _precision(args: argparse.Namespace) -> Precision:
    if args.precision <= 0:
        raise UsageError("--precision must be positive")
    return Precision(args.precision, args.max_refine)


def _cmd_certify(args: argparse.Namespace) -> int:
    mode = args.mode or "unified"
    if mode not in CERTIFY_MODES:
        raise UsageError(f"certify --mode must be one of {', '.join(CERTIFY_MODES)}")
    if args.n is None:
        raise UsageError("--n is required")
    x = _single(args.x, "--x")
    p = _single(args.p, "--p", required=mode == "general")
    report = build_certificate(mode, args.n, x, p, _precision(args))
    if args.format == "csv":
        rows = report.to_rows()
        text = rows_to_csv(list(rows[0].keys()), rows) if rows else ""
    else:
        text = report.to_text()
        if report.overall is Verdict.SKIPPED:
            text += "note=SKIPPED: instance lies outside every gate\n"
    _write(text, args.out)
    return exit_code(report.overall)


def _cmd_sweep(args: argparse.Namespace) -> int:
    mode = args.mode or "unified"
    n_min = args.n_min if args.n_min is not None else args.n
    n_max = args.n_max if args.n_max is not None else n_min
    if n_min is None:
        raise UsageError("--n-min (or --n) is required")
    x_list = tuple(args.x) if args.x is not None else ()
    if mode in CERTIFY_MODES and not x_list:
        raise UsageError("--x must list at least one value")
    config = SweepConfig(
        mode=mode, n_min=n_min, n_max=n_max, n_step=args.n_step, x_list=x_list,
        p_list=tuple(args.p or ()), precision=_precision(args), output_path=args.out,
    )
    columns, rows, verdict = run_sweep(config, args.jobs)
    if args.format == "text":
        text = "".join(" ".join(f"{c}={r[c]}" for c in columns) + "\n" for r in rows)
    else:
        text = rows_to_csv(columns, rows)
    _write(text, args.out)
    return exit_code(verdict)


def _cmd_wallis(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    n = args.n
    prec = _precision(args)
    ok, product = check_product_identity(n)
    reports = [central_sandwich_even(n, prec), central_sandwich_odd(n, prec), wallis_ratio_bracket(n, prec)]
    lines = [
        f"W_{n}={wallis(n)}",
        f"W_{n - 1}={wallis(n - 1)}",
        f"product_identity={'pass' if ok else 'fail'}",
        f"product={product}",
    ]
    text = "\n".join(lines) + "\n" + "".join(r.to_text() for r in reports)
    _write(text, args.out)
    verdict = overall(c for r in reports for c in r.claims)
    return EXIT_VIOLATED if not ok else exit_code(verdict)


def _cmd_hist(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    p = _single(args.p, "--p", required=False) or Fraction(1, 2)
    if not 0 < p < 1:
        raise UsageError("--p must lie in (0, 1)")
    columns, rows = emit_histogram(args.n, p, _precision(args))
    _write(rows_to_csv(columns, rows), args.out)
    return EXIT_OK


def _cmd_lemmas(args: argparse.Namespace) -> int:
    config = SweepConfig("lemmas", 1, 1, 1, (), (), _precision(args), args.out)
    columns, rows, verdict = run_sweep(config)
    if args.format == "csv":
        text = rows_to_csv(columns, rows)
    else:
        text = "".join(" ".join(f"{c}={r[c]}" for c in columns) + "\n" for r in rows)
    _write(text, args.out)
    return exit_code(verdict)


COMMANDS = {
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
    "wallis": _cmd_wallis,
    "hist": _cmd_hist,
    "lemmas": _cmd_lemmas,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"binocert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
