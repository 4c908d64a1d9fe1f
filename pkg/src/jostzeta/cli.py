"""Command-line interface.

    jostzeta zeros      --v 2 --n-max 100 --out zeros.csv
    jostzeta figure1    --v 2 --n-max 60000 --out fig1a.csv fig1b.csv
    jostzeta normalize  --v 2 --normalize-at 9880
    jostzeta validate   --n-max 10000 --out summary.json

Exit codes: 0 success, 1 usage, 2 computation failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import jost
from .data_io import build_rows, parse_prime_table, parse_zero_table, write_catalog, write_csv, write_table
from .errors import (
    CertificationFailure,
    ConvergenceFailure,
    CountMismatch,
    LimitTooSmall,
    MalformedLine,
    NoZerosError,
    NonMonotonic,
    SampleCheckFailed,
)
from .jost import Barrier, JostZero, RootConfig
from .number_theory.primes import nth_prime, sieve_for_count
from .number_theory.zeta import find_zeta_zeros
from .report import FIG1A_COLUMNS, FIG1B_COLUMNS, decade_medians, figure1_tables, normalization
from .validate import Validator

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunSpec:
    command: str
    v: float = 2.0
    n_max: int = 10_000
    sigma: float = 0.0
    zeta_source: str = "internal"
    prime_source: str = "internal"
    normalize_at: int = 9880
    out: list = field(default_factory=list)
    tol: float = 1e-12
    threads: str = "1"
    seed_only: bool = False
    catalog: Optional[str] = None

    @property
    def zeta_file(self):
        return None if self.zeta_source == "internal" else self.zeta_source[len("file:"):]

    @property
    def prime_file(self):
        return None if self.prime_source == "internal" else self.prime_source[len("file:"):]

    def root_config(self) -> RootConfig:
        return RootConfig(tol_residual=self.tol)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _threads(text):
    if text == "auto":
        return text
    if int(text) < 1:
        raise argparse.ArgumentTypeError("threads must be a positive integer or 'auto'")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--v", type=float, default=2.0, help="barrier strength V0 R^2 (default 2)")
    common.add_argument("--n-max", type=_positive_int, default=10_000, help="number of zeros (default 10000)")
    common.add_argument("--sigma", type=float, default=0.0, help="cutoff exponent for the generic asymptotic column")
    common.add_argument("--zeta-file", help="Odlyzko-format table of zeta zero heights")
    common.add_argument("--prime-file", help="table of primes, one per line")
    common.add_argument("--normalize-at", type=_positive_int, default=9880, help="index for Nz, Np (default 9880)")
    common.add_argument("--out", nargs="+", default=[], help="output path(s)")
    common.add_argument("--tol", type=float, default=1e-12, help="residual tolerance |G| (default 1e-12)")
    common.add_argument("--threads", type=_threads, default="1", help="worker count or 'auto'")
    common.add_argument("--seed-only", action="store_true", help="emit asymptotic seeds without Newton")
    common.add_argument("--catalog", help="zero catalog to write (zeros) or verify (validate)")

    parser = _Parser(prog="jostzeta", description="Jost zeros of the square barrier versus zeta zeros and primes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("zeros", parents=[common], help="zeros and their estimates as CSV")
    sub.add_parser("figure1", parents=[common], help="height and prime panels as two CSVs")
    sub.add_parser("normalize", parents=[common], help="normalisation factors Nz, Np")
    sub.add_parser("validate", parents=[common], help="run the invariant suite")
    return parser


def resolve(args) -> RunSpec:
    spec = RunSpec(
        command=args.command, v=args.v, n_max=args.n_max, sigma=args.sigma,
        zeta_source=f"file:{args.zeta_file}" if args.zeta_file else "internal",
        prime_source=f"file:{args.prime_file}" if args.prime_file else "internal",
        normalize_at=args.normalize_at, out=list(args.out), tol=args.tol,
        threads=args.threads, seed_only=args.seed_only, catalog=args.catalog,
    )
    if spec.tol <= 0:
        raise UsageError("--tol must be positive")
    if spec.v < 0:
        raise UsageError("--v must be >= 0")
    if spec.command == "figure1" and spec.out and len(spec.out) != 2:
        raise UsageError("figure1 takes two --out paths (height panel, prime panel)")
    if spec.command in ("zeros", "normalize", "validate") and len(spec.out) > 1:
        raise UsageError(f"{spec.command} takes at most one --out path")
    return spec


def _check_inputs(spec: RunSpec) -> None:
    for path in (spec.zeta_file, spec.prime_file):
        if path is not None and not Path(path).is_file():
            raise FileNotFoundError(f"no such file: {path}")


def _sources(spec: RunSpec, n: int):
    zeta = parse_zero_table(spec.zeta_file) if spec.zeta_file else find_zeta_zeros(n)
    primes = parse_prime_table(spec.prime_file) if spec.prime_file else sieve_for_count(n)
    return zeta, primes


def _catalog(spec: RunSpec) -> list[JostZero]:
    barrier = Barrier(spec.v)
    if barrier.v == 0:
        raise NoZerosError("no zeros for free particle (v = 0)")
    if spec.seed_only:
        out = []
        for n in range(1, spec.n_max + 1):
            seed = jost.asymptotic_seed(n, barrier)
            out.append(JostZero(n=n, beta=seed, residual=abs(jost.jost_reduced(seed, barrier)),
                                iterations=0, certified=False))
        return out
    return jost.find_zeros(spec.n_max, barrier, spec.root_config(), threads=spec.threads)


def cmd_zeros(spec: RunSpec) -> int:
    _check_inputs(spec)
    zeros = _catalog(spec)
    zeta = parse_zero_table(spec.zeta_file) if spec.zeta_file else None
    primes = parse_prime_table(spec.prime_file) if spec.prime_file else None
    rows = build_rows(zeros, zeta, primes)
    if spec.catalog:
        write_catalog(zeros, spec.v, spec.catalog)
    write_csv(rows, spec.out[0] if spec.out else sys.stdout)
    _trend_summary(zeros, spec.sigma)
    return EXIT_OK


def _trend_summary(zeros, sigma):
    """Decade medians of Im beta_n against the generic two-term asymptotic."""
    ns = [z.n for z in zeros if z.n >= 10]
    if not ns:
        return
    ratios = [z.beta.imag / jost.asymptotic_generic(z.n, sigma).imag for z in zeros if z.n >= 10]
    meds = decade_medians(ns, ratios, start=10)
    text = ", ".join(f"[{lo},{lo * 10}): {m:.4f}" for lo, m in meds)
    print(f"Im beta / generic asymptotic (sigma={sigma:g}) decade medians: {text}", file=sys.stderr)


def cmd_figure1(spec: RunSpec) -> int:
    _check_inputs(spec)
    zeros = _catalog(spec)
    zeta, primes = _sources(spec, spec.n_max)
    rows_a, rows_b = figure1_tables(zeros, zeta, primes, spec.normalize_at)
    out_a, out_b = spec.out or ["fig1a.csv", "fig1b.csv"]
    write_table(rows_a, FIG1A_COLUMNS, out_a)
    write_table(rows_b, FIG1B_COLUMNS, out_b)
    print(f"wrote {len(rows_a)} rows to {out_a} and {out_b}")
    return EXIT_OK


def cmd_normalize(spec: RunSpec) -> int:
    _check_inputs(spec)
    n = spec.normalize_at
    barrier = Barrier(spec.v)
    if barrier.v == 0:
        raise NoZerosError("no zeros for free particle (v = 0)")
    zero = jost.find_zero(n, barrier, spec.root_config())
    zeta, primes = _sources(spec, n)
    report = normalization(zero, zeta.height(n), float(nth_prime(primes, n)))
    report["v"] = spec.v
    text = json.dumps(report, indent=1)
    print(text)
    if spec.out:
        Path(spec.out[0]).write_text(text + "\n", encoding="utf-8")
    if report["small_n_caveat"]:
        print(f"warning: n={n} is far from the asymptotic regime", file=sys.stderr)
    return EXIT_OK


def cmd_validate(spec: RunSpec) -> int:
    if spec.catalog is not None and not Path(spec.catalog).is_file():
        raise FileNotFoundError(f"no such file: {spec.catalog}")
    validator = Validator(barrier=Barrier(spec.v), n_max=spec.n_max, cfg=spec.root_config(),
                          threads=spec.threads, catalog=spec.catalog, normalize_at=spec.normalize_at)
    results = validator.run()
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}", file=sys.stderr)
        if r.warning:
            print(f"warning: {r.name}: {r.warning}", file=sys.stderr)
    summary = {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
    text = json.dumps(summary, indent=1)
    if spec.out:
        Path(spec.out[0]).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK if summary["passed"] else EXIT_COMPUTE


COMMANDS = {"zeros": cmd_zeros, "figure1": cmd_figure1, "normalize": cmd_normalize, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = resolve(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"jostzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("run spec: " + json.dumps(asdict(spec)), file=sys.stderr)
    try:
        return COMMANDS[spec.command](spec)
    except (OSError, MalformedLine, NonMonotonic, SampleCheckFailed) as exc:
        print(f"jostzeta: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except NoZerosError as exc:
        print(f"jostzeta: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ConvergenceFailure, CertificationFailure, CountMismatch, LimitTooSmall, KeyError, ValueError) as exc:
        print(f"jostzeta: computation failure: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
