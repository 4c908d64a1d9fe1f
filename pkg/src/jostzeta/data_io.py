"""Reference-table parsers and text serialisation of results.

Formats
-------
Zero tables
    One height per line (``bare``) or ``index height`` (``indexed``); the
    layout is detected from the first non-comment line.  ``#`` starts a
    comment line.
Prime tables
    One prime per line.
Comparison CSV
    Header ``n,re_beta,im_beta,residual,E,G,t_hat,p_hat,t_true,p_true,
    ratio_t,ratio_p``, 12 significant digits, empty cells for missing
    ground truth, LF line endings.
Zero catalogs
    CSV ``n,re_beta,im_beta,residual,iterations,certified`` after a
    ``# v=<strength>`` line; floats written with ``repr`` so reloads are
    bit-exact.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import MalformedLine, NonMonotonic, SampleCheckFailed
from .jost import JostZero
from .number_theory.primes import PrimeTable, is_prime
from .number_theory.zeta import ZetaZeroTable
from .spectral import observables

PathLike = Union[str, Path]

CSV_COLUMNS = ("n", "re_beta", "im_beta", "residual", "E", "G", "t_hat", "p_hat",
               "t_true", "p_true", "ratio_t", "ratio_p")
CATALOG_COLUMNS = ("n", "re_beta", "im_beta", "residual", "iterations", "certified")
SIG_DIGITS = 12


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    re_beta: float
    im_beta: float
    residual: float
    E: float
    G: float
    t_hat: float
    p_hat: float
    t_true: Optional[float] = None
    p_true: Optional[float] = None
    ratio_t: Optional[float] = None
    ratio_p: Optional[float] = None


def _lines(path: PathLike, comment_prefix: str):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith(comment_prefix):
                continue
            yield lineno, text


def parse_zero_table(path: PathLike, comment_prefix: str = "#") -> ZetaZeroTable:
    """Read an Odlyzko-style table of zeta zero heights.

    Raises
    ------
    MalformedLine
        A line that does not parse, or changes layout mid-file.
    NonMonotonic
        Heights (or indices) that fail to increase.
    """
    layout = None
    indices, heights, linenos = [], [], []
    for lineno, text in _lines(path, comment_prefix):
        tokens = text.split()
        if layout is None:
            if len(tokens) not in (1, 2):
                raise MalformedLine(f"expected 1 or 2 columns, got {len(tokens)}", lineno)
            layout = "bare" if len(tokens) == 1 else "indexed"
        if len(tokens) != (1 if layout == "bare" else 2):
            raise MalformedLine(f"{layout} layout expects {1 if layout == 'bare' else 2} columns", lineno)
        try:
            if layout == "bare":
                idx, h = len(heights) + 1, float(tokens[0])
            else:
                idx, h = int(tokens[0]), float(tokens[1])
        except ValueError as exc:
            raise MalformedLine(str(exc), lineno) from None
        if not math.isfinite(h) or h <= 0:
            raise MalformedLine(f"height must be positive and finite, got {tokens[-1]}", lineno)
        indices.append(idx)
        heights.append(h)
        linenos.append(lineno)
    if not heights:
        raise MalformedLine("no data lines")
    h = np.array(heights)
    bad = np.flatnonzero(np.diff(h) <= 0)
    if len(bad):
        raise NonMonotonic(f"heights not increasing at lines {[linenos[i + 1] for i in bad[:10]]}",
                           indices=[linenos[i + 1] for i in bad])
    ind = np.array(indices)
    bad = np.flatnonzero(np.diff(ind) <= 0)
    if len(bad):
        raise NonMonotonic(f"indices not increasing at lines {[linenos[i + 1] for i in bad[:10]]}",
                           indices=[linenos[i + 1] for i in bad])
    return ZetaZeroTable(heights=h, source="ingested", indices=ind)


def parse_prime_table(path: PathLike, comment_prefix: str = "#", sample_fraction: float = 0.01,
                      seed: int = 0) -> PrimeTable:
    """Read one prime per line, spot-checking a random sample by trial division."""
    values, linenos = [], []
    for lineno, text in _lines(path, comment_prefix):
        tokens = text.split()
        if len(tokens) != 1:
            raise MalformedLine(f"expected one integer, got {len(tokens)} columns", lineno)
        try:
            values.append(int(tokens[0]))
        except ValueError as exc:
            raise MalformedLine(str(exc), lineno) from None
        linenos.append(lineno)
    if not values:
        raise MalformedLine("no data lines")
    arr = np.array(values, dtype=np.int64)
    bad = np.flatnonzero(np.diff(arr) <= 0)
    if len(bad):
        raise NonMonotonic(f"primes not increasing at lines {[linenos[i + 1] for i in bad[:10]]}",
                           indices=[linenos[i + 1] for i in bad])
    rng = random.Random(seed)
    count = max(1, int(math.ceil(sample_fraction * len(values))))
    for i in sorted(rng.sample(range(len(values)), count)):
        if not is_prime(values[i]):
            raise SampleCheckFailed(f"line {linenos[i]}: {values[i]} is not prime")
    if values[0] != 2:
        raise SampleCheckFailed(f"prime table must start at 2, starts at {values[0]}")
    return PrimeTable(primes=arr, limit=int(arr[-1]))


# ---------------------------------------------------------------------------
# comparison rows

def build_rows(zeros: Sequence[JostZero], zeta: Optional[ZetaZeroTable] = None,
               primes: Optional[PrimeTable] = None) -> list[ComparisonRow]:
    """Join estimates from ``zeros`` with whatever ground truth is available."""
    rows = []
    for zero in zeros:
        obs = observables(zero)
        t_true = p_true = None
        if zeta is not None:
            found = zeta.lookup([zero.n])[0]
            t_true = None if np.isnan(found) else float(found)
        if primes is not None and zero.n <= len(primes.primes):
            p_true = float(primes.primes[zero.n - 1])
        rows.append(ComparisonRow(
            n=zero.n, re_beta=zero.beta.real, im_beta=zero.beta.imag, residual=zero.residual,
            E=obs.E, G=obs.G, t_hat=obs.t_hat, p_hat=obs.p_hat,
            t_true=t_true, p_true=p_true,
            ratio_t=None if t_true is None else t_true / obs.t_hat,
            ratio_p=None if p_true is None else p_true / obs.p_hat,
        ))
    return rows


def format_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.{SIG_DIGITS}g}"


def write_table(rows: Iterable[Sequence], header: Sequence[str], dest) -> None:
    """Write a plain CSV table with the package's number format.

    ``dest`` is a path or an open text stream.
    """
    if hasattr(dest, "write"):
        writer = csv.writer(dest, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(x) for x in row])
        return
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        write_table(rows, header, fh)


def write_csv(rows: Iterable[ComparisonRow], dest) -> None:
    write_table(([getattr(r, c) for c in CSV_COLUMNS] for r in rows), CSV_COLUMNS, dest)


def _parse_cell(name: str, text: str, lineno: int):
    if text == "":
        if name in ("t_true", "p_true", "ratio_t", "ratio_p"):
            return None
        raise MalformedLine(f"column {name} may not be empty", lineno)
    try:
        return int(text) if name == "n" else float(text)
    except ValueError:
        raise MalformedLine(f"bad value {text!r} in column {name}", lineno) from None


def read_csv(path: PathLike) -> list[ComparisonRow]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_COLUMNS:
            raise MalformedLine(f"unexpected header {header}", 1)
        rows = []
        for lineno, cells in enumerate(reader, start=2):
            if len(cells) != len(CSV_COLUMNS):
                raise MalformedLine(f"expected {len(CSV_COLUMNS)} cells, got {len(cells)}", lineno)
            rows.append(ComparisonRow(*(_parse_cell(c, t, lineno) for c, t in zip(CSV_COLUMNS, cells))))
    return rows


def write_json(rows: Iterable[ComparisonRow], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump([asdict(r) for r in rows], fh, indent=1)
        fh.write("\n")


def read_json(path: PathLike) -> list[ComparisonRow]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    names = [f.name for f in fields(ComparisonRow)]
    return [ComparisonRow(**{k: item.get(k) for k in names}) for item in data]


# ---------------------------------------------------------------------------
# zero catalogs

def write_catalog(zeros: Iterable[JostZero], v: float, path: PathLike) -> None:
    buf = io.StringIO()
    buf.write(f"# v={v!r}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CATALOG_COLUMNS)
    for z in zeros:
        writer.writerow([z.n, repr(z.beta.real), repr(z.beta.imag), repr(z.residual),
                         z.iterations, int(z.certified)])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_catalog(path: PathLike) -> tuple[float, list[JostZero]]:
    """Load a catalog written by :func:`write_catalog`; returns (v, zeros)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("# v="):
            raise MalformedLine("missing '# v=' line", 1)
        try:
            v = float(first[4:])
        except ValueError:
            raise MalformedLine(f"bad barrier strength {first[4:].strip()!r}", 1) from None
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CATALOG_COLUMNS:
            raise MalformedLine(f"unexpected header {header}", 2)
        zeros = []
        for lineno, cells in enumerate(reader, start=3):
            if len(cells) != len(CATALOG_COLUMNS):
                raise MalformedLine(f"expected {len(CATALOG_COLUMNS)} cells, got {len(cells)}", lineno)
            try:
                n, re, im, res, its, cert = cells
                zero = JostZero(n=int(n), beta=complex(float(re), float(im)), residual=float(res),
                                iterations=int(its), certified=bool(int(cert)))
            except ValueError as exc:
                raise MalformedLine(str(exc), lineno) from None
            if zero.n != len(zeros) + 1:
                raise MalformedLine(f"expected n={len(zeros) + 1}, got {zero.n}", lineno)
            zeros.append(zero)
    return v, zeros
