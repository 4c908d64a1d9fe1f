"""Height and prime panel series, normalisation factors and trend summaries."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .jost import JostZero
from .number_theory.primes import PrimeTable, prime_asymptotic
from .number_theory.zeta import ZetaZeroTable, zeta_height_asymptotic
from .spectral import height_estimate, prime_estimate

FIG1A_COLUMNS = ("n", "t_hat", "t_asym", "t_true", "ratio_t", "t_hat_norm")
FIG1B_COLUMNS = ("n", "p_hat", "p_asym", "p_true", "ratio_p", "p_hat_norm")
SMALL_N = 100


def normalization(zero: JostZero, t_true: float, p_true: float) -> dict:
    """Height and prime factors, true value over estimate, at one zero."""
    t_hat = height_estimate(zero.beta)
    p_hat = prime_estimate(zero.beta)
    return {
        "n": zero.n,
        "beta": [zero.beta.real, zero.beta.imag],
        "t_true": t_true,
        "t_hat": t_hat,
        "Nz": t_true / t_hat,
        "p_true": p_true,
        "p_hat": p_hat,
        "Np": p_true / p_hat,
        "small_n_caveat": zero.n < SMALL_N,
    }


def _truth(ns: np.ndarray, zeta: Optional[ZetaZeroTable], primes: Optional[PrimeTable]):
    t_true = zeta.lookup(ns) if zeta is not None else np.full(len(ns), np.nan)
    p_true = np.full(len(ns), np.nan)
    if primes is not None:
        have = ns <= len(primes.primes)
        p_true[have] = primes.primes[ns[have] - 1]
    return t_true, p_true


def figure1_tables(zeros: Sequence[JostZero], zeta: Optional[ZetaZeroTable] = None,
                   primes: Optional[PrimeTable] = None, normalize_at: Optional[int] = None):
    """Rows for the height panel and the prime panel.

    Each row carries the estimate from the zero, the asymptotic curve, the
    ground truth, the deviation ratio (truth/estimate) and the estimate
    rescaled by the factor found at ``normalize_at``.  Missing values are
    ``None``.
    """
    ns = np.array([z.n for z in zeros], dtype=np.int64)
    t_hat = np.array([height_estimate(z.beta) for z in zeros])
    p_hat = np.array([prime_estimate(z.beta) for z in zeros])
    t_asym = np.full(len(ns), np.nan)
    t_asym[ns >= 2] = zeta_height_asymptotic(ns[ns >= 2])
    p_asym = np.asarray(prime_asymptotic(ns), dtype=float)
    t_true, p_true = _truth(ns, zeta, primes)
    ratio_t = t_true / t_hat
    ratio_p = p_true / p_hat
    nz = np_ = math.nan
    if normalize_at is not None and normalize_at in set(ns.tolist()):
        i = int(np.searchsorted(ns, normalize_at))
        nz, np_ = ratio_t[i], ratio_p[i]

    def cell(x):
        return None if not np.isfinite(x) else float(x)

    rows_a = [(int(n), cell(a), cell(b), cell(c), cell(d), cell(a * nz))
              for n, a, b, c, d in zip(ns, t_hat, t_asym, t_true, ratio_t)]
    rows_b = [(int(n), cell(a), cell(b), cell(c), cell(d), cell(a * np_))
              for n, a, b, c, d in zip(ns, p_hat, p_asym, p_true, ratio_p)]
    return rows_a, rows_b


def decade_medians(ns, values, start: int = 100, stop: Optional[int] = None):
    """Medians of ``values`` over [10^k, 10^(k+1)) windows from ``start``."""
    ns = np.asarray(ns)
    values = np.asarray(values, dtype=float)
    stop = int(ns.max()) if stop is None else stop
    out = []
    lo = start
    while lo <= stop:
        hi = min(lo * 10, stop + 1)
        sel = (ns >= lo) & (ns < hi) & np.isfinite(values)
        if np.any(sel):
            out.append((lo, float(np.median(values[sel]))))
        lo *= 10
    return out
