"""Primes by the sieve of Eratosthenes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import LimitTooSmall


@dataclass(frozen=True)
class PrimeTable:
    primes: np.ndarray
    limit: int

    def __len__(self):
        return len(self.primes)


def sieve(limit: int) -> PrimeTable:
    """All primes <= limit."""
    limit = int(limit)
    if limit < 2:
        raise LimitTooSmall(f"sieve limit must be >= 2, got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return PrimeTable(primes=np.flatnonzero(flags).astype(np.int64), limit=limit)


def prime_count_bound(n: int) -> int:
    """Upper bound for the n-th prime, n (ln n + ln ln n) for n >= 6."""
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def sieve_for_count(n: int) -> PrimeTable:
    """Sieve large enough to contain the first n primes."""
    return sieve(prime_count_bound(n))


def nth_prime(table: PrimeTable, n: int) -> int:
    """The n-th prime (1-based) from ``table``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > len(table.primes):
        raise LimitTooSmall(
            f"table holds {len(table.primes)} primes, need {n}; "
            f"re-sieve with limit >= {prime_count_bound(n)}")
    return int(table.primes[n - 1])


def prime_asymptotic(n) -> float:
    """n ln n."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 1):
        raise ValueError("n must be >= 1")
    out = n * np.log(n)
    return float(out) if out.ndim == 0 else out


def is_prime(m: int) -> bool:
    """Trial division."""
    m = int(m)
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, math.isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True
