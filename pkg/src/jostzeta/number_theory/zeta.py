"""Riemann zeta on Re z > 1, the Hardy Z function, and its zeros.

Zeros on the critical line are located from sign changes of Z between
Gram points, bisected to 1e-9.  Z is evaluated with the Riemann-Siegel
main sum plus correction terms C0..C4 for t >= 50 and by Euler-Maclaurin
summation of zeta(1/2 + it) below that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import bernoulli, lambertw

from ..errors import CountMismatch, DomainError
from .primes import PrimeTable

__all__ = [
    "ZetaZeroTable",
    "GramPoint",
    "zeta_dirichlet",
    "euler_product",
    "riemann_siegel_theta",
    "theta_derivative",
    "zeta_em",
    "hardy_z",
    "gram_point",
    "gram_points",
    "gram_law_fraction",
    "find_zeta_zeros",
    "zeta_height_asymptotic",
    "zero_count_estimate",
]

TWO_PI = 2 * math.pi
EM_SWITCH = 50.0
RS_ORDER = 4
BISECT_WIDTH = 5e-10
MAX_DEPTH = 12


@dataclass
class ZetaZeroTable:
    """Ordered heights t_n of zeros 1/2 + i t_n.

    ``indices`` holds the zero number of each height (1-based).  Computed
    tables are contiguous from 1; ingested tables may start anywhere.
    """

    heights: np.ndarray
    source: str = "computed"
    indices: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        self.heights = np.asarray(self.heights, dtype=float)
        if self.indices is None:
            self.indices = np.arange(1, len(self.heights) + 1)
        else:
            self.indices = np.asarray(self.indices, dtype=np.int64)
        if len(self.indices) != len(self.heights):
            raise ValueError("indices and heights differ in length")
        if np.any(np.diff(self.heights) <= 0):
            raise ValueError("zeta zero heights must be strictly increasing")

    def __len__(self):
        return len(self.heights)

    def height(self, n: int) -> float:
        pos = np.searchsorted(self.indices, n)
        if pos >= len(self.indices) or self.indices[pos] != n:
            raise KeyError(f"zero #{n} not in table")
        return float(self.heights[pos])

    def lookup(self, ns) -> np.ndarray:
        """Heights for indices ``ns``; NaN where absent."""
        ns = np.asarray(ns)
        pos = np.clip(np.searchsorted(self.indices, ns), 0, max(len(self.indices) - 1, 0))
        out = np.full(ns.shape, np.nan)
        if len(self.indices):
            hit = self.indices[pos] == ns
            out[hit] = self.heights[pos[hit]]
        return out


@dataclass(frozen=True)
class GramPoint:
    k: int
    g: float


# ---------------------------------------------------------------------------
# zeta for Re z > 1

def zeta_dirichlet(z: complex, terms: int = 1_000_000) -> complex:
    """Partial sum of n^-z for n <= terms; error O(terms^(1 - Re z))."""
    z = complex(z)
    if z.real <= 1:
        raise DomainError(f"Dirichlet series needs Re z > 1, got {z}")
    total = 0j
    chunk = 1 << 20
    # summed from the small tail upwards to limit rounding
    for stop in range(terms, 0, -chunk):
        start = max(1, stop - chunk + 1)
        n = np.arange(stop, start - 1, -1, dtype=float)
        total += complex(np.sum(np.exp(-z * np.log(n))))
    return total


def euler_product(z: complex, table: PrimeTable) -> complex:
    """Product of (1 - p^-z)^-1 over the primes in ``table``."""
    z = complex(z)
    if z.real <= 1:
        raise DomainError(f"Euler product needs Re z > 1, got {z}")
    p = table.primes.astype(float)
    # sum of logs avoids a long running product
    return complex(np.exp(-np.sum(np.log1p(-np.exp(-z * np.log(p))))))


# ---------------------------------------------------------------------------
# theta, Z

def riemann_siegel_theta(t):
    """Riemann-Siegel theta by its asymptotic series (t >= 10)."""
    t = np.asarray(t, dtype=float)
    out = (t / 2) * np.log(t / TWO_PI) - t / 2 - math.pi / 8
    inv = 1 / t
    inv2 = inv * inv
    out = out + inv * (1 / 48 + inv2 * (7 / 5760 + inv2 * (31 / 80640 + inv2 * (381 / 1290240))))
    return float(out) if out.ndim == 0 else out


def theta_derivative(t):
    t = np.asarray(t, dtype=float)
    inv2 = 1 / (t * t)
    out = 0.5 * np.log(t / TWO_PI) - inv2 * (1 / 48 + inv2 * (7 / 1920 + inv2 * (31 / 16128)))
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def _bernoulli_ratios(m: int) -> np.ndarray:
    # B_{2k} / (2k)! for k = 1..m
    b = bernoulli(2 * m)
    return np.array([b[2 * k] / math.factorial(2 * k) for k in range(1, m + 1)])


def zeta_em(s: complex, n_terms: Optional[int] = None, m: int = 25) -> complex:
    """zeta(s) by Euler-Maclaurin summation, for moderate |Im s|."""
    s = complex(s)
    if s == 1:
        raise DomainError("pole at s = 1")
    n_big = n_terms if n_terms is not None else 20 + int(abs(s.imag) / math.pi)
    k = np.arange(1, n_big, dtype=float)
    head = complex(np.sum(np.exp(-s * np.log(k))))
    log_n = math.log(n_big)
    n_pow = np.exp(-s * log_n)  # N^-s
    total = head + n_big * n_pow / (s - 1) + n_pow / 2
    ratios = _bernoulli_ratios(m)
    poch = s  # s (s+1) ... (s + 2k - 2)
    term_pow = n_pow / n_big  # N^(-s-2k+1) for k = 1
    for j in range(1, m + 1):
        total += ratios[j - 1] * poch * term_pow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        term_pow /= n_big * n_big
    return total


@lru_cache(maxsize=None)
def _rs_coefficients():
    """Polynomials in x = p - 1/2 for the corrections C0..C4.

    Built from the Taylor series of
    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) about p = 1/2,
    computed once in extended precision (the quotient has removable
    singularities that defeat double precision).
    """
    import mpmath

    deg = 70
    with mpmath.workdps(150):
        pi = mpmath.pi
        ca, sa = mpmath.cos(5 * pi / 8), mpmath.sin(5 * pi / 8)
        num = [mpmath.mpf(0)] * (deg + 1)
        den = [mpmath.mpf(0)] * (deg + 1)
        for k in range(deg // 4 + 1):
            if 4 * k <= deg:
                num[4 * k] += -ca * (-1) ** k * (2 * pi) ** (2 * k) / mpmath.factorial(2 * k)
            if 4 * k + 2 <= deg:
                num[4 * k + 2] += -sa * (-1) ** k * (2 * pi) ** (2 * k + 1) / mpmath.factorial(2 * k + 1)
        for k in range(deg // 2 + 1):
            den[2 * k] = (-1) ** k * (2 * pi) ** (2 * k) / mpmath.factorial(2 * k)
        psi = []
        for i in range(deg + 1):
            psi.append((num[i] - sum(den[j] * psi[i - j] for j in range(1, i + 1))) / den[0])

        def deriv(j):
            return [psi[i + j] * mpmath.ff(i + j, j) for i in range(deg + 1 - j)]

        def combo(*terms):
            out = [mpmath.mpf(0)] * (deg + 1)
            for coef, j in terms:
                for i, c in enumerate(deriv(j)):
                    out[i] += coef * c
            return np.array([float(c) for c in out])

        p2, p4, p6, p8 = pi ** 2, pi ** 4, pi ** 6, pi ** 8
        return (
            combo((1, 0)),
            combo((-1 / (96 * p2), 3)),
            combo((1 / (64 * p2), 2), (1 / (18432 * p4), 6)),
            combo((-1 / (64 * p2), 1), (-1 / (3840 * p4), 5), (-1 / (5308416 * p6), 9)),
            combo((1 / (128 * p2), 0), (mpmath.mpf(19) / (24576 * p4), 4),
                  (mpmath.mpf(11) / (5898240 * p6), 8), (1 / (2038431744 * p8), 12)),
        )


def _z_riemann_siegel(t: np.ndarray, order: int) -> np.ndarray:
    a = np.sqrt(t / TWO_PI)
    n = np.floor(a).astype(np.int64)
    p = a - n
    theta = riemann_siegel_theta(t)
    out = np.empty_like(t)
    n_max = int(n.max())
    rows = max(1, 4_000_000 // n_max)
    k = np.arange(1, n_max + 1, dtype=float)
    log_k = np.log(k)
    inv_sqrt_k = 1 / np.sqrt(k)
    for lo in range(0, len(t), rows):
        sl = slice(lo, lo + rows)
        phase = theta[sl, None] - t[sl, None] * log_k[None, :]
        terms = np.cos(phase) * inv_sqrt_k[None, :]
        terms[k[None, :] > n[sl, None]] = 0.0
        out[sl] = 2 * terms.sum(axis=1)
    coeffs = _rs_coefficients()
    x = p - 0.5
    corr = np.zeros_like(t)
    a_pow = np.ones_like(t)
    for j in range(order + 1):
        corr += np.polynomial.polynomial.polyval(x, coeffs[j]) * a_pow
        a_pow = a_pow / a
    sign = np.where((n - 1) % 2 == 0, 1.0, -1.0)
    return out + sign * (t / TWO_PI) ** -0.25 * corr


def hardy_z(t, order: int = RS_ORDER):
    """Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + i t), real for real t >= 10.

    ``order`` selects how many Riemann-Siegel corrections are kept
    (0 keeps only C0).
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.empty_like(t)
    low = t < EM_SWITCH
    if np.any(low):
        tl = t[low]
        th = riemann_siegel_theta(np.maximum(tl, 1.0))
        out[low] = [(np.exp(1j * a) * zeta_em(complex(0.5, b))).real for a, b in zip(np.atleast_1d(th), tl)]
    if np.any(~low):
        out[~low] = _z_riemann_siegel(t[~low], order)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# Gram points

_PI_LD = np.arccos(np.longdouble(-1))


def gram_residual(g, ks):
    """theta(g) - k pi in extended precision where the platform has it.

    In double precision theta near 1e5 carries a few ulp (~1e-10) of
    rounding, which is the size of the residual being asked for.
    """
    t = np.asarray(g, dtype=np.longdouble)
    ks = np.asarray(ks, dtype=np.longdouble)
    head = (t / 2) * np.log(t / (2 * _PI_LD)) - t / 2 - _PI_LD / 8 - ks * _PI_LD
    inv = 1 / t
    inv2 = inv * inv
    tail = inv * (np.longdouble(1) / 48 + inv2 * (np.longdouble(7) / 5760
                  + inv2 * (np.longdouble(31) / 80640 + inv2 * (np.longdouble(381) / 1290240))))
    out = (head + tail).astype(float)
    return float(out) if out.ndim == 0 else out


def gram_points(ks) -> np.ndarray:
    """Solutions g_k of theta(g) = k pi, vectorised over k >= -1."""
    ks = np.asarray(ks, dtype=float)
    arg = (ks + 0.125) / math.e
    g = TWO_PI * math.e * np.exp(lambertw(arg).real)
    for _ in range(60):
        step = gram_residual(g, ks) / theta_derivative(g)
        g = g - step
        if np.all(np.abs(step) <= 1e-15 * g):
            break
    # one more pass at full precision of the residual
    return g - gram_residual(g, ks) / theta_derivative(g)


def gram_point(k: int) -> GramPoint:
    if k < 0:
        raise ValueError("k must be >= 0")
    return GramPoint(k=k, g=float(gram_points(k)))


def gram_law_fraction(k_max: int) -> float:
    """Share of Gram points g_0..g_k_max with (-1)^k Z(g_k) > 0."""
    ks = np.arange(0, k_max + 1)
    z = hardy_z(gram_points(ks))
    return float(np.mean(np.where(ks % 2 == 0, z, -z) > 0))


# ---------------------------------------------------------------------------
# zeros

def zero_count_estimate(T) -> int:
    """floor(theta(T)/pi) + 1."""
    return int(math.floor(riemann_siegel_theta(T) / math.pi)) + 1


def _sign_changes(ts: np.ndarray, zs: np.ndarray):
    idx = np.flatnonzero(np.signbit(zs[:-1]) != np.signbit(zs[1:]))
    return ts[idx], ts[idx + 1], zs[idx]


def _block_brackets(ts, zs, expected, order):
    """Brackets of the sign changes inside one Gram block.

    ``ts`` are the Gram points bounding the block.  Each Gram interval is
    halved repeatedly (up to MAX_DEPTH times) until the count matches.
    """
    lo, hi, zlo = _sign_changes(ts, zs)
    depth = 0
    while len(lo) != expected and depth < MAX_DEPTH:
        depth += 1
        pieces = 1 << depth
        frac = np.arange(pieces) / pieces
        grid = (ts[:-1, None] + (ts[1:] - ts[:-1])[:, None] * frac[None, :]).ravel()
        grid = np.append(grid, ts[-1])
        vals = hardy_z(grid, order)
        lo, hi, zlo = _sign_changes(grid, vals)
    if len(lo) != expected:
        raise CountMismatch(
            f"Gram block [{ts[0]:.6f}, {ts[-1]:.6f}]: found {len(lo)} sign changes, "
            f"expected {expected}", block=(float(ts[0]), float(ts[-1])))
    return lo, hi, zlo


def _bisect(lo, hi, zlo, order):
    lo, hi, zlo = lo.copy(), hi.copy(), zlo.copy()
    while np.max(hi - lo) > BISECT_WIDTH:
        mid = (lo + hi) / 2
        zm = hardy_z(mid, order)
        left = np.signbit(zm) == np.signbit(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)
    return (lo + hi) / 2


def find_zeta_zeros(n_max: int, order: int = RS_ORDER) -> ZetaZeroTable:
    """First ``n_max`` zeros of zeta on the critical line.

    Gram points are scanned in blocks bounded by good Gram points; each
    block must hold as many sign changes of Z as Gram intervals.  The zero
    count is then checked against floor(theta(T)/pi) + 1 at every power of
    ten below the last height.

    Raises
    ------
    CountMismatch
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    k_top = n_max + 8
    while True:
        ks = np.arange(-1, k_top + 1)
        pts = gram_points(ks)
        # below the first zero Z < 0, so t = 10 stands in for g_{-1} ~ 9.67
        pts[0] = 10.0
        zs = hardy_z(pts, order)
        good = np.flatnonzero(np.where(ks % 2 == 0, zs, -zs) > 0)
        if good[0] != 0:
            raise CountMismatch("Z(10) has the wrong sign", block=(10.0, float(pts[1])))
        if ks[good[-1]] + 1 >= n_max:
            break
        k_top += 16
    los, his, zlos = [], [], []
    simple = []
    for a, b in zip(good[:-1], good[1:]):
        if b - a == 1 and np.signbit(zs[a]) != np.signbit(zs[b]):
            simple.append(a)
            continue
        lo, hi, zlo = _block_brackets(pts[a:b + 1], zs[a:b + 1], b - a, order)
        los.append(lo)
        his.append(hi)
        zlos.append(zlo)
    simple = np.asarray(simple, dtype=np.int64)
    lo = np.concatenate([pts[simple]] + los)
    hi = np.concatenate([pts[simple + 1]] + his)
    zlo = np.concatenate([zs[simple]] + zlos)
    heights = np.sort(_bisect(lo, hi, zlo, order))
    _check_counts(heights)
    return ZetaZeroTable(heights=heights[:n_max], source="computed")


def _check_counts(heights: np.ndarray) -> None:
    top = heights[-1]
    T = 100.0
    while T < top:
        found = int(np.searchsorted(heights, T))
        expected = zero_count_estimate(T)
        if abs(found - expected) > 1:
            raise CountMismatch(f"{found} zeros below T={T:g}, counting function gives {expected}",
                                block=(0.0, T))
        T *= 10


def zeta_height_asymptotic(n):
    """2 pi n / ln n (n >= 2)."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 2):
        raise ValueError("n must be >= 2 (ln 1 = 0)")
    out = TWO_PI * n / np.log(n)
    return float(out) if out.ndim == 0 else out
