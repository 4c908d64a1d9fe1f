"""Jost function of the s-wave spherical barrier and its complex zeros.

Everything is dimensionless (R = 1): ``beta = kR`` is the wave number and
``v = V0 R**2`` the barrier strength.  The working function is the entire
function

    G(beta; v) = C(u) - i beta S(u),   u = beta**2 - v,
    C(u) = cos(sqrt u),  S(u) = sin(sqrt u) / sqrt u,

whose zeros solve ``sqrt(beta^2 - v) cot sqrt(beta^2 - v) = i beta``.  The
normalised Jost function is ``f+(beta) = exp(i beta) G(beta; v)``, equal to
one for the free particle.  ``u = beta^2 - v`` is used instead of
``v - beta^2`` so that the free limit is exact; C and S are even in the
square root, so both conventions have the same zeros.

Near a zero with large ``|beta|`` the two terms of ``C - i beta S`` are of
size ``exp(|Im beta|)`` and cancel down to ``exp(-|Im beta|)``.  The
evaluation below uses the algebraically identical form

    G = exp(-i w) - i (beta - w) S(u),   w = sqrt(u) on the branch near beta,

in which no such cancellation occurs, so residuals stay at rounding level
for every index.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    CertificationFailure,
    ConvergenceFailure,
    EmptyCatalog,
    NoZerosError,
)

__all__ = [
    "Barrier",
    "JostZero",
    "RootConfig",
    "PoleKind",
    "jost_reduced",
    "jost_reduced_derivative",
    "jost_reduced_array",
    "jost_full",
    "asymptotic_seed",
    "asymptotic_generic",
    "cell_bounds",
    "winding_number",
    "find_zero",
    "find_zeros",
    "s_matrix",
    "phase_shift",
    "hadamard_reconstruct",
    "classify_virtual",
]

_SERIES_TERMS = 14
# classify_virtual: "virtual" once the width exceeds this multiple of the energy
VIRTUAL_WIDTH_RATIO = 2.0


@dataclass(frozen=True)
class Barrier:
    """Repulsive square barrier of dimensionless strength ``v = V0 R^2``."""

    v: float

    def __post_init__(self):
        if not math.isfinite(self.v) or self.v < 0:
            raise ValueError(f"barrier strength must be finite and >= 0, got {self.v}")


@dataclass(frozen=True)
class JostZero:
    """Fourth-quadrant zero ``beta_n`` of the Jost function.

    The mirror zero ``-conj(beta)`` is implied and never stored.
    """

    n: int
    beta: complex
    residual: float
    iterations: int
    certified: bool


@dataclass(frozen=True)
class RootConfig:
    tol_residual: float = 1e-12
    tol_step: float = 1e-12
    max_iter: int = 50
    series_switch: float = 1e-3
    # None: certify cells n <= 100 only
    certify: Optional[bool] = None

    def __post_init__(self):
        if not (self.tol_residual > 0 and self.tol_step > 0 and self.series_switch > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    def certifies(self, n: int) -> bool:
        if self.certify is None:
            return n <= 100
        return self.certify


class PoleKind(str, Enum):
    NARROW = "narrow"
    VIRTUAL = "virtual"


# ---------------------------------------------------------------------------
# evaluation of G

def _series(u: complex):
    """C(u), S(u) by power series (small |u|)."""
    c = s = 0j
    term = 1 + 0j  # (-u)^k
    fact2k = 1.0   # (2k)!
    for k in range(_SERIES_TERMS):
        c += term / fact2k
        s += term / (fact2k * (2 * k + 1))
        term *= -u
        fact2k *= (2 * k + 1) * (2 * k + 2)
    return c, s


def _series_derivs(u: complex):
    """C'(u), S'(u) by series, without dividing by u."""
    dc = ds = 0j
    term = 1 + 0j  # (-u)^(k-1)
    fact2k = 2.0   # (2k)! for k = 1
    for k in range(1, _SERIES_TERMS):
        dc += -k * term / fact2k
        ds += -k * term / (fact2k * (2 * k + 1))
        term *= -u
        fact2k *= (2 * k + 1) * (2 * k + 2)
    return dc, ds


def _interior_root(beta: complex, v: float) -> complex:
    """sqrt(beta^2 - v) on the branch closest to beta."""
    if v == 0:
        return beta
    if abs(beta) ** 2 > 4 * v:
        return beta * cmath.sqrt(1 - v / (beta * beta))
    w = cmath.sqrt(beta * beta - v)
    if (w * beta.conjugate()).real < 0:
        w = -w
    return w


def _beta_minus_root(beta: complex, w: complex, v: float) -> complex:
    plus = beta + w
    if abs(plus) >= abs(beta - w) and plus != 0:
        return v / plus
    return beta - w


def _reduced_from_root(beta: complex, w: complex, v: float) -> complex:
    delta = _beta_minus_root(beta, w, v)
    return cmath.exp(-1j * beta) * cmath.exp(1j * delta) - 1j * delta * (cmath.sin(w) / w)


def jost_reduced(beta: complex, barrier: Barrier, series_switch: float = 1e-3) -> complex:
    """Entire function G(beta; v) whose zeros are the Jost zeros."""
    beta = complex(beta)
    v = barrier.v
    u = beta * beta - v
    if abs(u) < series_switch:
        c, s = _series(u)
        return c - 1j * beta * s
    return _reduced_from_root(beta, _interior_root(beta, v), v)


def jost_reduced_derivative(beta: complex, barrier: Barrier, series_switch: float = 1e-3) -> complex:
    """dG/dbeta."""
    beta = complex(beta)
    v = barrier.v
    u = beta * beta - v
    if abs(u) < series_switch:
        _, s = _series(u)
        dc, ds = _series_derivs(u)
        return 2 * beta * dc - 1j * s - 2j * beta * beta * ds
    w = _interior_root(beta, v)
    delta = _beta_minus_root(beta, w, v)
    s = cmath.sin(w) / w
    c = cmath.cos(w)
    e = cmath.exp(-1j * beta) * cmath.exp(1j * delta)
    # d/dbeta of exp(-iw) - i delta S with dw = beta/w, d delta = -delta/w
    return -1j * (beta / w) * e + (1j * delta / w) * (s - beta * (c - s) / w)


def jost_reduced_array(beta: np.ndarray, barrier: Barrier, series_switch: float = 1e-3) -> np.ndarray:
    """Vectorised G(beta; v) for grid scans and phase tracking."""
    beta = np.asarray(beta, dtype=complex)
    v = barrier.v
    u = beta * beta - v
    out = np.empty_like(beta)
    small = np.abs(u) < series_switch
    if np.any(small):
        out[small] = [jost_reduced(b, barrier, series_switch) for b in beta[small]]
    big = ~small
    if np.any(big):
        b = beta[big]
        with np.errstate(divide="ignore", invalid="ignore"):
            far = np.abs(b) ** 2 > 4 * v
            w_far = b * np.sqrt(1 - v / np.where(far, b * b, 1))
            w_near = np.sqrt(b * b - v)
            w_near = np.where((w_near * np.conj(b)).real < 0, -w_near, w_near)
            w = np.where(far, w_far, w_near)
            plus = b + w
            minus = b - w
            delta = np.where((np.abs(plus) >= np.abs(minus)) & (plus != 0), v / plus, minus)
        out[big] = np.exp(-1j * b) * np.exp(1j * delta) - 1j * delta * (np.sin(w) / w)
    return out


def jost_full(beta: complex, barrier: Barrier, series_switch: float = 1e-3) -> complex:
    """Normalised Jost function f+(beta) = exp(i beta) G(beta; v)."""
    beta = complex(beta)
    return cmath.exp(1j * beta) * jost_reduced(beta, barrier, series_switch)


# ---------------------------------------------------------------------------
# asymptotics

def asymptotic_seed(n: int, barrier: Barrier) -> complex:
    """Large-n approximation of the n-th zero of the barrier Jost function.

    ``Re = n pi - L/(n pi)``, ``Im = -L + 1/(n pi)`` with
    ``L = ln(2 n pi / sqrt v)``.  Negative ``n`` gives the mirror zero
    ``-conj(seed(|n|))``.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if barrier.v <= 0:
        raise NoZerosError("asymptotic zeros need v > 0 (logarithm diverges at v = 0)")
    m = abs(n)
    npi = m * math.pi
    log_term = math.log(2 * npi / math.sqrt(barrier.v))
    seed = complex(npi - log_term / npi, -log_term + 1 / npi)
    return seed if n > 0 else -seed.conjugate()


def asymptotic_generic(n: int, sigma: float = 0.0) -> complex:
    """Two leading terms for a potential cut off as ``(R - r)^sigma``.

    Only a trend predictor: the O(1) term is unknown and dropped.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return complex(n * math.pi, -(sigma + 2) * math.log(n) / 2)


# ---------------------------------------------------------------------------
# root finding

def cell_bounds(n: int, barrier: Barrier):
    """Rectangle (re_lo, re_hi, im_lo, im_hi) that holds exactly one zero."""
    re_lo = (n - 0.5) * math.pi
    re_hi = (n + 0.5) * math.pi
    im_lo = -(math.log(2 * n * math.pi / math.sqrt(barrier.v)) + 3)
    return re_lo, re_hi, im_lo, -1e-6


def _in_cell(n: int, beta: complex) -> bool:
    return (n - 0.5) * math.pi < beta.real < (n + 0.5) * math.pi and beta.imag < 0


def _newton(beta: complex, barrier: Barrier, cfg: RootConfig):
    g = jost_reduced(beta, barrier, cfg.series_switch)
    for it in range(1, cfg.max_iter + 1):
        d = jost_reduced_derivative(beta, barrier, cfg.series_switch)
        if d == 0 or not cmath.isfinite(d):
            return beta, it, False
        step = g / d
        new = beta - step
        g_new = jost_reduced(new, barrier, cfg.series_switch)
        halvings = 0
        while abs(g_new) > abs(g) and halvings < 20:
            step /= 2
            new = beta - step
            g_new = jost_reduced(new, barrier, cfg.series_switch)
            halvings += 1
        beta, g = new, g_new
        if not cmath.isfinite(beta):
            return beta, it, False
        if abs(step) <= cfg.tol_step * max(1.0, abs(beta)) and abs(g) <= cfg.tol_residual:
            return beta, it, True
    return beta, cfg.max_iter, False


def _grid_minimum(n: int, barrier: Barrier, cfg: RootConfig, size: int = 64) -> complex:
    re_lo, re_hi, im_lo, im_hi = cell_bounds(n, barrier)
    re = np.linspace(re_lo, re_hi, size + 2)[1:-1]
    im = np.linspace(im_lo, im_hi, size)
    grid = re[None, :] + 1j * im[:, None]
    vals = np.abs(jost_reduced_array(grid, barrier, cfg.series_switch))
    i, j = np.unravel_index(np.nanargmin(vals), vals.shape)
    return complex(grid[i, j])


def winding_number(func, corners: Sequence[complex], samples: int = 32, max_depth: int = 24) -> float:
    """Winding number of ``func`` around the closed polygon through ``corners``.

    The argument increment is accumulated along each edge, bisecting any
    sub-segment across which the phase turns by more than pi/4.  Returns the
    raw (unrounded) number of turns.
    """
    total = 0.0
    pts = list(corners) + [corners[0]]
    for a, b in zip(pts[:-1], pts[1:]):
        ts = np.linspace(0.0, 1.0, samples + 1)
        zs = [a + (b - a) * t for t in ts]
        vals = [func(z) for z in zs]
        for k in range(samples):
            total += _arg_increment(func, zs[k], zs[k + 1], vals[k], vals[k + 1], max_depth)
    return total / (2 * math.pi)


def _arg_increment(func, za, zb, fa, fb, depth):
    if fa == 0 or fb == 0:
        raise CertificationFailure("function vanishes on the contour")
    step = cmath.phase(fb / fa)
    if abs(step) <= math.pi / 4 or depth == 0:
        return step
    zm = (za + zb) / 2
    fm = func(zm)
    return (_arg_increment(func, za, zm, fa, fm, depth - 1)
            + _arg_increment(func, zm, zb, fm, fb, depth - 1))


def _certify(n: int, barrier: Barrier, cfg: RootConfig) -> None:
    re_lo, re_hi, im_lo, im_hi = cell_bounds(n, barrier)
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo),
               complex(re_hi, im_hi), complex(re_lo, im_hi)]
    turns = winding_number(lambda z: jost_reduced(z, barrier, cfg.series_switch), corners)
    count = round(turns)
    if count != 1 or abs(turns - count) > 1e-6:
        raise CertificationFailure(f"cell winding number {turns:.6f}, expected 1", n=n, winding=turns)


def find_zero(n: int, barrier: Barrier, cfg: RootConfig = RootConfig()) -> JostZero:
    """Locate the zero in cell ``((n - 1/2) pi, (n + 1/2) pi)``.

    Newton from the asymptotic seed, with a grid-scan restart when Newton
    fails or wanders out of the cell.  Cells are certified by the argument
    principle when ``cfg.certifies(n)``.

    Raises
    ------
    NoZerosError
        If ``v == 0``.
    ConvergenceFailure, CertificationFailure
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if barrier.v == 0:
        raise NoZerosError("no zeros for the free particle (v = 0)")
    beta, its, ok = _newton(asymptotic_seed(n, barrier), barrier, cfg)
    if not (ok and _in_cell(n, beta)):
        start = _grid_minimum(n, barrier, cfg)
        beta, more, ok = _newton(start, barrier, cfg)
        its += more
        if not (ok and _in_cell(n, beta)):
            raise ConvergenceFailure("Newton failed after grid-scan fallback", n=n)
    certified = False
    if cfg.certifies(n):
        _certify(n, barrier, cfg)
        certified = True
    residual = abs(jost_reduced(beta, barrier, cfg.series_switch))
    return JostZero(n=n, beta=beta, residual=residual, iterations=its, certified=certified)


def _resolve_threads(threads: Union[int, str, None]) -> int:
    if threads in (None, "auto"):
        return os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ValueError("threads must be >= 1 or 'auto'")
    return threads


def find_zeros(n_max: int, barrier: Barrier, cfg: RootConfig = RootConfig(),
               threads: Union[int, str, None] = 1) -> list[JostZero]:
    """Zeros for n = 1..n_max, sorted by n.

    Each zero is computed independently, so the result does not depend on
    ``threads``.
    """
    if n_max < 1:
        raise ValueError("empty request: n_max must be >= 1")
    if barrier.v == 0:
        raise NoZerosError("no zeros for the free particle (v = 0)")
    workers = _resolve_threads(threads)
    indices = range(1, n_max + 1)
    if workers == 1:
        return [find_zero(n, barrier, cfg) for n in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        zeros = list(pool.map(lambda n: find_zero(n, barrier, cfg), indices, chunksize=64))
    return sorted(zeros, key=lambda z: z.n)


# ---------------------------------------------------------------------------
# scattering quantities

def s_matrix(beta: float, barrier: Barrier) -> complex:
    """S(beta) = f-(beta)/f+(beta) for real beta, with f- = conj(f+)."""
    f = jost_full(float(beta), barrier)
    return f.conjugate() / f


def phase_shift(beta: float, barrier: Barrier, step: float = 0.02) -> float:
    """Continuous phase shift delta = -arg f+(beta), unwrapped from beta = 0."""
    beta = float(beta)
    m = max(2, int(math.ceil(abs(beta) / step)) + 1)
    ray = np.linspace(0.0, beta, m)
    vals = np.exp(1j * ray) * jost_reduced_array(ray.astype(complex), barrier)
    unwrapped = np.unwrap(np.angle(vals))
    end = cmath.phase(jost_full(beta, barrier))
    turns = round((unwrapped[-1] - end) / (2 * math.pi))
    return -(end + 2 * math.pi * turns)


def hadamard_reconstruct(beta: complex, zeros: Sequence[JostZero], barrier: Barrier) -> complex:
    """Truncated zero product for f+(beta), pairing each zero with its mirror."""
    if not zeros:
        raise EmptyCatalog("Hadamard product needs at least one zero")
    beta = complex(beta)
    prod = cmath.exp(1j * beta) * jost_reduced(0j, barrier)
    for z in zeros:
        prod *= (1 - beta / z.beta) * (1 + beta / z.beta.conjugate())
    return prod


def classify_virtual(zero: Union[JostZero, complex]) -> PoleKind:
    """Tag a pole "virtual" when its width exceeds twice its energy."""
    beta = complex(zero.beta if isinstance(zero, JostZero) else zero)
    energy = beta.real ** 2 - beta.imag ** 2
    width = 4 * abs(beta.real) * abs(beta.imag)
    return PoleKind.VIRTUAL if width > VIRTUAL_WIDTH_RATIO * energy else PoleKind.NARROW
