"""Maps from Jost zeros to critical-line points, zeta heights and primes.

For a zero ``beta = a - i b`` (a, b > 0):

* critical-line point ``z = 1/2 - i Re(beta) / (2 Im(beta)) = 1/2 + i a/(2b)``
* energy and width from ``beta^2 = E - i G/2``: ``E = a^2 - b^2``, ``G = 4ab``
* zeta-height estimate ``4 pi E / G`` and prime estimate ``G / (4 pi)``

Widths are taken as magnitudes so mirror zeros give identical observables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import OnAxisZeroWidth, ZeroImaginaryPart
from .jost import JostZero


@dataclass(frozen=True)
class CriticalPoint:
    z: complex
    source_n: int = 0


@dataclass(frozen=True)
class ResonanceObservables:
    n: int
    E: float
    G: float
    t_hat: float
    p_hat: float
    z: CriticalPoint


def to_critical_line(beta: complex, source_n: int = 0) -> CriticalPoint:
    beta = complex(beta)
    if beta.imag == 0:
        raise ZeroImaginaryPart(f"beta = {beta} lies on the real axis")
    return CriticalPoint(z=complex(0.5, -beta.real / (2 * beta.imag)), source_n=source_n)


def energy_width(beta: complex) -> tuple[float, float]:
    beta = complex(beta)
    a, b = beta.real, beta.imag
    return a * a - b * b, 4 * abs(a) * abs(b)


def height_estimate(beta: complex) -> float:
    """Energy/width ratio 4 pi E / G."""
    energy, width = energy_width(beta)
    if width == 0:
        raise OnAxisZeroWidth(f"beta = {beta} has zero width")
    return 4 * math.pi * energy / width


def height_ratio_estimate(beta: complex) -> float:
    """pi |Re beta| / |Im beta|, the large-n form of the energy/width ratio."""
    beta = complex(beta)
    if beta.imag == 0:
        raise ZeroImaginaryPart(f"beta = {beta} lies on the real axis")
    return math.pi * abs(beta.real) / abs(beta.imag)


def prime_estimate(beta: complex) -> float:
    return energy_width(beta)[1] / (4 * math.pi)


def pavlov_fadeev_pole(t: float) -> complex:
    """Pole t/2 - i/4 that the critical-line map sends to 1/2 + i t."""
    return complex(t / 2, -0.25)


def observables(zero: JostZero) -> ResonanceObservables:
    energy, width = energy_width(zero.beta)
    return ResonanceObservables(
        n=zero.n,
        E=energy,
        G=width,
        t_hat=height_estimate(zero.beta),
        p_hat=width / (4 * math.pi),
        z=to_critical_line(zero.beta, zero.n),
    )


def observables_catalog(zeros: Iterable[JostZero]) -> list[ResonanceObservables]:
    return [observables(z) for z in zeros]
