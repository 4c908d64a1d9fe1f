"""Complex zeros of the square-barrier Jost function compared with zeta zeros and primes."""

from .jost import (
    Barrier,
    JostZero,
    PoleKind,
    RootConfig,
    asymptotic_generic,
    asymptotic_seed,
    classify_virtual,
    find_zero,
    find_zeros,
    hadamard_reconstruct,
    jost_full,
    jost_reduced,
    phase_shift,
    s_matrix,
)
from .spectral import (
    CriticalPoint,
    ResonanceObservables,
    energy_width,
    height_estimate,
    observables,
    pavlov_fadeev_pole,
    prime_estimate,
    to_critical_line,
)

__version__ = "0.1.0"
