"""Ground truth from number theory: primes, zeta and its zeros."""

from .primes import PrimeTable, is_prime, nth_prime, prime_asymptotic, prime_count_bound, sieve, sieve_for_count
from .zeta import (
    GramPoint,
    ZetaZeroTable,
    euler_product,
    find_zeta_zeros,
    gram_law_fraction,
    gram_point,
    gram_points,
    gram_residual,
    hardy_z,
    riemann_siegel_theta,
    zero_count_estimate,
    zeta_dirichlet,
    zeta_em,
    zeta_height_asymptotic,
)
