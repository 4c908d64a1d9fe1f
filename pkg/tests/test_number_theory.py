import math

import mpmath
import numpy as np
import pytest

from jostzeta.data_io import parse_zero_table
from jostzeta.errors import CountMismatch, DomainError, LimitTooSmall
from jostzeta.number_theory import (
    euler_product,
    find_zeta_zeros,
    gram_law_fraction,
    gram_point,
    gram_points,
    gram_residual,
    hardy_z,
    is_prime,
    nth_prime,
    prime_asymptotic,
    riemann_siegel_theta,
    sieve,
    sieve_for_count,
    zero_count_estimate,
    zeta_dirichlet,
    zeta_em,
    zeta_height_asymptotic,
)
from jostzeta.number_theory.zeta import _block_brackets


def trial_division_primes(count):
    found = []
    m = 2
    while len(found) < count:
        if all(m % p for p in found if p * p <= m):
            found.append(m)
        m += 1
    return found


@pytest.fixture(scope="module")
def million():
    return sieve(10 ** 6)


@pytest.fixture(scope="module")
def zeros_2000():
    return find_zeta_zeros(2000)


class TestPrimes:
    def test_small(self):
        table = sieve(100)
        assert nth_prime(table, 1) == 2
        assert nth_prime(table, 25) == 97
        assert len(table) == 25

    def test_ten_thousandth_against_trial_division(self):
        oracle = trial_division_primes(10_000)
        table = sieve_for_count(10_000)
        assert nth_prime(table, 10_000) == oracle[-1] == 104729
        assert table.primes[:10_000].tolist() == oracle

    def test_prime_count_million(self, million):
        assert len(million.primes) == 78498
        rng = np.random.default_rng(3)
        for p in rng.choice(million.primes, 100, replace=False):
            assert is_prime(int(p))

    def test_limit_too_small(self):
        with pytest.raises(LimitTooSmall):
            sieve(1)
        with pytest.raises(LimitTooSmall, match="re-sieve"):
            nth_prime(sieve(10), 5)

    def test_prime_asymptotic(self):
        assert prime_asymptotic(1) == 0
        assert prime_asymptotic(100) == pytest.approx(460.517, abs=1e-3)
        ratio = nth_prime(sieve_for_count(10_000), 10_000) / prime_asymptotic(10_000)
        assert ratio == pytest.approx(1.137, abs=5e-4)


class TestZetaRightHalfPlane:
    def test_basel(self):
        assert zeta_dirichlet(2, 10 ** 7) == pytest.approx(math.pi ** 2 / 6, abs=2e-7)

    @pytest.mark.parametrize("z", [2, 3, 2 + 1j])
    def test_euler_identity(self, million, z):
        d = zeta_dirichlet(z, 10 ** 7)
        e = euler_product(z, million)
        assert abs(d - e) <= 1e-6
        assert abs(e - complex(mpmath.zeta(z))) <= 1e-6

    @pytest.mark.parametrize("z", [0.5 + 10j, 1.0, -2])
    def test_domain(self, million, z):
        with pytest.raises(DomainError):
            zeta_dirichlet(z, 10)
        with pytest.raises(DomainError):
            euler_product(z, million)


class TestTheta:
    def test_two_pi(self):
        assert riemann_siegel_theta(2 * math.pi) == pytest.approx(-3.5310, abs=1e-4)

    @pytest.mark.parametrize("t", [10, 14.13, 50, 333.3, 9775.1, 5e4])
    def test_against_loggamma(self, t):
        assert riemann_siegel_theta(t) == pytest.approx(float(mpmath.siegeltheta(t)), abs=1e-10 * max(1, t))

    def test_increasing(self):
        t = np.linspace(10, 5e4, 100_000)
        assert np.all(np.diff(riemann_siegel_theta(t)) > 0)


class TestHardyZ:
    def test_brackets_first_zero(self):
        assert np.sign(hardy_z(14.0)) != np.sign(hardy_z(14.2))

    def test_modulus_matches_euler_maclaurin(self):
        rng = np.random.default_rng(4)
        for t in rng.uniform(50, 500, 20):
            em = abs(zeta_em(complex(0.5, t)))
            assert abs(abs(hardy_z(t)) - em) <= 1e-6

    def test_real_valued_in_em_branch(self):
        for t in np.linspace(10, 49.9, 40):
            rotated = np.exp(1j * riemann_siegel_theta(t)) * zeta_em(complex(0.5, t))
            assert abs(rotated.imag) <= 1e-8

    @pytest.mark.parametrize("t", [14.0, 49.0, 50.5, 120.0, 1000.25, 9775.1, 47000.3])
    def test_against_mpmath(self, t):
        assert hardy_z(t) == pytest.approx(float(mpmath.siegelz(t)), abs=1e-6)

    def test_order_zero_is_coarser(self):
        t = 120.0
        ref = float(mpmath.siegelz(t))
        assert abs(hardy_z(t, order=0) - ref) > abs(hardy_z(t) - ref)

    def test_vectorised(self):
        ts = np.array([20.0, 60.0, 600.0])
        assert np.allclose(hardy_z(ts), [hardy_z(t) for t in ts], rtol=0, atol=1e-14)


class TestGram:
    def test_first(self):
        g = gram_point(0)
        assert g.g == pytest.approx(17.8456, abs=1e-4)
        assert g.g == pytest.approx(float(mpmath.grampoint(0)), abs=1e-10)

    def test_residuals_to_1e5(self):
        ks = np.arange(0, 100_001)
        g = gram_points(ks)
        res = np.abs(gram_residual(g, ks))
        assert res.max() <= 1e-10
        assert np.all(np.diff(g) > 0)
        # independent theta on the worst cases plus a random sample
        rng = np.random.default_rng(5)
        picks = np.concatenate([np.argsort(res)[-50:], rng.choice(ks, 150)])
        with mpmath.workdps(30):
            worst = max(abs(float(mpmath.siegeltheta(float(g[k])) - k * mpmath.pi)) for k in picks)
        assert worst <= 1e-10

    def test_residual_matches_double_theta(self):
        g = gram_points(np.arange(0, 50))
        assert np.allclose(gram_residual(g, np.arange(50)), 0, atol=1e-12)
        assert gram_residual(20.0, 0) == pytest.approx(riemann_siegel_theta(20.0), abs=1e-13)

    def test_gram_law_diagnostic(self):
        frac = gram_law_fraction(10_000)
        print(f"Gram's law holds at {frac:.1%} of g_0..g_10000")
        assert 0.5 < frac <= 1


class TestZetaZeros:
    def test_first_zero(self, zeros_2000):
        assert zeros_2000.heights[0] == pytest.approx(14.134725, abs=1e-6)

    def test_count_below_100(self, zeros_2000):
        assert int(np.searchsorted(zeros_2000.heights, 100.0)) == 29
        assert zero_count_estimate(100.0) == 29

    def test_against_ingested_reference(self, zeros_2000, data_dir):
        ref = parse_zero_table(data_dir / "zeros_first100.txt")
        assert len(ref) == 100
        assert np.max(np.abs(zeros_2000.heights[:100] - ref.heights)) <= 1e-6

    def test_sign_change_at_each_zero(self, zeros_2000):
        t = zeros_2000.heights
        assert np.all(np.signbit(hardy_z(t - 1e-9)) != np.signbit(hardy_z(t + 1e-9)))

    def test_strictly_increasing(self, zeros_2000):
        assert np.all(np.diff(zeros_2000.heights) > 1e-8)
        assert zeros_2000.source == "computed"
        assert zeros_2000.indices[0] == 1 and zeros_2000.indices[-1] == 2000

    def test_small_request(self):
        table = find_zeta_zeros(1)
        assert len(table) == 1 and table.height(1) == pytest.approx(14.134725142, abs=1e-8)

    def test_count_mismatch_reported(self):
        # no zero lies in [15, 16]; demanding two must fail with the block range
        ts = np.array([15.0, 15.5, 16.0])
        with pytest.raises(CountMismatch) as info:
            _block_brackets(ts, hardy_z(ts), 2, 4)
        assert info.value.block == (15.0, 16.0)


def test_zeta_height_asymptotic():
    assert zeta_height_asymptotic(2) == pytest.approx(4 * math.pi / math.log(2), rel=1e-15)
    assert abs(zeta_height_asymptotic(2) - 18.129) < 1e-3
    with pytest.raises(ValueError):
        zeta_height_asymptotic(1)
    series = zeta_height_asymptotic(np.arange(10, 60_001))
    assert series.shape == (59_991,) and np.all(np.diff(series) > 0)
