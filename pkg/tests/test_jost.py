import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jostzeta.errors import CertificationFailure, ConvergenceFailure, EmptyCatalog, NoZerosError
from jostzeta.jost import (
    Barrier,
    PoleKind,
    RootConfig,
    _reduced_from_root,
    _series,
    asymptotic_generic,
    asymptotic_seed,
    cell_bounds,
    classify_virtual,
    find_zero,
    find_zeros,
    hadamard_reconstruct,
    jost_full,
    jost_reduced,
    jost_reduced_array,
    jost_reduced_derivative,
    phase_shift,
    s_matrix,
    winding_number,
)

# zeros at v = 2 from mpmath.findroot at 40 digits on cos(w) - i beta sin(w)/w
BETA_REF = {
    1: complex(2.9561720248458016881, -1.3522582399107739557),
    2: complex(6.0830831992211008644, -2.1482088160208975346),
    3: complex(9.2511069664347272262, -2.5756357733461774417),
    10: complex(31.326757256907382061, -3.7940231273142299895),
    100: complex(314.14304277642674924, -6.0965434853248894422),
}

finite_beta = st.complex_numbers(max_magnitude=60, allow_nan=False, allow_infinity=False)
strength = st.floats(min_value=0.0, max_value=20.0)


def naive_g(beta, v):
    w = mpmath.sqrt(mpmath.mpc(beta) ** 2 - v)
    return complex(mpmath.cos(w) - 1j * mpmath.mpc(beta) * mpmath.sin(w) / w)


def naive_winding(n, v, points=4000):
    """Phase unwrapped along the cell boundary, independent of winding_number."""
    re_lo, re_hi, im_lo, im_hi = cell_bounds(n, Barrier(v))
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo), complex(re_hi, im_hi), complex(re_lo, im_hi)]
    path = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        path.extend(a + (b - a) * np.linspace(0, 1, points, endpoint=False))
    path.append(corners[0])
    with mpmath.workdps(30):
        vals = np.array([naive_g(z, v) for z in path])
    return np.unwrap(np.angle(vals))[-1] / (2 * math.pi) - np.angle(vals[0]) / (2 * math.pi)


class TestJostReduced:
    def test_free_particle_at_pi(self):
        assert jost_reduced(math.pi, Barrier(0.0)) == pytest.approx(-1, abs=1e-15)

    def test_beta_zero(self):
        assert jost_reduced(0, Barrier(2.0)) == pytest.approx(math.cosh(math.sqrt(2)), rel=1e-15)
        assert abs(jost_reduced(0, Barrier(2.0)) - 2.17818) < 1e-5

    def test_at_first_zero(self, barrier):
        assert abs(jost_reduced(BETA_REF[1], barrier)) <= 1e-12

    @pytest.mark.parametrize("beta", [0.3 + 0.2j, 5 - 2j, -7 + 0.5j, 40 - 6j, 1.4142 + 0j, 1e-3j])
    @pytest.mark.parametrize("v", [0.5, 2.0, 7.0])
    def test_matches_direct_formula(self, beta, v):
        with mpmath.workdps(30):
            ref = naive_g(beta, v)
        assert abs(jost_reduced(beta, Barrier(v)) - ref) <= 1e-13 * max(1, abs(ref))

    @settings(max_examples=200, deadline=None)
    @given(finite_beta, strength)
    def test_conjugation_symmetry(self, beta, v):
        b = Barrier(v)
        g = jost_reduced(beta, b)
        assert abs(jost_reduced(-beta.conjugate(), b) - g.conjugate()) <= 1e-12 * max(1, abs(g))

    def test_free_particle_grid(self):
        free = Barrier(0.0)
        re, im = np.meshgrid(np.linspace(-35, 35, 36), np.linspace(-35, 35, 36))
        pts = (re + 1j * im).ravel()
        for beta in pts[np.abs(pts) <= 50]:
            exact = cmath.exp(-1j * beta)
            assert abs(jost_reduced(beta, free) - exact) <= 1e-12 * abs(exact)

    @settings(max_examples=300, deadline=None)
    @given(st.floats(min_value=1e-6, max_value=50), st.floats(min_value=1e-6, max_value=10))
    def test_no_bound_states(self, kappa, v):
        g = jost_reduced(1j * kappa, Barrier(v))
        assert g.real > 0
        assert abs(g.imag) <= 1e-12 * abs(g)

    @pytest.mark.parametrize("beta", [2 - 1j, 3 + 4j, 0.1 - 2j, 25 - 3j])
    def test_branch_independence(self, beta):
        v = 2.0
        w = cmath.sqrt(beta * beta - v)
        a = _reduced_from_root(beta, w, v)
        b = _reduced_from_root(beta, -w, v)
        assert abs(a - b) <= 1e-13 * max(1, abs(a))

    def test_series_agrees_with_closed_form(self):
        rng = np.random.default_rng(0)
        mags = 10 ** rng.uniform(-6, -2, 300)
        for u in mags * np.exp(1j * rng.uniform(0, 2 * math.pi, 300)):
            c, s = _series(complex(u))
            w = cmath.sqrt(u)
            assert abs(c - cmath.cos(w)) <= 1e-13 * abs(c)
            assert abs(s - cmath.sin(w) / w) <= 1e-13 * abs(s)

    def test_series_switch_is_seamless(self, barrier):
        # |u| just either side of the switch
        for eps in (0.999e-3, 1.001e-3):
            beta = cmath.sqrt(2 + eps * 1j)
            with mpmath.workdps(30):
                ref = naive_g(beta, 2.0)
            assert abs(jost_reduced(beta, barrier) - ref) <= 1e-14

    def test_derivative_against_finite_differences(self, barrier):
        rng = np.random.default_rng(1)
        pts = rng.uniform(0.05, 60, 100) + 1j * rng.uniform(-8, 3, 100)
        for beta in pts:
            h = 1e-5
            fd = (jost_reduced(beta + h, barrier) - jost_reduced(beta - h, barrier)) / (2 * h)
            an = jost_reduced_derivative(beta, barrier)
            assert abs(fd - an) <= 1e-6 * abs(an)

    def test_derivative_in_series_region(self, barrier):
        beta = cmath.sqrt(2 + 1e-4)
        h = 1e-6
        fd = (jost_reduced(beta + h, barrier) - jost_reduced(beta - h, barrier)) / (2 * h)
        assert abs(jost_reduced_derivative(beta, barrier) - fd) <= 1e-8

    def test_array_matches_scalar(self, barrier):
        rng = np.random.default_rng(2)
        pts = rng.uniform(-50, 50, 500) + 1j * rng.uniform(-10, 10, 500)
        pts = np.append(pts, [0, math.sqrt(2), 1e-4 + math.sqrt(2)])
        arr = jost_reduced_array(pts, barrier)
        for beta, got in zip(pts, arr):
            ref = jost_reduced(beta, barrier)
            assert abs(got - ref) <= 1e-13 * max(1, abs(ref))


class TestJostFull:
    @settings(max_examples=100, deadline=None)
    @given(finite_beta)
    def test_free_particle_is_one(self, beta):
        if abs(beta.imag) > 30:
            return
        assert jost_full(beta, Barrier(0.0)) == pytest.approx(1, abs=1e-13)

    def test_beta_zero(self):
        assert jost_full(0, Barrier(2.0)) == pytest.approx(2.178183556608571, rel=1e-15)

    def test_zero_shared(self, barrier):
        assert abs(jost_full(BETA_REF[1], barrier)) <= 1e-12


class TestAsymptotics:
    def test_seed_n1(self, barrier):
        # direct arithmetic: L = ln(pi sqrt 2) = 1.4913035
        s = asymptotic_seed(1, barrier)
        assert s.real == pytest.approx(2.66689601384, abs=1e-10)
        assert s.imag == pytest.approx(-1.17299358995, abs=1e-10)

    def test_seed_n10(self, barrier):
        s = asymptotic_seed(10, barrier)
        assert s.real == pytest.approx(31.295163312, abs=1e-8)
        assert s.imag == pytest.approx(-3.76205758051, abs=1e-10)

    @pytest.mark.parametrize("n", [1, 7, 500])
    def test_negative_branch_is_mirror(self, barrier, n):
        assert asymptotic_seed(-n, barrier) == -asymptotic_seed(n, barrier).conjugate()

    def test_seed_rejects_free_particle(self):
        with pytest.raises(NoZerosError):
            asymptotic_seed(1, Barrier(0.0))

    @pytest.mark.parametrize("n, sigma, expected", [
        (10, 0, complex(10 * math.pi, -math.log(10))),
        (1, 0, complex(math.pi, 0)),
        (10, 2, complex(10 * math.pi, -2 * math.log(10))),
    ])
    def test_generic(self, n, sigma, expected):
        assert asymptotic_generic(n, sigma) == pytest.approx(expected, abs=1e-12)

    def test_generic_rounded_values(self):
        assert asymptotic_generic(10, 0) == pytest.approx(31.4159 - 2.3026j, abs=1e-4)
        assert asymptotic_generic(10, 2) == pytest.approx(31.4159 - 4.6052j, abs=1e-4)


class TestFindZero:
    @pytest.mark.parametrize("n", sorted(BETA_REF))
    def test_against_mpmath_roots(self, barrier, n):
        z = find_zero(n, barrier)
        assert abs(z.beta - BETA_REF[n]) <= 1e-12 * abs(BETA_REF[n])
        assert z.residual <= 1e-12
        assert z.certified

    def test_first_zero_independent_winding(self, barrier):
        assert round(naive_winding(1, 2.0)) == 1
        z = find_zero(1, barrier)
        assert z.certified and abs(jost_reduced(z.beta, barrier)) <= 1e-12

    def test_grid_scan_oracle_finds_same_first_zero(self, barrier):
        # coarse |G| scan over the first cell, then polish with mpmath
        re = np.linspace(0.5 * math.pi, 1.5 * math.pi, 120)
        im = np.linspace(-4.5, -1e-3, 120)
        vals = [[abs(naive_g(complex(a, b), 2.0)) for a in re] for b in im]
        i, j = np.unravel_index(np.argmin(vals), (len(im), len(re)))
        with mpmath.workdps(30):
            root = complex(mpmath.findroot(lambda b: mpmath.cos(mpmath.sqrt(b * b - 2))
                                           - 1j * b * mpmath.sin(mpmath.sqrt(b * b - 2)) / mpmath.sqrt(b * b - 2),
                                           mpmath.mpc(re[j], im[i])))
        assert abs(find_zero(1, barrier).beta - root) <= 1e-12

    def test_large_index_close_to_seed(self, barrier):
        z = find_zero(9880, barrier)
        assert abs(z.beta - asymptotic_seed(9880, barrier)) < 1e-3
        assert z.residual <= 1e-12

    def test_free_particle_has_no_zero(self):
        with pytest.raises(NoZerosError):
            find_zero(1, Barrier(0.0))

    def test_fallback_from_bad_seed(self, barrier, monkeypatch):
        import jostzeta.jost as jm

        monkeypatch.setattr(jm, "asymptotic_seed", lambda n, b: complex(n * math.pi + 1.4, -0.01))
        z = jm.find_zero(3, barrier)
        assert abs(z.beta - BETA_REF[3]) <= 1e-12 * abs(BETA_REF[3])

    def test_convergence_failure(self, barrier):
        with pytest.raises(ConvergenceFailure) as info:
            find_zero(5, barrier, RootConfig(max_iter=1))
        assert info.value.n == 5

    def test_certification_failure_is_raised(self, barrier, monkeypatch):
        import jostzeta.jost as jm

        monkeypatch.setattr(jm, "winding_number", lambda *a, **k: 2.0)
        with pytest.raises(CertificationFailure):
            jm.find_zero(2, barrier)

    def test_winding_counts_polynomial_roots(self):
        square = [complex(-2, -2), complex(2, -2), complex(2, 2), complex(-2, 2)]
        assert round(winding_number(lambda z: (z - 0.5) * (z + 1j) * (z - 3), square)) == 2


class TestFindZeros:
    def test_first_three(self, barrier):
        zs = find_zeros(3, barrier)
        assert [z.n for z in zs] == [1, 2, 3]
        assert zs[0].beta.real < zs[1].beta.real < zs[2].beta.real
        for z in zs:
            assert abs(z.beta - BETA_REF[z.n]) <= 1e-12 * abs(BETA_REF[z.n])

    def test_widths_broaden(self, barrier):
        ims = [z.beta.imag for z in find_zeros(10, barrier)]
        assert all(b < a for a, b in zip(ims, ims[1:]))

    def test_empty_request(self, barrier):
        with pytest.raises(ValueError, match="empty"):
            find_zeros(0, barrier)

    def test_threads_do_not_change_results(self, barrier):
        assert find_zeros(300, barrier, threads=1) == find_zeros(300, barrier, threads=4)

    def test_invariants(self, zeros_1e4):
        for z in zeros_1e4:
            assert (z.n - 0.5) * math.pi < z.beta.real < (z.n + 0.5) * math.pi
            assert z.beta.imag < 0
            assert z.residual <= 1e-12


class TestScattering:
    @pytest.mark.parametrize("beta", [0.0, 0.5, 3.0, 77.0])
    def test_free_particle(self, beta):
        assert s_matrix(beta, Barrier(0.0)) == pytest.approx(1, abs=1e-14)
        assert phase_shift(beta, Barrier(0.0)) == pytest.approx(0, abs=1e-14)

    def test_unitarity(self, barrier):
        assert abs(abs(s_matrix(1.0, barrier)) - 1) <= 1e-12

    def test_phase_shift_oracle(self, barrier):
        # -arg(exp(i beta) G) at 40 digits; no branch crossing between 0 and 1
        assert phase_shift(1.0, barrier) == pytest.approx(-0.34911983197699245006, abs=1e-13)

    def test_phase_shift_is_continuous_branch(self, barrier):
        d5 = phase_shift(5.0, barrier)
        # mpmath principal value at beta = 5
        assert math.remainder(d5 - (-0.20756089957109130632), 2 * math.pi) == pytest.approx(0, abs=1e-12)
        ds = [phase_shift(b, barrier) for b in np.linspace(0.01, 20, 300)]
        assert max(abs(np.diff(ds))) < 0.5

    @pytest.mark.parametrize("beta", [0.7, 4.2, 19.0])
    def test_s_is_exp_two_i_delta(self, barrier, beta):
        assert s_matrix(beta, barrier) == pytest.approx(cmath.exp(2j * phase_shift(beta, barrier)), abs=1e-12)


class TestHadamard:
    def test_beta_zero_is_empty_product(self, barrier):
        zs = find_zeros(5, barrier)
        assert hadamard_reconstruct(0, zs, barrier) == jost_reduced(0, barrier)

    def test_converges(self, barrier, zeros_1e4):
        exact = jost_full(1.0, barrier)
        errs = [abs(hadamard_reconstruct(1.0, zeros_1e4[:m], barrier) - exact) / abs(exact)
                for m in (10, 100, 1000, 10000)]
        assert errs[2] < 0.05
        assert all(b < a for a, b in zip(errs, errs[1:]))

    def test_empty(self, barrier):
        with pytest.raises(EmptyCatalog):
            hadamard_reconstruct(1.0, [], barrier)


class TestClassify:
    def test_narrow(self):
        assert classify_virtual(3 - 1j) is PoleKind.NARROW

    def test_negative_energy(self):
        assert classify_virtual(1 - 2j) is PoleKind.VIRTUAL

    def test_first_zero(self, barrier):
        # E = 6.9104, G = 15.990 > 2E
        assert classify_virtual(find_zero(1, barrier)) is PoleKind.VIRTUAL


def test_barrier_rejects_negative():
    with pytest.raises(ValueError):
        Barrier(-1.0)


def test_root_config_validation():
    with pytest.raises(ValueError):
        RootConfig(tol_residual=0)
    with pytest.raises(ValueError):
        RootConfig(max_iter=0)
    assert RootConfig().certifies(100) and not RootConfig().certifies(101)
    assert RootConfig(certify=True).certifies(5000)
