"""
Tests for the Bethe kernels, dressed quantities and conformal dimensions.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.bethe import conformal_dimension, dressed_quantity, kernels, wiener_hopf_factors
from src.bethe.dressed import FourierGrid, inverse_fourier_transform
from src.exceptions import ParameterError
from src.lattice import build_params


# ── Fixtures ──────────────────────────────────────────────────────────────────


OMEGAS = np.concatenate([np.linspace(-12, -0.05, 40), np.linspace(0.05, 12, 40)])
LAMBDAS = np.linspace(-3, 3, 13)


def _kernels(gamma: float = math.pi / 4):
    return kernels(build_params(gamma))


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestRealSpaceKernels:
    """Phases, their derivatives and limits."""

    @pytest.mark.parametrize("gamma", [math.pi / 3, 0.5])
    def test_phases_odd(self, gamma):
        ks = _kernels(gamma)
        x = np.linspace(0.1, 4, 9)
        for f in (ks.two_k, ks.theta0, ks.theta1):
            assert np.allclose(f(-x), -f(x), atol=1e-15)
            assert f(0.0) == 0

    def test_kernels_are_derivatives(self):
        ks = _kernels(0.7)
        x, h = np.linspace(-3, 3, 11), 1e-5
        assert np.allclose((ks.theta0(x + h) - ks.theta0(x - h)) / (2 * h), ks.K0(x), atol=1e-8)
        assert np.allclose((ks.theta1(x + h) - ks.theta1(x - h)) / (2 * h), ks.K1(x), atol=1e-8)
        assert np.allclose((ks.two_k(x + h) - ks.two_k(x - h)) / (2 * h), ks.two_k_prime(x), atol=1e-8)

    def test_hole_values_at_origin(self):
        ks = _kernels(0.6)
        assert ks.epsilon_dressed(0.0) == pytest.approx(math.pi * math.sin(1.2) / 1.2)
        assert ks.epsilon_dressed(0.0) == pytest.approx(ks.params.v)
        assert ks.two_k_dressed(0.0) == 0

    def test_hole_momentum_limit(self):
        ks = _kernels(0.6)
        assert ks.two_k_dressed(40.0) == pytest.approx(-math.pi / 2, abs=1e-12)


class TestFourierKernels:
    """Fourier-side identities."""

    @pytest.mark.parametrize("gamma", [math.pi / 4, math.pi / 5, 1.2])
    def test_j_plus_minus_closed_forms(self, gamma):
        ks = _kernels(gamma)
        assert np.allclose(ks.J_plus_hat(OMEGAS), ks.J_plus_closed(OMEGAS), atol=1e-12)
        assert np.allclose(ks.J_minus_hat(OMEGAS), ks.J_minus_closed(OMEGAS), atol=1e-12)

    def test_symmetric_combinations(self):
        ks = _kernels(0.8)
        assert np.allclose(ks.J0_hat(OMEGAS) + ks.J1_hat(OMEGAS), ks.J_plus_hat(OMEGAS), atol=1e-14)
        assert np.allclose(ks.J0_hat(OMEGAS) - ks.J1_hat(OMEGAS), ks.J_minus_hat(OMEGAS), atol=1e-14)

    def test_zero_frequency_limit(self):
        ks = _kernels(0.5)
        assert ks.two_k_prime_hat(0.0) == pytest.approx(2 * math.pi * (math.pi / 2 - 0.5) / (math.pi / 2))

    def test_ground_state_density(self):
        params = build_params(math.pi / 5)
        ks = kernels(params)
        grid = FourierGrid.for_params(params)
        hat = (1 + ks.J_plus_hat(grid.omega)) * ks.two_k_prime_hat(grid.omega) / (2 * math.pi)
        rho = inverse_fourier_transform(hat, grid.omega, LAMBDAS).real
        assert np.abs(rho - ks.rho_inf(LAMBDAS)).max() < 1e-10


class TestDressedQuantity:
    """α_d = −(δ + J^{(+)}) ⋆ α by quadrature."""

    @pytest.mark.parametrize("gamma", [math.pi / 4, math.pi / 3])
    def test_energy_dresses_to_hole_energy(self, gamma):
        params = build_params(gamma)
        ks = kernels(params)
        eps_d = dressed_quantity(ks.epsilon, params)
        assert np.abs(eps_d(LAMBDAS) - ks.epsilon_dressed(LAMBDAS)).max() < 1e-10

    def test_momentum_derivative_dresses_to_hole_momentum(self):
        params = build_params(math.pi / 4)
        ks = kernels(params)
        k_d = dressed_quantity(ks.two_k_prime, params)
        assert np.abs(k_d(LAMBDAS) - ks.two_k_dressed_prime(LAMBDAS)).max() < 1e-10

    def test_zero_input(self):
        params = build_params(0.7)
        zero = dressed_quantity(lambda lam: np.zeros_like(lam), params)
        assert np.abs(zero(LAMBDAS)).max() == 0

    def test_scalar_evaluation(self):
        params = build_params(0.7)
        ks = kernels(params)
        assert dressed_quantity(ks.epsilon, params)(0.0) == pytest.approx(params.v, abs=1e-10)

    def test_slow_decay_flagged(self, caplog):
        params = build_params(0.7)
        with caplog.at_level("WARNING"):
            dressed_quantity(lambda lam: 1 / (1 + lam ** 2), params)
        assert "decays slowly" in caplog.text


class TestWienerHopf:
    """Gamma-function factorisations."""

    @pytest.mark.parametrize("gamma", [math.pi / 4, 0.4, 1.1])
    def test_factorisation_identities(self, gamma):
        params = build_params(gamma)
        ks = kernels(params)
        for w in OMEGAS:
            gp, gm, hp, hm = wiener_hopf_factors(w, params)
            assert abs(1 + ks.J_plus_hat(w) - 1 / (gp * gm)) < 1e-10
            assert abs(1 + ks.J_minus_hat(w) - 1 / (hp * hm)) < 1e-10

    def test_minus_factor_is_reflection(self):
        params = build_params(0.9)
        gp, gm, hp, hm = wiener_hopf_factors(1.3, params)
        gp_r, _, hp_r, _ = wiener_hopf_factors(-1.3, params)
        assert gm == gp_r
        assert hm == hp_r

    def test_pole_guard(self):
        with pytest.raises(ParameterError):
            wiener_hopf_factors(0.0, build_params(0.9))


class TestConformalDimension:
    """Two-component Coulomb gas dimensions."""

    def test_vacuum(self):
        assert conformal_dimension(0, 0, 0, 0, 0.0, build_params(0.5)) == (0.0, 0.0)

    def test_twisted_ground_state(self):
        params = build_params(0.6)
        d, db = conformal_dimension(0, 0, 0, 0, math.pi * params.e0, params)
        assert d == pytest.approx(params.e0 ** 2 / (4 * params.g))
        assert db == pytest.approx(d)

    @pytest.mark.parametrize("m_tilde", [1, -1])
    def test_magnetic_excitation(self, m_tilde):
        params = build_params(math.pi / 4)
        d, db = conformal_dimension(0, 1, 0, m_tilde, 0.0, params)
        assert d == pytest.approx(params.g / 4 + 1 / 8)
        assert db == pytest.approx(params.g / 4 + 1 / 8)
        background = 2 * params.e0 ** 2 / (4 * params.g)
        assert (d + db - background) / 2 == pytest.approx(1 / 8)

    def test_parity_rule(self):
        with pytest.raises(ParameterError):
            conformal_dimension(1, 0, 0, 0, 0.0, build_params(0.5))
