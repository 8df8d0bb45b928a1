"""
Tests for the massive TBA systems, their UV limits and the free-particle energies.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.exceptions import ParameterError, SolverError
from src.lattice.params import build_params, params_from_t
from src.tba import (
    MassiveParams,
    RapidityGrid,
    TbaSystem,
    boson_free_energy,
    chain_system,
    dressed_bae_kernels,
    fermion_free_energy,
    fork_central_charge,
    fork_system,
    free_energy_identity,
    rogers_dilog,
    solve_tba,
    stationary_values,
    twisted_sg_fork,
    uv_central_charge,
    uv_decomposition,
    uv_dilog_check,
)
from src.tba.solver import DEFAULT_TOL, MAX_ITERATIONS


# ── Fixtures ──────────────────────────────────────────────────────────────────


UV_SCALE = 1e-4


def _kernels(t: float = 5.0, Lambda: float = 0.0):
    return dressed_bae_kernels(MassiveParams(params_from_t(t), Lambda))


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestSystems:
    """Diagram construction and validation."""

    def test_chain_shape(self):
        system = chain_system(7)
        assert system.size == 4
        assert system.masses == (1.0, 0.0, 0.0, 1.0)
        assert np.array_equal(system.couplings, system.couplings.T)
        assert system.name == "A4"

    def test_single_node_chain(self):
        system = chain_system(4)
        assert system.size == 1
        assert system.couplings[0, 0] == 0.0

    @pytest.mark.parametrize("t", [3, 4.5, 2])
    def test_chain_rejects_bad_t(self, t):
        with pytest.raises(ParameterError):
            chain_system(t)

    def test_fork_weights_symmetrise(self):
        system = fork_system(2)
        assert system.labels == ("1", "2", "0")
        weighted = np.diag(system.node_weights) @ system.couplings
        assert np.allclose(weighted, weighted.T)
        assert system.masses == (1.0, 0.0, 0.0)

    def test_fork_rejects_empty(self):
        with pytest.raises(ParameterError):
            fork_system(0)

    def test_asymmetric_couplings_rejected(self):
        with pytest.raises(ParameterError):
            TbaSystem(labels=("a", "b"), couplings=np.array([[0, 1], [2, 0]]), masses=(1.0, 0.0))

    def test_negative_mass_rejected(self):
        with pytest.raises(ParameterError):
            TbaSystem(labels=("a",), couplings=np.zeros((1, 1)), masses=(-1.0,))

    def test_to_dict(self):
        data = fork_system(1).to_dict()
        assert data["name"] == "fork1"
        assert data["node_weights"] == [1.0, 0.5]


class TestRapidityGrid:
    """Trapezoid grid."""

    def test_weights_sum_to_length(self):
        grid = RapidityGrid(theta_max=7.3, spacing=0.05)
        assert abs(grid.weights.sum() - 14.6) < 1e-12

    def test_cutoff_grows_with_small_scale(self):
        assert RapidityGrid.for_scale(1e-4).theta_max > RapidityGrid.for_scale(1e-1).theta_max

    def test_rejects_non_positive_scale(self):
        with pytest.raises(ParameterError):
            RapidityGrid.for_scale(0.0)


class TestDilogarithm:
    """Rogers dilogarithm and stationary values."""

    def test_special_values(self):
        assert rogers_dilog(0.0) == 0.0
        assert abs(rogers_dilog(0.5) - math.pi ** 2 / 12) < 1e-14
        assert abs(rogers_dilog(1.0) - math.pi ** 2 / 6) < 1e-14

    def test_reflection(self):
        assert abs(rogers_dilog(0.3) + rogers_dilog(0.7) - math.pi ** 2 / 6) < 1e-13

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            rogers_dilog(1.5)

    def test_golden_ratio(self):
        x = stationary_values(chain_system(5).couplings)
        golden = (1 + math.sqrt(5)) / 2
        assert np.allclose(x, [golden, golden], atol=1e-12)

    @pytest.mark.parametrize("t", [4, 5, 6, 7, 8])
    def test_chain_uv_value(self, t):
        assert abs(uv_dilog_check(chain_system(t)) - uv_central_charge(t)) < 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_fork_uv_value(self, n):
        assert abs(uv_dilog_check(fork_system(n)) - fork_central_charge(n)) < 1e-10

    def test_fork_is_half_the_chain(self):
        assert abs(fork_central_charge(1) - 0.75) < 1e-15
        assert abs(2 * fork_central_charge(2) - uv_central_charge(8)) < 1e-14

    @pytest.mark.parametrize("t", [5, 6, 7])
    def test_decomposition(self, t):
        upper, lower = uv_decomposition(t)
        assert abs(upper - (1 - 6 / (t * (t - 1)))) < 1e-10
        assert abs(lower - (1 - 6 / ((t - 1) * (t - 2)))) < 1e-10


class TestSolver:
    """Damped iteration of the TBA equations."""

    @pytest.mark.parametrize("t", [4, 5, 6, 7])
    def test_uv_central_charge(self, t):
        solution = solve_tba(chain_system(t), UV_SCALE, tol=1e-10)
        assert abs(solution.c_eff - uv_central_charge(t)) < 1e-3

    def test_free_fermion(self):
        solution = solve_tba(chain_system(4), UV_SCALE, tol=1e-10)
        assert abs(solution.c_eff - 0.5) < 1e-6

    def test_solver_matches_dilogarithm(self):
        solution = solve_tba(chain_system(6), UV_SCALE, tol=1e-10)
        assert abs(solution.c_eff - uv_dilog_check(chain_system(6))) < 1e-3

    def test_infrared_decoupling(self):
        assert solve_tba(chain_system(6), 10.0).c_eff < 1e-3

    @pytest.mark.parametrize("r", [1e-4, 1e-3, 1.0, 10.0])
    def test_converges_at_default_tolerance(self, r):
        # grid edges carry pseudo-energies far above 1/DEFAULT_TOL
        solution = solve_tba(chain_system(5), r)
        assert solution.epsilon.max() > 1e8
        assert solution.delta < DEFAULT_TOL
        assert solution.iterations < MAX_ITERATIONS

    def test_monotone_in_scale(self):
        values = [solve_tba(chain_system(5), r, tol=1e-10).c_eff for r in (1e-3, 0.1, 1.0, 5.0)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_pseudo_energies_even(self):
        solution = solve_tba(chain_system(6), 0.5)
        assert np.allclose(solution.epsilon, solution.epsilon[:, ::-1], atol=1e-9)

    @pytest.mark.parametrize("r", [1e-3, 0.1, 1.0, 10.0])
    def test_fork_is_half_the_chain(self, r):
        chain = solve_tba(chain_system(6), r)
        fork = twisted_sg_fork(1, r)
        assert abs(chain.energy - 2 * fork.energy) <= 1e-8 * max(1.0, abs(chain.energy))

    def test_fork_uv_limit(self):
        fork = twisted_sg_fork(1, UV_SCALE, tol=1e-10)
        assert abs(fork.c_eff - 0.75) < 1e-3

    def test_solution_to_dict(self):
        data = solve_tba(chain_system(5), 1.0).to_dict()
        assert data["system"] == "A2"
        assert abs(data["ER"] - data["E"]) < 1e-15
        assert data["c_eff"] > 0

    def test_rejects_bad_scale(self):
        with pytest.raises(ParameterError):
            solve_tba(chain_system(5), 0.0)

    def test_rejects_bad_damping(self):
        with pytest.raises(ParameterError):
            solve_tba(chain_system(5), 1.0, damping=1.5)

    def test_non_convergence(self):
        with pytest.raises(SolverError) as info:
            solve_tba(chain_system(6), 1e-3, max_iter=2)
        assert info.value.iterations == 2
        assert info.value.residual > 0


class TestFreeEnergies:
    """Free boson and Majorana energies."""

    @pytest.mark.parametrize("muR", [0.1, 1.0, 10.0])
    def test_identity(self, muR):
        assert free_energy_identity(muR, 1.0) < 1e-12

    def test_identity_independent_of_split(self):
        assert free_energy_identity(0.5, 2.0) < 1e-12

    def test_boson_uv_limit(self):
        R = 1.0
        assert abs(boson_free_energy(1e-3, R) * R + math.pi / 6) < 2e-3

    def test_fermion_uv_limit(self):
        assert abs(fermion_free_energy(1e-3, 1.0) + math.pi / 12) < 1e-4

    def test_energies_negative(self):
        assert boson_free_energy(1.0, 1.0) < 0
        assert fermion_free_energy(1.0, 1.0) < 0

    def test_fermion_matches_tba(self):
        tba = solve_tba(chain_system(4), 0.5)
        assert abs(fermion_free_energy(1.0, 0.5) * 0.5 - tba.scaled_energy) < 1e-8

    def test_small_scale_warns(self, caplog):
        with caplog.at_level("WARNING"):
            fermion_free_energy(1e-4, 1.0)
        assert "quadrature tails" in caplog.text

    def test_rejects_non_positive(self):
        with pytest.raises(ParameterError):
            boson_free_energy(0.0, 1.0)


class TestMassiveKernels:
    """Kernels of the massive Bethe equations."""

    def test_mass_scale(self):
        assert MassiveParams(params_from_t(5), 0.0).mu == 4.0
        massive = MassiveParams(build_params(0.5), 2.0, R=3.0)
        assert abs(massive.mu - 4 * math.exp(-math.pi * 2.0 / 1.0)) < 1e-15
        assert abs(massive.r - 3 * massive.mu) < 1e-15

    def test_rejects_negative_lambda(self):
        with pytest.raises(ParameterError):
            MassiveParams(params_from_t(5), -0.1)

    @pytest.mark.parametrize("t", [3.5, 5.0, 8.0])
    def test_kernel_identity(self, t):
        kernels = _kernels(t)
        omega = np.linspace(-6, 6, 61)
        lhs = kernels.phi_hat(0, 0, omega) + kernels.phi_hat(0, 1, omega)
        assert np.allclose(lhs, kernels.shifted_sg_kernel_hat(omega), atol=1e-12)

    def test_phi_symmetric_in_lines(self):
        kernels = _kernels()
        omega = np.array([0.3, 1.7])
        assert np.allclose(kernels.phi_hat(0, 1, omega), kernels.phi_hat(1, 0, omega))

    def test_phi_rejects_bad_index(self):
        with pytest.raises(ParameterError):
            _kernels().phi_hat(0, 2, 1.0)

    def test_source_without_staggering(self):
        kernels = _kernels(5.0, 0.0)
        k = 2.5
        lam = np.array([-0.4, 0.0, 0.9])
        assert np.allclose(kernels.source(lam), 2 * k / np.cosh(k * lam), atol=1e-14)

    def test_source_asymptotic(self):
        kernels = _kernels(5.0, 3.0)
        lam = np.array([-0.3, 0.0, 0.3])
        exact = kernels.source(lam)
        assert np.allclose(kernels.source_asymptotic(lam), exact, rtol=1e-5)

    def test_dressed_energy_asymptotic(self):
        kernels = _kernels(5.0, 3.0)
        lam = np.array([-0.2, 0.1])
        exact = kernels.dressed_energy(lam)
        assert np.allclose(kernels.dressed_energy_asymptotic(lam), exact, rtol=1e-5)

    def test_dressed_momentum_derivative(self):
        kernels = _kernels(6.0, 1.2)
        h = 1e-5
        lam = np.array([-1.5, 0.2, 0.8])
        derivative = (kernels.dressed_momentum(lam + h) - kernels.dressed_momentum(lam - h)) / (2 * h)
        assert np.allclose(derivative, -kernels.source(lam), atol=1e-6)
        assert abs(kernels.dressed_momentum(0.0)) < 1e-15
