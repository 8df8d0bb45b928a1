"""
Tests for the two-line Bethe equations: solver, energies, eigenvalues.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.bethe import (
    BetheState,
    RootConfig,
    bae_residuals,
    bethe_energy,
    eigenvalue_lambda,
    momentum_phase,
    solve_bae,
    solve_xxz_bae,
    total_momentum,
    two_row_eigenvalue,
    xxz_energy,
)
from src.exceptions import ParameterError, SolverError
from src.lattice import (
    Couplings,
    TransferSpec,
    build_hamiltonian,
    build_params,
    get_representation,
    transfer_matrix,
    xxz_hamiltonian,
)


# ── Fixtures ──────────────────────────────────────────────────────────────────


def _ed_ground_energy(N: int, gamma: float, sector: int = 0) -> float:
    params = build_params(gamma)
    rep = get_representation("spin", N, params, sector=sector)
    H = build_hamiltonian(Couplings.z2_point(params), params, rep).toarray()
    return float(np.linalg.eigvals(H).real.min())


def _closest_transfer_eigenvalue(value: complex, N: int, u: complex, phi: float,
                                 sector: int, gamma: float) -> float:
    t = transfer_matrix(TransferSpec(N, u, phi=phi, sector=sector), build_params(gamma)).toarray()
    return float(np.abs(np.linalg.eigvals(t) - value).min())


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestBetheState:
    """Integer rules and named states."""

    def test_ground_state_integers(self):
        state = BetheState.ground_state(4)
        assert state.I0 == (-0.5, 0.5)
        assert state.I1 == (-0.5, 0.5)
        assert state.sz == 0
        assert state.is_symmetric

    def test_shift_rule_enforced(self):
        with pytest.raises(ParameterError):
            BetheState(4, (0.0, 1.0), (-0.5, 0.5))

    def test_strictly_increasing(self):
        with pytest.raises(ParameterError):
            BetheState(4, (0.5, -0.5), (-0.5, 0.5))

    def test_k_leg_counts(self):
        assert (BetheState.k_leg(6, 2).r0, BetheState.k_leg(6, 2).r1) == (3, 2)
        assert (BetheState.k_leg(6, 4).r0, BetheState.k_leg(6, 4).r1) == (2, 2)
        assert BetheState.k_leg(6, 4).sz == 2

    def test_odd_ground_state_rejected(self):
        with pytest.raises(ParameterError):
            BetheState.ground_state(3)

    def test_dict_round_trip(self):
        state = BetheState(3, (-0.5,), (0.5,), phi=0.2, label="x")
        assert BetheState.from_dict(state.to_dict()) == state


class TestSolveBae:
    """Newton solutions against exact diagonalization."""

    @pytest.mark.parametrize("N", [4, 6])
    def test_ground_state_energy_matches_ed(self, N):
        params = build_params(math.pi / 4)
        roots = solve_bae(BetheState.ground_state(N), params)
        assert roots.residual < 1e-12
        assert bethe_energy(roots, params) == pytest.approx(_ed_ground_energy(N, params.gamma), abs=1e-8)

    def test_ground_state_energy_generic_gamma(self):
        params = build_params(0.9)
        roots = solve_bae(BetheState.ground_state(4), params)
        assert bethe_energy(roots, params) == pytest.approx(_ed_ground_energy(4, 0.9), abs=1e-8)

    def test_no_roots(self):
        params = build_params(0.7)
        roots = solve_bae(BetheState(3, (), ()), params)
        assert bethe_energy(roots, params) == pytest.approx(6 * math.cos(1.4), abs=1e-15)

    def test_symmetric_ground_state_roots_coincide(self):
        params = build_params(math.pi / 5)
        roots = solve_bae(BetheState.ground_state(6), params)
        assert np.abs(roots.lambda0 - roots.lambda1).max() < 1e-10

    def test_twisted_ground_state(self):
        params = build_params(math.pi / 3)
        roots = solve_bae(BetheState.ground_state(6, phi=params.gamma), params)
        assert roots.residual < 1e-12

    def test_too_many_roots(self):
        with pytest.raises(ParameterError):
            solve_bae(BetheState(3, (-1.0, 0.0), ()), build_params(0.5))

    def test_unreachable_tolerance(self):
        with pytest.raises(SolverError) as info:
            solve_bae(BetheState.ground_state(4), build_params(0.5), tol=1e-30, max_iter=3)
        assert info.value.iterations == 3

    def test_per_root_residuals(self):
        params = build_params(0.6)
        roots = solve_bae(BetheState.k_leg(6, 4), params)
        residuals = bae_residuals(roots, params)
        assert residuals.shape == (4,)
        assert residuals.max() == pytest.approx(roots.residual, abs=1e-15)

    def test_root_config_round_trip(self):
        params = build_params(0.6)
        roots = solve_bae(BetheState.ground_state(4), params)
        again = RootConfig.from_dict(roots.to_dict())
        assert np.array_equal(again.lambda0, roots.lambda0)
        assert again.state == roots.state


class TestXXZReduction:
    """Symmetric states against the N-site XXZ chain."""

    @pytest.mark.parametrize("gamma", [math.pi / 4, math.pi / 5, 0.6])
    def test_symmetric_energy_doubles_xxz(self, gamma):
        params = build_params(gamma)
        N = 6
        state = BetheState.ground_state(N)
        roots = solve_bae(state, params)
        mu = solve_xxz_bae(N, state.I0, params)
        E = bethe_energy(roots, params)
        E_xxz = xxz_energy(mu, N, params)
        base = math.cos(2 * gamma)
        assert E - 2 * N * base == pytest.approx(2 * (E_xxz - 0.5 * N * base), abs=1e-10)

    def test_xxz_free_fermion_point(self):
        params = build_params(math.pi / 4)
        mu = solve_xxz_bae(4, (-0.5, 0.5), params)
        assert xxz_energy(mu, 4, params) == pytest.approx(-2 * math.sqrt(2), abs=1e-12)

    def test_xxz_matches_ed(self):
        params = build_params(0.7)
        mu = solve_xxz_bae(6, (-1.0, 0.0, 1.0), params)
        H = xxz_hamiltonian(6, params, sector=0).toarray()
        assert xxz_energy(mu, 6, params) == pytest.approx(np.linalg.eigvalsh(H).min(), abs=1e-10)


class TestEigenvalueLambda:
    """Λ(u) against transfer-matrix eigenvalues."""

    def test_no_roots_closed_form(self):
        params = build_params(0.8)
        roots = solve_bae(BetheState(2, (), (), phi=0.3), params)
        u = 0.2 + 0.1j
        expected = (np.exp(0.3j) * np.sin(2 * (0.8 - u)) ** 2 + np.exp(-0.3j) * np.sin(2 * u) ** 2) / 4
        assert eigenvalue_lambda(u, roots, params) == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("phi", [0.0, 0.35])
    def test_matches_transfer_matrix_n2(self, phi):
        gamma = math.pi / 5
        params = build_params(gamma)
        roots = solve_bae(BetheState.ground_state(2, phi=phi), params)
        u = 0.3 + 0.1j
        value = eigenvalue_lambda(u, roots, params)
        assert _closest_transfer_eigenvalue(value, 2, u, phi, 0, gamma) < 1e-8

    def test_matches_transfer_matrix_n3(self):
        gamma = math.pi / 4
        params = build_params(gamma)
        roots = solve_bae(BetheState(3, (-0.5,), (0.5,)), params)
        u = -0.17 + 0.05j
        value = eigenvalue_lambda(u, roots, params)
        assert _closest_transfer_eigenvalue(value, 3, u, 0.0, 1, gamma) < 1e-8

    def test_two_row_value_at_zero(self):
        params = build_params(0.6)
        roots = solve_bae(BetheState.ground_state(4, phi=0.2), params)
        product = eigenvalue_lambda(0.0, roots, params) * eigenvalue_lambda(math.pi / 2, roots, params)
        assert product == pytest.approx(two_row_eigenvalue(roots, params), rel=1e-10)


class TestTotalMomentum:
    """Root product against the integer formula."""

    def test_phase_matches_integers(self):
        params = build_params(0.7)
        state = BetheState.k_leg(6, 2, phi=0.1)
        roots = solve_bae(state, params)
        expected = np.exp(-1j * total_momentum(state))
        assert abs(momentum_phase(roots, params) - expected) < 1e-10
