"""
Tests for diagonalization, finite-size fits and the closed-form exponents.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.bethe import BetheState, bethe_energy, solve_bae
from src.exceptions import ParameterError
from src.lattice import Couplings, build_hamiltonian, build_params, get_representation, pauli_hamiltonian
from src.spectra import central_charge_fit, diagonalize, exponent_fit, exponent_formulas


# ── Fixtures ──────────────────────────────────────────────────────────────────


def _bae_energy(state: BetheState, gamma: float) -> float:
    params = build_params(gamma)
    return bethe_energy(solve_bae(state, params), params)


def _ground_energies(gamma: float, sizes=(4, 6, 8), phi: float = 0.0) -> dict:
    return {N: _bae_energy(BetheState.ground_state(N, phi=phi), gamma) for N in sizes}


def _synthetic_energies(e_inf: float, c: float, v: float, sizes) -> dict:
    return {N: N * e_inf - math.pi * v * c / (6 * N) for N in sizes}


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestDiagonalize:
    """Dense and extremal eigenvalue paths."""

    def test_identity(self):
        rep = get_representation("spin", 2, build_params(0.5), sector=0)
        table = diagonalize(rep.identity())
        assert np.allclose(table.eigenvalues, 1.0)

    def test_small_chain_matches_bae(self):
        params = build_params(math.pi / 4)
        rep = get_representation("spin", 2, params, sector=0)
        H = build_hamiltonian(Couplings.z2_point(params), params, rep)
        table = diagonalize(H)
        expected = _bae_energy(BetheState.ground_state(2), params.gamma)
        assert table.ground.real == pytest.approx(expected, abs=1e-8)

    def test_hermitian_piece_is_real(self):
        params = build_params(0.7)
        couplings = Couplings(K1=-1.0, K2=0.0)
        H = pauli_hamiltonian(couplings, params, 3, sector=0)
        table = diagonalize(H)
        assert np.abs(table.eigenvalues.imag).max() < 1e-10

    def test_sorted_by_real_part(self):
        params = build_params(0.4)
        rep = get_representation("spin", 3, params, sector=0)
        table = diagonalize(build_hamiltonian(Couplings.z2_point(params), params, rep))
        assert np.all(np.diff(table.eigenvalues.real) >= 0)

    def test_extremal_matches_full(self):
        params = build_params(0.6)
        rep = get_representation("spin", 4, params, sector=0)
        H = build_hamiltonian(Couplings.z2_point(params), params, rep)
        full = diagonalize(H)
        extremal = diagonalize(H, mode="extremal", k=3)
        assert extremal.ground.real == pytest.approx(full.ground.real, abs=1e-8)

    def test_rows(self):
        rep = get_representation("spin", 1, build_params(0.5), sector=0)
        rows = diagonalize(rep.identity(), twist=0.25).to_rows(t=4.0)
        assert rows[0] == {"t": 4.0, "N": 1, "sector": 0, "twist": 0.25, "re": 1.0, "im": 0.0}

    def test_unknown_mode(self):
        rep = get_representation("spin", 1, build_params(0.5), sector=0)
        with pytest.raises(ParameterError):
            diagonalize(rep.identity(), mode="partial")


class TestCentralChargeFit:
    """Three-point fits of ground-state energies."""

    def test_synthetic_exact_recovery(self):
        E0 = _synthetic_energies(-1.3, 2.0, 0.9, (4, 6, 8))
        fit = central_charge_fit(E0, 0.9)
        assert fit.estimate == pytest.approx(2.0, abs=1e-10)
        assert fit.e_inf == pytest.approx(-1.3, abs=1e-12)

    def test_untwisted_ground_states(self):
        params = build_params(math.pi / 5)
        fit = central_charge_fit(_ground_energies(params.gamma), params.v)
        assert fit.estimate == pytest.approx(2.0, rel=0.1)

    def test_twisted_ground_states(self):
        params = build_params(math.pi / 3)
        fit = central_charge_fit(_ground_energies(params.gamma, phi=params.gamma), params.v)
        assert fit.estimate == pytest.approx(exponent_formulas(params).c_tw, abs=0.2)
        assert exponent_formulas(params).c_tw == pytest.approx(-2.0)

    def test_too_few_sizes(self):
        with pytest.raises(ParameterError):
            central_charge_fit({4: -1.0, 6: -2.0}, 1.0)


class TestExponentFit:
    """Two-point fits of gaps."""

    def test_synthetic_exact_recovery(self):
        v, x = 1.1, 0.3
        gaps = {N: 2 * math.pi * v * x / N for N in (6, 8)}
        assert exponent_fit(gaps, v).estimate == pytest.approx(0.15, abs=1e-12)

    @pytest.mark.parametrize("k", [2, 4])
    def test_watermelon_sectors(self, k):
        params = build_params(math.pi / 4)
        gaps = {}
        for N in (6, 8):
            reference = _bae_energy(BetheState.ground_state(N, phi=params.gamma), params.gamma)
            gaps[N] = _bae_energy(BetheState.k_leg(N, k), params.gamma) - reference
        fit = exponent_fit(gaps, params.v)
        expected = exponent_formulas(params).h_k(k)
        assert 2 * fit.estimate == pytest.approx(2 * expected, rel=0.15)

    def test_non_positive_gap(self):
        with pytest.raises(ParameterError):
            exponent_fit({6: 0.1, 8: -0.01}, 1.0)


class TestExponentFormulas:
    """Closed-form exponents."""

    def test_fifth_pi(self):
        assert exponent_formulas(build_params(math.pi / 5)).c_tw == pytest.approx(1.2)

    def test_quarter_pi_watermelons(self):
        table = exponent_formulas(build_params(math.pi / 4))
        assert table.h_k(2) == pytest.approx(1 / 8)
        assert table.h_k(4) == pytest.approx(3 / 16)

    @pytest.mark.parametrize("gamma", [0.3, math.pi / 4, 1.0, 1.4])
    def test_central_charge_matches_uv_value(self, gamma):
        params = build_params(gamma)
        t = params.t
        assert exponent_formulas(params).c_tw == pytest.approx(2 - 12 / (t * (t - 2)), abs=1e-12)

    def test_crossing_at_phi0(self):
        table = exponent_formulas(build_params(math.pi / 4))
        assert table.phi0 == pytest.approx(0.375 * math.pi)
        assert table.delta1(table.phi0) == pytest.approx(table.delta2(table.phi0))

    @pytest.mark.parametrize("gamma", [math.pi / 4, 0.5, 1.2])
    def test_lowest_dimension_switches(self, gamma):
        table = exponent_formulas(build_params(gamma))
        eps = 1e-6
        assert table.lowest_twisted_dimension(table.phi0 - eps)[0] == 1
        assert table.lowest_twisted_dimension(table.phi0 + eps)[0] == 2
        assert table.lowest_twisted_dimension(math.pi - table.phi0 - eps)[0] == 2
        assert table.lowest_twisted_dimension(math.pi - table.phi0 + eps)[0] == 3

    def test_effective_central_charge(self):
        params = build_params(0.7)
        table = exponent_formulas(params)
        assert table.effective_central_charge(math.pi * params.e0) == pytest.approx(table.c_tw)
