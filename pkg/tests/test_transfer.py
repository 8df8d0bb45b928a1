"""
Tests for the six-vertex transfer matrices.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.exceptions import ParameterError
from src.lattice import (
    Couplings,
    SpinBasis,
    SpinRepresentation,
    TransferSpec,
    anisotropic_limit_check,
    build_hamiltonian,
    build_params,
    get_representation,
    lattice_partition_trace,
    massive_vertical_params,
    transfer_matrix,
    translation_operator,
    two_row_transfer,
    z2_charge,
)
from src.lattice.transfer import two_row_degeneration_residual


# ── Fixtures ──────────────────────────────────────────────────────────────────


def _commutator(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a @ b - b @ a).max())


def _two_row(N: int, u: complex, gamma: float, sector=0, phi: float = 0.0) -> np.ndarray:
    return two_row_transfer(TransferSpec(N, u, phi=phi, sector=sector), build_params(gamma)).toarray()


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestTransferSpec:
    """Row geometry defaults and validation."""

    def test_default_pattern(self):
        spec = TransferSpec(3)
        assert spec.vertical_params == (0.0, math.pi / 2, 0.0, math.pi / 2, 0.0, math.pi / 2)

    def test_wrong_length_rejected(self):
        with pytest.raises(ParameterError):
            TransferSpec(2, vertical_params=(0.0, 0.0))

    def test_massive_pattern(self):
        pattern = (0.5j, -0.5j, math.pi / 2 + 0.5j, math.pi / 2 - 0.5j)
        assert massive_vertical_params(2, 1.0) == pattern
        assert massive_vertical_params(4, 1.0) == pattern * 2
        assert len(massive_vertical_params(6, 1.0)) == 12

    def test_massive_pattern_needs_even_N(self):
        with pytest.raises(ParameterError):
            massive_vertical_params(3, 1.0)


class TestTransferMatrix:
    """Commutation and degeneration properties."""

    def test_conserves_sz(self):
        params = build_params(0.6)
        t = transfer_matrix(TransferSpec(2, 0.3 + 0.1j, phi=0.4, sector=None), params).toarray()
        basis = SpinBasis(4, None)
        sz = np.diag([bin(s).count("1") for s in basis.states]).astype(complex)
        assert _commutator(t, sz) < 1e-13

    def test_commutes_with_z2_charge(self):
        params = build_params(math.pi / 5)
        M = _two_row(3, 0.27, params.gamma)
        C = z2_charge(params, get_representation("spin", 3, params, sector=0)).toarray()
        assert _commutator(M, C) < 1e-10

    def test_two_row_family_commutes(self):
        a = _two_row(3, 0.21, math.pi / 4)
        b = _two_row(3, -0.4 + 0.3j, math.pi / 4)
        assert _commutator(a, b) < 1e-10

    def test_twisted_family_commutes(self):
        a = _two_row(2, 0.21, 0.9, phi=0.7)
        b = _two_row(2, 0.63, 0.9, phi=0.7)
        assert _commutator(a, b) < 1e-10

    def test_massive_single_rows_commute(self):
        params = build_params(math.pi / 5)
        v = massive_vertical_params(2, 0.8)
        t1 = transfer_matrix(TransferSpec(2, 0.1, v), params).toarray()
        t2 = transfer_matrix(TransferSpec(2, 0.5 - 0.2j, v), params).toarray()
        assert _commutator(t1, t2) < 1e-10

    @pytest.mark.parametrize("sector", [0, 1, -2])
    def test_degeneration_to_translation(self, sector):
        params = build_params(math.pi / 4)
        assert two_row_degeneration_residual(3, params, sector) < 1e-12

    def test_translation_period(self):
        basis = SpinBasis(6, 0)
        T = translation_operator(basis, 2).toarray()
        assert np.abs(np.linalg.matrix_power(T, 3) - np.eye(basis.size)).max() == 0


class TestAnisotropicLimit:
    """Logarithmic derivative of the two-row transfer matrix."""

    def test_n3_quarter_pi(self):
        assert anisotropic_limit_check(3, build_params(math.pi / 4)) < 1e-5

    def test_n2_third_pi(self):
        assert anisotropic_limit_check(2, build_params(math.pi / 3)) < 1e-5

    @pytest.mark.parametrize("gamma", [math.pi / 3, 0.7])
    def test_non_hermitian_hamiltonian(self, gamma):
        params = build_params(gamma)
        rep = SpinRepresentation(2, params, 0)
        H = build_hamiltonian(Couplings.z2_point(params), params, rep).toarray()
        assert np.abs(H - H.conj().T).max() > 1e-3
        assert anisotropic_limit_check(2, params) < 1e-5

    def test_second_order_convergence(self):
        params = build_params(math.pi / 4)
        coarse = anisotropic_limit_check(2, params, step=0.02)
        fine = anisotropic_limit_check(2, params, step=0.01)
        assert 3.0 < coarse / fine < 5.0

    def test_size_limits(self):
        with pytest.raises(ParameterError):
            anisotropic_limit_check(1, build_params(0.5))


class TestLatticePartitionTrace:
    """Z = Tr [t(u) t(u + π/2)]^M."""

    def test_single_row_is_trace(self):
        spec = TransferSpec(2, 0.3)
        params = build_params(0.7)
        direct = np.trace(two_row_transfer(spec, params).toarray())
        assert lattice_partition_trace(spec, params, 1) == pytest.approx(direct, rel=1e-12)

    def test_zero_spectral_parameter(self):
        params = build_params(math.pi / 4)
        spec = TransferSpec(3, 0.0)
        dim = SpinBasis(6, 0).size
        expected = ((-math.sin(2 * params.gamma) ** 2 / 4) ** 3) ** 3 * dim
        assert lattice_partition_trace(spec, params, 3) == pytest.approx(expected, rel=1e-10)

    def test_dominant_eigenvalue_limit(self):
        params = build_params(0.6)
        spec = TransferSpec(2, params.gamma / 2)
        lam = np.abs(np.linalg.eigvals(two_row_transfer(spec, params).toarray())).max()
        log_z = lattice_partition_trace(spec, params, 400, log=True)
        assert log_z.real / 400 == pytest.approx(math.log(lam), abs=1e-2)

    def test_rows_checked(self):
        with pytest.raises(ParameterError):
            lattice_partition_trace(TransferSpec(2), build_params(0.5), 0)
