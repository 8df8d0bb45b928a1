"""
Tests for the hole-hole amplitudes and their sine-Gordon identification.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.exceptions import ParameterError
from src.lattice.params import params_from_t
from src.tba import (
    match_sg_coupling,
    sg_coupling,
    sg_kink_amplitude,
    shifted_sg_coupling,
    smatrix_elements,
    unitarity_residual,
)


# ── Fixtures ──────────────────────────────────────────────────────────────────


THETAS = [-3.2, -1.0, 0.35, 1.8, 4.5]


# ── Tests ─────────────────────────────────────────────────────────────────────


class TestAmplitudes:
    """Raw amplitudes at real rapidity."""

    @pytest.mark.parametrize("t", [2.7, 5.0, 7.5])
    def test_unitarity(self, t):
        assert unitarity_residual(np.linspace(-5, 5, 11), params_from_t(t)) < 1e-8

    @pytest.mark.parametrize("theta", THETAS)
    def test_pure_phase(self, theta):
        elements = smatrix_elements(theta, params_from_t(5.0))
        assert abs(abs(elements["S00"]) - 1) < 1e-12
        assert abs(abs(elements["S01"]) - 1) < 1e-12

    def test_zero_rapidity(self):
        elements = smatrix_elements(0.0, params_from_t(6.0))
        assert elements["S00"] == 1
        assert abs(elements["S01"] - 1j) < 1e-15

    def test_normalisation_factors(self):
        t = 5.0
        theta = 0.7
        elements = smatrix_elements(theta, params_from_t(t))
        arg = (1j * math.pi - theta) / (t - 2)
        assert abs(elements["Z"] * np.sinh(arg) - elements["S00"]) < 1e-12
        assert abs(elements["Z_tilde"] * np.cosh(arg) + 1j * elements["S01"]) < 1e-12


class TestSineGordon:
    """Identification with sine-Gordon kink scattering."""

    def test_couplings(self):
        assert sg_coupling(5.0) == 0.75
        assert abs(shifted_sg_coupling(5.0) - 0.6) < 1e-15

    @pytest.mark.parametrize("t", [3.5, 5.0, 6.0])
    @pytest.mark.parametrize("theta", THETAS)
    def test_diagonal_is_kink_amplitude(self, t, theta):
        s00 = smatrix_elements(theta, params_from_t(t))["S00"]
        assert abs(s00 + sg_kink_amplitude(theta, sg_coupling(t))) < 1e-8

    @pytest.mark.parametrize("t", [4.5, 6.0])
    @pytest.mark.parametrize("theta", THETAS)
    def test_product_is_shifted_kink_amplitude(self, t, theta):
        elements = smatrix_elements(theta, params_from_t(t))
        product = elements["S00"] * elements["S01"]
        assert abs(product + 1j * sg_kink_amplitude(theta, shifted_sg_coupling(t))) < 1e-8

    def test_kink_amplitude_unitary(self):
        forward = sg_kink_amplitude(1.3, 0.4)
        backward = sg_kink_amplitude(-1.3, 0.4)
        assert abs(forward * backward - 1) < 1e-10

    def test_match_recovers_coupling(self):
        assert abs(match_sg_coupling(params_from_t(5.0)) - 0.75) < 1e-5

    @pytest.mark.parametrize("b", [0.0, 1.0, -0.2])
    def test_rejects_bad_coupling(self, b):
        with pytest.raises(ParameterError):
            sg_kink_amplitude(0.5, b)

    def test_slow_integrand_warns(self, caplog):
        with caplog.at_level("WARNING"):
            sg_kink_amplitude(0.5, 0.02)
        assert "decays slowly" in caplog.text
