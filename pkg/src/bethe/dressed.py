"""
Dressed quantities α_d = −(δ + J^{(+)}) ⋆ α and conformal dimensions.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..exceptions import ParameterError
from ..lattice.params import ModelParams
from .kernels import KernelSet

logger = logging.getLogger(__name__)

# Quadrature of the Fourier integrals.
LAMBDA_HALF_WIDTH = 40.0
OMEGA_STEP = 0.1
TAIL_EXPONENT = 34.0                # ω cutoff W = TAIL_EXPONENT / γ, tails ~ e^{−34}
DECAY_WARN = 1e-14
CHUNK = 256


@dataclass(frozen=True)
class FourierGrid:
    """Trapezoid grids for the forward (λ) and inverse (ω) transforms."""
    lam: np.ndarray
    omega: np.ndarray

    @classmethod
    def for_params(cls, params: ModelParams) -> "FourierGrid":
        W = TAIL_EXPONENT / params.gamma
        dlam = 0.9 * math.pi / W
        n_lam = int(math.ceil(LAMBDA_HALF_WIDTH / dlam))
        lam = np.linspace(-LAMBDA_HALF_WIDTH, LAMBDA_HALF_WIDTH, 2 * n_lam + 1)
        n_om = int(math.ceil(W / OMEGA_STEP))
        omega = np.linspace(-n_om * OMEGA_STEP, n_om * OMEGA_STEP, 2 * n_om + 1)
        return cls(lam, omega)


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.full(x.size, x[1] - x[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def fourier_transform(values: np.ndarray, lam: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """∫ f(λ) e^{iωλ} dλ by the trapezoid rule."""
    weighted = values * _trapezoid_weights(lam)
    out = np.empty(omega.size, dtype=complex)
    for start in range(0, omega.size, CHUNK):
        block = omega[start:start + CHUNK]
        out[start:start + CHUNK] = np.exp(1j * np.outer(block, lam)) @ weighted
    return out


def inverse_fourier_transform(values: np.ndarray, omega: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """(1/2π) ∫ f̂(ω) e^{−iωλ} dω by the trapezoid rule."""
    weighted = values * _trapezoid_weights(omega) / (2 * math.pi)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    out = np.empty(lam.size, dtype=complex)
    for start in range(0, lam.size, CHUNK):
        block = lam[start:start + CHUNK]
        out[start:start + CHUNK] = np.exp(-1j * np.outer(block, omega)) @ weighted
    return out


def dressed_quantity(alpha: Callable, params: ModelParams) -> Callable:
    """
    Dressing of a bare one-root quantity α(λ) by the ground-state Fermi seas.

    Returns a vectorised function λ -> α_d(λ). Inputs that have not decayed
    to DECAY_WARN at |λ| = LAMBDA_HALF_WIDTH are flagged with a warning.
    """
    ks = KernelSet(params)
    grid = FourierGrid.for_params(params)
    samples = np.asarray(alpha(grid.lam), dtype=complex)
    edge = max(abs(samples[0]), abs(samples[-1]))
    if edge > DECAY_WARN:
        logger.warning(f"dressed quantity input decays slowly: |alpha(+-{LAMBDA_HALF_WIDTH})| = {edge:.3e}")
    alpha_hat = fourier_transform(samples, grid.lam, grid.omega)
    dressed_hat = -(1 + ks.J_plus_hat(grid.omega)) * alpha_hat
    real_input = bool(np.all(np.abs(samples.imag) == 0))

    def evaluate(lam):
        values = inverse_fourier_transform(dressed_hat, grid.omega, lam)
        if real_input:
            values = values.real
        return values if np.ndim(lam) else values[0]

    return evaluate


def conformal_dimension(e: int, m: int, e_tilde: int, m_tilde: int, phi: float,
                        params: ModelParams) -> tuple:
    """
    (Δ, Δ̄) of the two-component Coulomb gas with twist φ.

    Raises:
        ParameterError: unless e + ẽ and m + m̃ are even
    """
    if (e + e_tilde) % 2 or (m + m_tilde) % 2:
        raise ParameterError(
            f"charges ({e}, {m}, {e_tilde}, {m_tilde}) violate the parity rule"
        )
    root = math.sqrt(2 * params.g)
    electric = (e + 2 * phi / math.pi) / root
    magnetic = m * root
    delta = (electric + magnetic) ** 2 / 8 + (e_tilde + m_tilde) ** 2 / 8
    delta_bar = (electric - magnetic) ** 2 / 8 + (e_tilde - m_tilde) ** 2 / 8
    return delta, delta_bar
