"""
Scalar kernels of the two-line Bethe equations and their Fourier transforms.

Fourier convention: f̂(ω) = ∫ f(λ) e^{iωλ} dλ, f(λ) = (1/2π) ∫ f̂(ω) e^{−iωλ} dω.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from ..exceptions import ParameterError
from ..lattice.params import ModelParams

logger = logging.getLogger(__name__)

# Closer than this to ω = 0 the Gamma-function factors G± are refused.
POLE_GUARD = 1e-8


def sinh_ratio(a: float, b: float, omega):
    """sinh(aω)/sinh(bω) for b > 0, overflow-free, with the limit a/b at ω = 0."""
    # even in ω, so only |ω| matters
    x = np.abs(np.asarray(omega, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        value = (
            np.sign(a)
            * np.exp((abs(a) - b) * x)
            * (-np.expm1(-2 * abs(a) * x))
            / (-np.expm1(-2 * b * x))
        )
    return np.where(x == 0, a / b, value)


def cosh_ratio(a: float, b: float, omega):
    """cosh(aω)/cosh(bω), overflow-free."""
    x = np.abs(np.asarray(omega, dtype=float))
    return np.exp((abs(a) - b) * x) * (1 + np.exp(-2 * abs(a) * x)) / (1 + np.exp(-2 * b * x))


def sech(x):
    """1/cosh x without overflow."""
    ax = np.abs(np.asarray(x, dtype=float))
    return 2 * np.exp(-ax) / (1 + np.exp(-2 * ax))


@dataclass(frozen=True)
class KernelSet:
    """
    Momentum, energy and scattering kernels at fixed γ.

    Real-space functions take λ, Fourier-side functions take ω; all accept arrays.
    """
    params: ModelParams

    @property
    def gamma(self) -> float:
        return self.params.gamma

    # ── real space ──────────────────────────────────────────────────────────

    def two_k(self, lam):
        """2k(λ) = 2 atan(tanh λ · cot γ), odd and continuous."""
        return 2 * np.arctan(np.tanh(lam) / math.tan(self.gamma))

    def two_k_prime(self, lam):
        g2 = 2 * self.gamma
        return 2 * math.sin(g2) / (np.cosh(2 * np.asarray(lam, dtype=float)) - math.cos(g2))

    def epsilon(self, lam):
        """Bare energy −sin 2γ · 2k′(λ)."""
        return -math.sin(2 * self.gamma) * self.two_k_prime(lam)

    def theta0(self, lam):
        return -2 * np.arctan(np.tanh(np.asarray(lam) / 2) / math.tan(self.gamma))

    def theta1(self, lam):
        return 2 * np.arctan(np.tanh(np.asarray(lam) / 2) * math.tan(self.gamma))

    def theta(self, a: int, lam):
        """Θ^{(a)} with a taken mod 2 (Θ^{(−1)} = Θ^{(1)})."""
        return self.theta0(lam) if a % 2 == 0 else self.theta1(lam)

    def K0(self, lam):
        g2 = 2 * self.gamma
        return -math.sin(g2) / (np.cosh(np.asarray(lam, dtype=float)) - math.cos(g2))

    def K1(self, lam):
        g2 = 2 * self.gamma
        return math.sin(g2) / (np.cosh(np.asarray(lam, dtype=float)) + math.cos(g2))

    def K(self, a: int, lam):
        return self.K0(lam) if a % 2 == 0 else self.K1(lam)

    def rho_inf(self, lam):
        """Ground-state root density 1/(4γ cosh(πλ/2γ))."""
        return sech(math.pi * np.asarray(lam, dtype=float) / (2 * self.gamma)) / (4 * self.gamma)

    def epsilon_dressed(self, lam):
        """Hole energy π sin 2γ / (2γ cosh(πλ/2γ))."""
        return self.params.v * sech(math.pi * np.asarray(lam, dtype=float) / (2 * self.gamma))

    def two_k_dressed(self, lam):
        """Hole momentum −2 atan(tanh(πλ/4γ))."""
        return -2 * np.arctan(np.tanh(math.pi * np.asarray(lam, dtype=float) / (4 * self.gamma)))

    def two_k_dressed_prime(self, lam):
        return -(math.pi / (2 * self.gamma)) * sech(math.pi * np.asarray(lam, dtype=float) / (2 * self.gamma))

    # ── Fourier side ────────────────────────────────────────────────────────

    def two_k_prime_hat(self, omega):
        return 2 * math.pi * sinh_ratio(math.pi / 2 - self.gamma, math.pi / 2, omega)

    def K0_hat(self, omega):
        return -2 * math.pi * sinh_ratio(math.pi - 2 * self.gamma, math.pi, omega)

    def K1_hat(self, omega):
        return 2 * math.pi * sinh_ratio(2 * self.gamma, math.pi, omega)

    def J_plus_hat(self, omega):
        """Ĵ^{(+)} from 1 + Ĵ^{(+)} = 2π / (2π − K̂^{(0)} − K̂^{(1)})."""
        return 2 * math.pi / (2 * math.pi - self.K0_hat(omega) - self.K1_hat(omega)) - 1

    def J_minus_hat(self, omega):
        return 2 * math.pi / (2 * math.pi - self.K0_hat(omega) + self.K1_hat(omega)) - 1

    def J0_hat(self, omega):
        return 0.5 * (self.J_plus_hat(omega) + self.J_minus_hat(omega))

    def J1_hat(self, omega):
        return 0.5 * (self.J_plus_hat(omega) - self.J_minus_hat(omega))

    def J_plus_closed(self, omega):
        """1 + Ĵ^{(+)} = sinh(πω/2) / (2 sinh((π/2 − γ)ω) cosh γω), minus one."""
        g = self.gamma
        x = np.asarray(omega, dtype=float)
        return 1 / (2 * sinh_ratio(math.pi / 2 - g, math.pi / 2, x) * np.cosh(g * x)) - 1

    def J_minus_closed(self, omega):
        g = self.gamma
        x = np.asarray(omega, dtype=float)
        return 1 / (2 * cosh_ratio(math.pi / 2 - g, math.pi / 2, x) * np.cosh(g * x)) - 1


def kernels(params: ModelParams) -> KernelSet:
    return KernelSet(params)


def wiener_hopf_factors(omega: float, params: ModelParams) -> tuple:
    """
    (G+, G−, H+, H−) at real ω, with G−(ω) = G+(−ω) and H−(ω) = H+(−ω).

    1 + Ĵ^{(+)} = 1/(G+ G−) and 1 + Ĵ^{(−)} = 1/(H+ H−).

    Raises:
        ParameterError: within POLE_GUARD of ω = 0, where G± have poles
    """
    omega = float(omega)
    if abs(omega) < POLE_GUARD:
        raise ParameterError(f"omega = {omega!r} is too close to the pole of G at 0")
    a = 0.5 - params.gamma / math.pi
    b = params.gamma / math.pi

    def g_plus(w):
        log_g = (
            0.5 * math.log(2 * math.pi ** 2 / (math.pi - 2 * params.gamma))
            + loggamma(0.5j * w)
            - loggamma(a * 1j * w)
            - loggamma(0.5 + b * 1j * w)
        )
        return complex(np.exp(log_g))

    def h_plus(w):
        log_h = (
            0.5 * math.log(2 * math.pi)
            + loggamma(0.5 + 0.5j * w)
            - loggamma(0.5 + a * 1j * w)
            - loggamma(0.5 + b * 1j * w)
        )
        return complex(np.exp(log_h))

    return g_plus(omega), g_plus(-omega), h_plus(omega), h_plus(-omega)
