"""
Kernels and source terms of the massive (imaginary-staggered) Bethe equations
written for dressed excitations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..bethe.kernels import KernelSet, sech, sinh_ratio
from ..exceptions import ParameterError
from .solver import gudermannian
from .system import MassiveParams


@dataclass(frozen=True)
class MassiveKernels:
    """Φ^{(a,b)} = −2πJ^{(a−b)} and the two-peak source s(λ) at fixed γ and Λ."""
    massive: MassiveParams

    @property
    def kernel_set(self) -> KernelSet:
        return KernelSet(self.massive.params)

    @property
    def gamma(self) -> float:
        return self.massive.params.gamma

    @property
    def scale(self) -> float:
        """π/(2γ), the map from λ to the rapidity θ."""
        return math.pi / (2 * self.gamma)

    def phi_hat(self, a: int, b: int, omega):
        if a not in (0, 1) or b not in (0, 1):
            raise ParameterError(f"line indices must be 0 or 1, got ({a}, {b})")
        ks = self.kernel_set
        J = ks.J0_hat(omega) if a == b else ks.J1_hat(omega)
        return -2 * math.pi * J

    def shifted_sg_kernel_hat(self, omega):
        """2π sinh((π−4γ)ω/2) / (2 coshγω sinh((π−2γ)ω/2))."""
        g = self.gamma
        x = np.asarray(omega, dtype=float)
        ratio = sinh_ratio(math.pi / 2 - 2 * g, math.pi / 2 - g, x)
        return 2 * math.pi * ratio / (2 * np.cosh(g * x))

    def source(self, lam):
        """s(λ) = (π/2γ)[sech(π(λ−Λ)/2γ) + sech(π(λ+Λ)/2γ)]."""
        x = np.asarray(lam, dtype=float)
        k, L = self.scale, self.massive.Lambda
        return k * (sech(k * (x - L)) + sech(k * (x + L)))

    def source_asymptotic(self, lam):
        """(2π/γ) e^{−πΛ/2γ} cosh(πλ/2γ), valid for |λ| ≪ Λ."""
        k = self.scale
        return (2 * math.pi / self.gamma) * math.exp(-k * self.massive.Lambda) * np.cosh(k * np.asarray(lam, dtype=float))

    def dressed_energy(self, lam):
        return math.sin(2 * self.gamma) * self.source(lam)

    def dressed_energy_asymptotic(self, lam):
        """μ v cosh(πλ/2γ)."""
        return self.massive.mu * self.massive.params.v * np.cosh(self.scale * np.asarray(lam, dtype=float))

    def dressed_momentum(self, lam):
        """2k_d(λ) = −∫_0^λ s."""
        x = np.asarray(lam, dtype=float)
        k, L = self.scale, self.massive.Lambda
        return -(gudermannian(k * (x - L)) + gudermannian(k * (x + L)))


def dressed_bae_kernels(massive: MassiveParams) -> MassiveKernels:
    return MassiveKernels(massive)
