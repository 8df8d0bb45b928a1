"""
Model parameters shared by every module.

ModelParams carries the anisotropy γ and the constants derived from it.
Couplings carries the (K1, K2) pair of the quadratic TL Hamiltonian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..exceptions import ParameterError


@dataclass(frozen=True)
class ModelParams:
    """
    Anisotropy γ and its derived constants.

    Construct through build_params() so the range check runs.
    """
    gamma: float                    # anisotropy, 0 < γ < π/2

    @property
    def sqrtQ(self) -> float:
        """Loop weight 2cos γ."""
        return 2.0 * math.cos(self.gamma)

    @property
    def Q(self) -> float:
        return 4.0 * math.cos(self.gamma) ** 2

    @property
    def t(self) -> float:
        return math.pi / self.gamma

    @property
    def g(self) -> float:
        """Coulomb-gas coupling (π − 2γ)/(2π)."""
        return (math.pi - 2.0 * self.gamma) / (2.0 * math.pi)

    @property
    def e0(self) -> float:
        """Background charge γ/π."""
        return self.gamma / math.pi

    @property
    def v(self) -> float:
        """Fermi velocity π sin 2γ / (2γ)."""
        return math.pi * math.sin(2.0 * self.gamma) / (2.0 * self.gamma)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "sqrtQ": self.sqrtQ,
            "Q": self.Q,
            "t": self.t,
            "g": self.g,
            "e0": self.e0,
            "v": self.v,
        }


def build_params(gamma: float) -> ModelParams:
    """
    Validate γ and return the parameter bundle.

    Raises:
        ParameterError: unless 0 < γ < π/2
    """
    gamma = float(gamma)
    if not (0.0 < gamma < math.pi / 2):
        raise ParameterError(f"gamma must lie in (0, pi/2), got {gamma!r}")
    return ModelParams(gamma=gamma)


def params_from_t(t: float) -> ModelParams:
    """Parameters at γ = π/t."""
    if t <= 2:
        raise ParameterError(f"t must exceed 2, got {t!r}")
    return build_params(math.pi / t)


def params_from_Q(Q: float) -> ModelParams:
    """Parameters at √Q = 2cos γ, 0 < Q < 4."""
    if not (0.0 < Q < 4.0):
        raise ParameterError(f"Q must lie in (0, 4), got {Q!r}")
    return build_params(math.acos(math.sqrt(Q) / 2.0))


def z2_theta(params: ModelParams) -> float:
    """Angle θ of the Z2 staggered point, arctan(Q^{-1/2}) − π."""
    return math.atan(1.0 / math.sqrt(params.Q)) - math.pi


@dataclass(frozen=True)
class Couplings:
    """
    TL couplings of H(K1, K2) = K1 Σ e_j + K2 Σ (e_j e_{j+1} + e_{j+1} e_j).
    """
    K1: float
    K2: float
    theta: Optional[float] = None   # set when built from the angle parameterisation

    @classmethod
    def from_theta(cls, theta: float, params: ModelParams) -> "Couplings":
        """K1 = 2√Q sin θ − cos θ, K2 = −sin θ."""
        return cls(
            K1=2.0 * params.sqrtQ * math.sin(theta) - math.cos(theta),
            K2=-math.sin(theta),
            theta=theta,
        )

    @classmethod
    def z2_point(cls, params: ModelParams) -> "Couplings":
        return cls(K1=-2.0 * math.cos(params.gamma), K2=1.0)

    @classmethod
    def majumdar_ghosh_point(cls, params: ModelParams) -> "Couplings":
        """q-deformed Majumdar-Ghosh point (−2√Q, 1)."""
        return cls(K1=-2.0 * params.sqrtQ, K2=1.0)

    def is_z2_point(self, params: ModelParams, tol: float = 1e-12) -> bool:
        return (
            abs(self.K1 + 2.0 * math.cos(params.gamma)) < tol
            and abs(self.K2 - 1.0) < tol
        )

    def spin_couplings(self, params: ModelParams) -> dict:
        """Pauli-form couplings J1xy, J1z, J2, J3."""
        c, s = math.cos(params.gamma), math.sin(params.gamma)
        return {
            "J1xy": -(self.K1 + 2.0 * c * self.K2),
            "J1z": -(0.5 * c * self.K1 + self.K2),
            "J2": self.K2,
            "J3": self.K2 * s,
        }
