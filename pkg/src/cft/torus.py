"""
Torus geometry and the modular functions built on it.

η and θ2, θ3, θ4 are evaluated from their q-series and lattice sums with
cutoffs derived from explicit tail bounds. The mpmath versions serve as an
independent reference.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..exceptions import ParameterError

logger = logging.getLogger(__name__)

SERIES_TAIL = 1e-17                 # bound on the first dropped q-series factor
LATTICE_TAIL = 1e-14                # bound on the first dropped Gaussian term


@dataclass(frozen=True)
class TorusPoint:
    """
    Modular ratio τ of the torus, Im τ > 0.

    q = exp(2πiτ) is the nome of the q-series; the theta lattice sums use
    exp(iπτ).
    """
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ParameterError(f"Im tau must be positive, got {tau!r}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_parts(cls, re_tau: float, im_tau: float) -> "TorusPoint":
        return cls(complex(re_tau, im_tau))

    @property
    def re(self) -> float:
        return self.tau.real

    @property
    def im(self) -> float:
        return self.tau.imag

    @property
    def q(self) -> complex:
        return complex(np.exp(2j * np.pi * self.tau))

    @property
    def series_cutoff(self) -> int:
        """Number of product factors with |q|^n above SERIES_TAIL."""
        return int(math.ceil(-math.log(SERIES_TAIL) / (2 * math.pi * self.im))) + 1

    @property
    def lattice_budget(self) -> float:
        """Exponent below which Gaussian lattice terms are kept."""
        return -math.log(LATTICE_TAIL)

    def shifted(self) -> "TorusPoint":
        """τ + 1."""
        return TorusPoint(self.tau + 1)

    def inverted(self) -> "TorusPoint":
        """−1/τ."""
        return TorusPoint(-1 / self.tau)

    def doubled(self) -> "TorusPoint":
        return TorusPoint(2 * self.tau)

    def to_dict(self) -> dict:
        return {"re_tau": self.re, "im_tau": self.im}


def eta(tp: TorusPoint) -> complex:
    """Dedekind η(τ) = q^{1/24} ∏(1 − q^n)."""
    n = np.arange(1, tp.series_cutoff + 1)
    factors = 1 - np.exp(2j * np.pi * tp.tau * n)
    return complex(np.exp(2j * np.pi * tp.tau / 24) * np.prod(factors))


def theta(nu: int, tp: TorusPoint) -> complex:
    """
    Jacobi θ_ν(τ) at zero argument from its lattice sum, ν ∈ {2, 3, 4}.

    Raises:
        ParameterError: for any other ν (θ1 vanishes identically)
    """
    cutoff = int(math.ceil(math.sqrt(tp.lattice_budget / (math.pi * tp.im)))) + 2
    n = np.arange(-cutoff, cutoff + 1)
    if nu == 2:
        terms = np.exp(1j * np.pi * tp.tau * (n + 0.5) ** 2)
    elif nu == 3:
        terms = np.exp(1j * np.pi * tp.tau * n ** 2)
    elif nu == 4:
        terms = (-1.0) ** n * np.exp(1j * np.pi * tp.tau * n ** 2)
    else:
        raise ParameterError(f"theta index must be 2, 3 or 4, got {nu!r}")
    return complex(terms.sum())


def z_nu(nu: int, tp: TorusPoint) -> float:
    """Jacobi partition function |θ_ν/η|."""
    return abs(theta(nu, tp) / eta(tp))


def eta_reference(tp: TorusPoint, dps: int = 30) -> complex:
    """η(τ) through mpmath's q-Pochhammer symbol."""
    with mpmath.workdps(dps):
        tau = mpmath.mpc(tp.re, tp.im)
        q = mpmath.exp(2j * mpmath.pi * tau)
        return complex(mpmath.exp(2j * mpmath.pi * tau / 24) * mpmath.qp(q))


def theta_reference(nu: int, tp: TorusPoint, dps: int = 30) -> complex:
    """θ_ν(τ) through mpmath.jtheta with nome exp(iπτ)."""
    with mpmath.workdps(dps):
        nome = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tp.re, tp.im))
        return complex(mpmath.jtheta(nu, 0, nome))
