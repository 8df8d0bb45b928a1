"""
TBA diagrams, rapidity grids and the mass scale of the massive deformation.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..exceptions import ParameterError
from ..lattice.params import ModelParams

logger = logging.getLogger(__name__)

GRID_MARGIN = 20.0                  # rapidity units beyond ln(2/r)
GRID_SPACING = 0.05


@dataclass(frozen=True, eq=False)
class TbaSystem:
    """
    Node diagram of a TBA system.

    ε_a = m_a r coshθ − Σ_b W_ab φ⋆L_b with φ = 1/(2π coshθ) and
    L_b = log(1 + f_b e^{−ε_b}). diag(node_weights)·W must be symmetric;
    node_weights enter the UV dilogarithm sum.
    """
    labels: Tuple[str, ...]
    couplings: np.ndarray = field(repr=False)    # W_ab
    masses: Tuple[float, ...]                    # m_a in units of μ
    fugacities: Optional[Tuple[float, ...]] = None
    node_weights: Optional[Tuple[float, ...]] = None
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        couplings = np.asarray(self.couplings, dtype=float)
        if couplings.shape != (n, n):
            raise ParameterError(f"coupling matrix must be {n}x{n}, got {couplings.shape}")
        if len(self.masses) != n:
            raise ParameterError(f"expected {n} masses, got {len(self.masses)}")
        if any(m < 0 for m in self.masses):
            raise ParameterError("masses must be non-negative")
        fugacities = self.fugacities or (1.0,) * n
        if len(fugacities) != n or any(f <= 0 for f in fugacities):
            raise ParameterError("fugacities must be positive, one per node")
        weights = self.node_weights or (1.0,) * n
        if len(weights) != n:
            raise ParameterError(f"expected {n} node weights, got {len(weights)}")
        if not np.allclose(np.diag(weights) @ couplings, (np.diag(weights) @ couplings).T):
            raise ParameterError("weighted coupling matrix is not symmetric")
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fugacities", tuple(float(f) for f in fugacities))
        object.__setattr__(self, "node_weights", tuple(float(w) for w in weights))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def massive(self) -> np.ndarray:
        return np.array(self.masses) > 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "labels": list(self.labels),
            "couplings": self.couplings.tolist(),
            "masses": list(self.masses),
            "fugacities": list(self.fugacities),
            "node_weights": list(self.node_weights),
        }


def chain_system(t: int) -> TbaSystem:
    """
    A_{t−3} chain whose two end nodes carry unit mass.

    t = 4 leaves one massive node with no couplings (a free Majorana fermion).

    Raises:
        ParameterError: unless t is an integer ≥ 4
    """
    if int(t) != t or t < 4:
        raise ParameterError(f"TBA diagram needs an integer t >= 4, got {t!r}")
    n = int(t) - 3
    adjacency = np.zeros((n, n))
    for a in range(n - 1):
        adjacency[a, a + 1] = adjacency[a + 1, a] = 1.0
    masses = tuple(1.0 if a in (0, n - 1) else 0.0 for a in range(n))
    return TbaSystem(
        labels=tuple(str(a + 1) for a in range(n)),
        couplings=adjacency,
        masses=masses,
        name=f"A{n}",
    )


def fork_system(n: int) -> TbaSystem:
    """
    Symmetric half of the A_{2n+1} chain: nodes 1..n plus the middle node 0.

    The ±i fugacity pair on the fork ends is carried in combined real form:
    node 0 feeds node n through log(1 + e^{−ε0}) and receives 2φ⋆L_n.
    """
    if n < 1:
        raise ParameterError(f"fork needs n >= 1, got {n}")
    size = n + 1
    couplings = np.zeros((size, size))
    for a in range(n - 1):
        couplings[a, a + 1] = couplings[a + 1, a] = 1.0
    couplings[n - 1, n] = 1.0
    couplings[n, n - 1] = 2.0
    masses = tuple(1.0 if a == 0 else 0.0 for a in range(size))
    weights = tuple(1.0 if a < n else 0.5 for a in range(size))
    return TbaSystem(
        labels=tuple(str(a + 1) for a in range(n)) + ("0",),
        couplings=couplings,
        masses=masses,
        node_weights=weights,
        name=f"fork{n}",
    )


@dataclass(frozen=True)
class RapidityGrid:
    """Uniform grid on [−θmax, θmax] with trapezoid weights."""
    theta_max: float
    spacing: float = GRID_SPACING

    @classmethod
    def for_scale(cls, r: float, margin: float = GRID_MARGIN, spacing: float = GRID_SPACING) -> "RapidityGrid":
        """Cutoff ln(2/r) + margin, so mass terms dominate at the edges."""
        if r <= 0:
            raise ParameterError(f"scale r must be positive, got {r!r}")
        return cls(theta_max=max(math.log(2 / r), 0.0) + margin, spacing=spacing)

    @property
    def size(self) -> int:
        return int(math.ceil(2 * self.theta_max / self.spacing)) + 1

    @property
    def points(self) -> np.ndarray:
        return np.linspace(-self.theta_max, self.theta_max, self.size)

    @property
    def step(self) -> float:
        return 2 * self.theta_max / (self.size - 1)

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.size, self.step)
        w[0] = w[-1] = self.step / 2
        return w


@dataclass(frozen=True)
class MassiveParams:
    """Imaginary staggering amplitude Λ and the resulting mass scale."""
    params: ModelParams
    Lambda: float
    R: float = 1.0                  # circumference

    def __post_init__(self):
        if self.Lambda < 0:
            raise ParameterError(f"Lambda must be non-negative, got {self.Lambda!r}")
        if self.R <= 0:
            raise ParameterError(f"circumference must be positive, got {self.R!r}")

    @property
    def mu(self) -> float:
        """μ = 4 exp(−πΛ/(2γ))."""
        return 4 * math.exp(-math.pi * self.Lambda / (2 * self.params.gamma))

    @property
    def r(self) -> float:
        return self.mu * self.R
