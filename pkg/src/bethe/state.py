"""
Bethe states (two lines of Bethe integers) and solved root configurations.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..exceptions import ParameterError


def _is_integer(x: float, tol: float = 1e-9) -> bool:
    return abs(x - round(x)) < tol


def centered_integers(r: int) -> tuple:
    """−(r + 1)/2 + j for j = 1..r."""
    return tuple(-(r + 1) / 2 + j for j in range(1, r + 1))


@dataclass(frozen=True)
class BetheState:
    """
    Bethe integers on the two lines of real roots.

    Line 0 carries α = λ, line 1 carries α = λ + iπ. Integers on line a
    must lie in (N + r_a − 1)/2 + Z and increase strictly.
    """
    N: int                                  # block count
    I0: tuple                               # Bethe integers, line 0
    I1: tuple                               # Bethe integers, line 1
    phi: float = 0.0                        # twist
    label: str = ""                         # free-form name, e.g. "ground", "k=2"

    def __post_init__(self):
        object.__setattr__(self, "I0", tuple(float(x) for x in self.I0))
        object.__setattr__(self, "I1", tuple(float(x) for x in self.I1))
        if self.N < 1:
            raise ParameterError(f"block count N must be positive, got {self.N}")
        for line, ints in ((0, self.I0), (1, self.I1)):
            r = len(ints)
            if r > self.N:
                raise ParameterError(f"line {line} holds {r} roots, more than N = {self.N}")
            shift = (self.N + r - 1) / 2
            for x in ints:
                if not _is_integer(x - shift):
                    raise ParameterError(
                        f"Bethe integer {x} on line {line} not in {shift} + Z (N={self.N}, r={r})"
                    )
            if any(b <= a for a, b in zip(ints, ints[1:])):
                raise ParameterError(f"Bethe integers on line {line} must increase strictly")

    @property
    def r0(self) -> int:
        return len(self.I0)

    @property
    def r1(self) -> int:
        return len(self.I1)

    @property
    def r(self) -> int:
        return self.r0 + self.r1

    @property
    def sz(self) -> int:
        """Magnetisation of the 2N-site chain; each root flips one spin."""
        return self.N - self.r

    @property
    def is_symmetric(self) -> bool:
        return self.I0 == self.I1

    @classmethod
    def centered(cls, N: int, r0: int, r1: int, phi: float = 0.0, label: str = "") -> "BetheState":
        return cls(N, centered_integers(r0), centered_integers(r1), phi, label)

    @classmethod
    def ground_state(cls, N: int, phi: float = 0.0) -> "BetheState":
        """r0 = r1 = N/2 with centered integers; N must be even."""
        if N % 2:
            raise ParameterError(f"the ground state needs an even block count, got N = {N}")
        return cls.centered(N, N // 2, N // 2, phi, label="ground")

    @classmethod
    def k_leg(cls, N: int, k: int, phi: float = 0.0) -> "BetheState":
        """
        Lowest state of the k-leg sector, k in {2, 4}.

        k = 2 removes one root from line 1; k = 4 removes one from each line.
        """
        if N % 2:
            raise ParameterError(f"k-leg states need an even block count, got N = {N}")
        counts = {2: (N // 2, N // 2 - 1), 4: (N // 2 - 1, N // 2 - 1)}
        if k not in counts:
            raise ParameterError(f"k-leg state only built for k in (2, 4), got {k}")
        r0, r1 = counts[k]
        return cls.centered(N, r0, r1, phi, label=f"k={k}")

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "I0": list(self.I0),
            "I1": list(self.I1),
            "phi": self.phi,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BetheState":
        return cls(
            N=int(data["N"]),
            I0=tuple(data.get("I0", ())),
            I1=tuple(data.get("I1", ())),
            phi=float(data.get("phi", 0.0)),
            label=data.get("label", ""),
        )

    def key(self, gamma: float) -> str:
        """Stable identifier of (state, γ) for the baseline ledger."""
        payload = json.dumps({"state": self.to_dict(), "gamma": repr(float(gamma))}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class RootConfig:
    """Solved real roots on both lines."""
    state: BetheState
    gamma: float
    lambda0: np.ndarray                     # line 0 roots, α = λ
    lambda1: np.ndarray                     # line 1 roots, α = λ + iπ
    residual: float = math.nan              # max |F| of the log BAE
    iterations: int = 0
    converged: bool = False

    def __post_init__(self):
        self.lambda0 = np.asarray(self.lambda0, dtype=float)
        self.lambda1 = np.asarray(self.lambda1, dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        """All roots in the α variable."""
        return np.concatenate([self.lambda0.astype(complex), self.lambda1 + 1j * math.pi])

    @property
    def all_lambdas(self) -> np.ndarray:
        return np.concatenate([self.lambda0, self.lambda1])

    def to_dict(self) -> dict:
        return {
            "state": self.state.to_dict(),
            "gamma": self.gamma,
            "lambda0": [float(x) for x in self.lambda0],
            "lambda1": [float(x) for x in self.lambda1],
            "residual": float(self.residual),
            "iterations": self.iterations,
            "converged": self.converged,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RootConfig":
        return cls(
            state=BetheState.from_dict(data["state"]),
            gamma=float(data["gamma"]),
            lambda0=np.array(data.get("lambda0", []), dtype=float),
            lambda1=np.array(data.get("lambda1", []), dtype=float),
            residual=float(data.get("residual", math.nan)),
            iterations=int(data.get("iterations", 0)),
            converged=bool(data.get("converged", False)),
        )
