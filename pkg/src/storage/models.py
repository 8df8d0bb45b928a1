"""
Data models for the run ledger.

These dataclasses define the rows of the two ledger tables. They're used both
in memory and as the schema reference for SQLite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional
import hashlib
import json

from ..bethe.state import BetheState, RootConfig


@dataclass
class RunRecord:
    """
    One CLI invocation and the outcome of its checks.

    The `id` is a hash of command + canonical parameters, so rerunning the
    same experiment overwrites its previous entry.
    """
    id: str                         # hash of command + params
    command: str                    # "spectrum" | "bethe" | "partition" | "tba"
    params: dict                    # resolved parameters
    checks: dict                    # check name -> passed
    passed: bool
    output_path: Optional[str] = None
    created_at: datetime = field(default_factory=datetime.now)

    @staticmethod
    def generate_id(command: str, params: dict) -> str:
        raw = f"{command}:{json.dumps(params, sort_keys=True, default=str)}"
        return hashlib.sha256(raw.encode()).hexdigest()[:16]

    @classmethod
    def create(cls, command: str, params: dict, checks: dict,
               output_path: Optional[str] = None) -> "RunRecord":
        return cls(
            id=cls.generate_id(command, params),
            command=command,
            params=params,
            checks=checks,
            passed=all(checks.values()),
            output_path=output_path,
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "command": self.command,
            "params": self.params,
            "checks": self.checks,
            "passed": self.passed,
            "output_path": self.output_path,
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(
            id=data["id"],
            command=data["command"],
            params=data.get("params", {}),
            checks=data.get("checks", {}),
            passed=bool(data.get("passed", False)),
            output_path=data.get("output_path"),
            created_at=datetime.fromisoformat(data["created_at"]),
        )


@dataclass
class RootBaseline:
    """
    Converged Bethe roots kept as a starting point and regression baseline.

    Keyed by BetheState.key(gamma).
    """
    key: str
    state: BetheState
    gamma: float
    lambda0: list[float]
    lambda1: list[float]
    residual: float
    energy: float

    @classmethod
    def from_roots(cls, roots: RootConfig, energy: float) -> "RootBaseline":
        return cls(
            key=roots.state.key(roots.gamma),
            state=roots.state,
            gamma=roots.gamma,
            lambda0=[float(x) for x in roots.lambda0],
            lambda1=[float(x) for x in roots.lambda1],
            residual=float(roots.residual),
            energy=float(energy),
        )

    def to_roots(self) -> RootConfig:
        return RootConfig(
            state=self.state,
            gamma=self.gamma,
            lambda0=self.lambda0,
            lambda1=self.lambda1,
            residual=self.residual,
            converged=True,
        )

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "state": self.state.to_dict(),
            "gamma": self.gamma,
            "lambda0": self.lambda0,
            "lambda1": self.lambda1,
            "residual": self.residual,
            "energy": self.energy,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RootBaseline":
        state = BetheState.from_dict(data["state"])
        gamma = float(data["gamma"])
        return cls(
            key=data.get("key") or state.key(gamma),
            state=state,
            gamma=gamma,
            lambda0=[float(x) for x in data.get("lambda0", [])],
            lambda1=[float(x) for x in data.get("lambda1", [])],
            residual=float(data.get("residual", 0.0)),
            energy=float(data["energy"]),
        )
