"""
Experiment configuration loaded from config/experiments.yaml.

Each command has its own section; flags given on the command line replace
the values read here. Unknown keys are ignored and missing keys keep the
dataclass defaults.
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import yaml

from .exceptions import ParameterError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "experiments.yaml"


def _known(cls, data: Optional[dict]) -> dict:
    """Keep only the keys cls declares."""
    names = {f.name for f in fields(cls)}
    data = data or {}
    unknown = set(data) - names
    if unknown:
        logger.debug(f"{cls.__name__}: ignoring unknown keys {sorted(unknown)}")
    return {k: v for k, v in data.items() if k in names}


@dataclass
class SpectrumConfig:
    t: float = 5.0                          # γ = π/t
    sizes: list[int] = field(default_factory=lambda: [4, 6, 8])
    sector: int = 0                         # Sz sector of the ED rows
    twist: Optional[float] = None           # None: φ = γ, the twisted ground state
    levels: int = 6                         # eigenvalues kept per size
    watermelons: list[int] = field(default_factory=lambda: [2, 4])


@dataclass
class BetheConfig:
    gamma: float = math.pi / 4
    N: int = 4
    state: str = "ground"                   # ground | k2 | k4 | custom
    I0: list[float] = field(default_factory=list)
    I1: list[float] = field(default_factory=list)
    phi: float = 0.0
    ed_limit: int = 6                       # ED comparison only for N up to this


@dataclass
class PartitionConfig:
    Q: float = 2.0
    tau_grid: list[list[float]] = field(default_factory=lambda: [[0.0, 1.0], [0.3, 0.8], [-0.2, 1.4]])


@dataclass
class TbaConfig:
    t: int = 5
    r_grid: list[float] = field(default_factory=lambda: [1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0])
    fork: bool = False                      # also solve the twisted fork when t−3 is odd


@dataclass
class Tolerances:
    spectrum_c: float = 0.10                # relative
    spectrum_h: float = 0.15                # relative
    bethe_ed: float = 1e-8
    bethe_xxz: float = 1e-10
    partition_ising: float = 1e-10
    partition_modular: float = 1e-8
    partition_q1: float = 1e-8
    tba_uv: float = 1e-3
    tba_ir: float = 1e-3
    tba_fork: float = 1e-6                  # relative


@dataclass
class LabConfig:
    spectrum: SpectrumConfig = field(default_factory=SpectrumConfig)
    bethe: BetheConfig = field(default_factory=BetheConfig)
    partition: PartitionConfig = field(default_factory=PartitionConfig)
    tba: TbaConfig = field(default_factory=TbaConfig)
    tolerances: Tolerances = field(default_factory=Tolerances)
    source: str = "defaults"                # file the values came from

    @classmethod
    def from_yaml(cls, data: Optional[dict], source: str = "defaults") -> "LabConfig":
        """Create LabConfig from a parsed YAML mapping."""
        data = data or {}
        if not isinstance(data, dict):
            raise ParameterError(f"config {source} must be a mapping, got {type(data).__name__}")
        return cls(
            spectrum=SpectrumConfig(**_known(SpectrumConfig, data.get("spectrum"))),
            bethe=BetheConfig(**_known(BetheConfig, data.get("bethe"))),
            partition=PartitionConfig(**_known(PartitionConfig, data.get("partition"))),
            tba=TbaConfig(**_known(TbaConfig, data.get("tba"))),
            tolerances=Tolerances(**_known(Tolerances, data.get("tolerances"))),
            source=source,
        )

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: Optional[str] = None) -> LabConfig:
    """
    Resolve and load the configuration.

    Order: explicit path, then LAB_CONFIG, then config/experiments.yaml.
    A missing default file gives the built-in defaults.

    Raises:
        FileNotFoundError: an explicitly named file does not exist
    """
    explicit = path or os.getenv("LAB_CONFIG")
    config_path = Path(explicit) if explicit else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        if explicit:
            raise FileNotFoundError(f"Config file not found: {config_path}")
        logger.info(f"No config at {config_path}, using built-in defaults")
        return LabConfig()

    with open(config_path) as f:
        data = yaml.safe_load(f)
    logger.debug(f"Loaded config from {config_path}")
    return LabConfig.from_yaml(data, source=config_path.name)
