"""
Exception hierarchy for the lab.

Every failure raised by the numerical modules derives from LabError so the
CLI can map it to an exit code in one place.
"""
from __future__ import annotations

from typing import Optional


class LabError(Exception):
    """Base class for all lab failures."""


class ParameterError(LabError):
    """Raised when an input lies outside the supported domain."""


class SolverError(LabError):
    """Raised when an iterative solver does not reach its tolerance."""

    def __init__(self, message: str, residual: Optional[float] = None, iterations: Optional[int] = None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class ConsistencyError(LabError):
    """Raised when two independent evaluations of the same quantity disagree."""


class TruncationError(LabError):
    """Raised when a truncation or overflow bound cannot be honoured."""
