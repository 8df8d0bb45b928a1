"""
Finite-size fits for the central charge and scaling dimensions.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from ..exceptions import ParameterError

logger = logging.getLogger(__name__)


@dataclass
class FitResult:
    """Outcome of a finite-size fit."""
    quantity: str                           # "c" or "h"
    estimate: float
    sizes: tuple
    e_inf: Optional[float] = None           # bulk energy per block (c fit only)
    residual: float = 0.0                   # least-squares residual, 0 for exact solves
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "estimate": self.estimate,
            "sizes": list(self.sizes),
            "e_inf": self.e_inf,
            "residual": self.residual,
            **self.extra,
        }


def central_charge_fit(E0: Mapping[int, float], v: float) -> FitResult:
    """
    Fit E0(N) = N e∞ − πvc/(6N) + d/N³.

    Three sizes are solved exactly; more sizes go through least squares.

    Raises:
        ParameterError: fewer than three distinct sizes or a singular system
    """
    sizes = tuple(sorted(E0))
    if len(sizes) < 3:
        raise ParameterError(f"central charge fit needs three sizes, got {sizes}")
    Ns = np.array(sizes, dtype=float)
    if np.any(Ns <= 0):
        raise ParameterError("sizes must be positive")
    A = np.column_stack([Ns, -math.pi * v / (6 * Ns), Ns ** -3.0])
    b = np.array([float(np.real(E0[n])) for n in sizes])
    if np.linalg.matrix_rank(A) < 3:
        raise ParameterError(f"degenerate central charge fit for sizes {sizes}")
    if len(sizes) == 3:
        coef = np.linalg.solve(A, b)
        residual = 0.0
    else:
        coef, res, _, _ = np.linalg.lstsq(A, b, rcond=None)
        residual = float(res[0]) if res.size else 0.0
    e_inf, c, d = (float(x) for x in coef)
    logger.info(f"central charge fit over {sizes}: c = {c:.6g}, e_inf = {e_inf:.10g}")
    return FitResult("c", c, sizes, e_inf=e_inf, residual=residual, extra={"d": d})


def scaled_gap(N: int, gap: float, v: float) -> float:
    """x(N) = N·gap/(2πv)."""
    return N * gap / (2 * math.pi * v)


def exponent_fit(gaps: Mapping[int, float], v: float) -> FitResult:
    """
    Two-size estimate of h = x/2, with x extrapolated linearly in 1/N².

    Raises:
        ParameterError: fewer than two sizes or a non-positive gap
    """
    sizes = tuple(sorted(gaps))
    if len(sizes) < 2:
        raise ParameterError(f"exponent fit needs two sizes, got {sizes}")
    for n in sizes:
        if float(np.real(gaps[n])) <= 0:
            raise ParameterError(f"non-positive gap {gaps[n]} at N = {n}")
    n1, n2 = sizes[-2], sizes[-1]
    x1 = scaled_gap(n1, float(np.real(gaps[n1])), v)
    x2 = scaled_gap(n2, float(np.real(gaps[n2])), v)
    x = (n2 ** 2 * x2 - n1 ** 2 * x1) / (n2 ** 2 - n1 ** 2)
    logger.info(f"exponent fit over ({n1}, {n2}): x = {x:.6g}")
    return FitResult("h", x / 2, (n1, n2), extra={"x": x, "x_sizes": [x1, x2]})
