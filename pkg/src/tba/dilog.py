"""
UV central charges of TBA systems from Rogers dilogarithm sums.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.special import spence

from ..exceptions import ParameterError, SolverError
from .system import TbaSystem, chain_system

logger = logging.getLogger(__name__)

STATIONARY_TOL = 1e-14
MAX_STATIONARY_ITERATIONS = 100_000


def rogers_dilog(x: float) -> float:
    """L(x) = Li2(x) + ½ ln x ln(1 − x) on [0, 1], normalised so L(1) = π²/6."""
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"Rogers dilogarithm needs 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return math.pi ** 2 / 6
    return float(spence(1 - x)) + 0.5 * math.log(x) * math.log(1 - x)


def stationary_values(couplings: np.ndarray, active: Optional[Sequence[bool]] = None) -> np.ndarray:
    """
    Solve x_a² = Π_b (1 + x_b)^{W_ab} over the active nodes by iteration.

    Inactive nodes are pinned to 0 (their pseudo-energies diverge).

    Raises:
        SolverError: the iteration does not settle
    """
    W = np.asarray(couplings, dtype=float)
    n = W.shape[0]
    mask = np.ones(n, dtype=bool) if active is None else np.asarray(active, dtype=bool)
    x = np.where(mask, 1.0, 0.0)
    for iteration in range(1, MAX_STATIONARY_ITERATIONS + 1):
        updated = np.where(mask, np.exp(0.5 * W @ np.log1p(x)), 0.0)
        if not np.all(np.isfinite(updated)):
            raise SolverError("stationary values diverged", iterations=iteration)
        change = float(np.abs(updated - x).max())
        x = updated
        if change < STATIONARY_TOL:
            return x
    raise SolverError(
        f"stationary values did not settle (last change {change:.3e})",
        residual=change,
        iterations=MAX_STATIONARY_ITERATIONS,
    )


def _dilog_sum(values: np.ndarray, weights: Sequence[float]) -> float:
    return sum(w * rogers_dilog(v / (1 + v)) for v, w in zip(values, weights))


def uv_dilog_check(system: TbaSystem) -> float:
    """
    c = (6/π²)[Σ_a w_a L(x_a/(1+x_a)) − Σ_a w_a L(y_a/(1+y_a))].

    x solves the stationary system on all nodes, y on the massless ones only.
    """
    W = system.couplings
    x = stationary_values(W)
    massless = ~system.massive
    # massive nodes drop out of the IR system
    y = stationary_values(W * massless[None, :], active=massless)
    weights = system.node_weights
    c = 6 / math.pi ** 2 * (_dilog_sum(x, weights) - _dilog_sum(y, weights))
    logger.info(f"{system.name}: UV central charge from dilogarithms {c:.12g}")
    return c


def uv_decomposition(t: int) -> tuple:
    """
    Split the chain's UV value into two RSOS central charges
    1 − 6/(t(t−1)) and 1 − 6/((t−1)(t−2)) through the z system on nodes 2..t−3.
    """
    system = chain_system(t)
    W = system.couplings
    n = system.size
    x = stationary_values(W)
    inner = np.arange(n) > 0
    z = stationary_values(W * inner[None, :], active=inner)
    massless = ~system.massive
    y = stationary_values(W * massless[None, :], active=massless)
    ones = (1.0,) * n
    upper = 6 / math.pi ** 2 * (_dilog_sum(x, ones) - _dilog_sum(z, ones))
    lower = 6 / math.pi ** 2 * (_dilog_sum(z, ones) - _dilog_sum(y, ones))
    return upper, lower
