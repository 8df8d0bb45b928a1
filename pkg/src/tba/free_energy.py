"""
Ground-state energies of a free massive boson and a free Majorana fermion on
a circle, and the identity 2E_b(μ) = E_b(2μ) + 2E_f(μ) relating them.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from ..exceptions import ParameterError
from .system import RapidityGrid

logger = logging.getLogger(__name__)

TAIL_EXPONENT = 40.0
SMALL_SCALE = 1e-3


def _grid(mu: float, R: float) -> RapidityGrid:
    if mu <= 0 or R <= 0:
        raise ParameterError(f"mu and R must be positive, got mu={mu!r}, R={R!r}")
    if mu * R < SMALL_SCALE:
        logger.warning(f"muR = {mu * R:g} below {SMALL_SCALE:g}: quadrature tails need a wide grid")
    return RapidityGrid(theta_max=math.acosh(max(TAIL_EXPONENT / (mu * R), 1.0)) + 1.0, spacing=0.01)


def _integral(values: np.ndarray, grid: RapidityGrid) -> float:
    return float(np.dot(values * np.cosh(grid.points), grid.weights))


def boson_free_energy(mu: float, R: float, grid: RapidityGrid = None) -> float:
    """E_b = (μ/2π) ∫ log(1 − e^{−μR coshθ}) coshθ dθ, tending to −π/(6R)."""
    grid = grid or _grid(mu, R)
    x = mu * R * np.cosh(grid.points)
    return mu / (2 * math.pi) * _integral(np.log(-np.expm1(-x)), grid)


def fermion_free_energy(mu: float, R: float, grid: RapidityGrid = None) -> float:
    """E_f = −(μ/2π) ∫ log(1 + e^{−μR coshθ}) coshθ dθ, tending to −π/(12R)."""
    grid = grid or _grid(mu, R)
    x = mu * R * np.cosh(grid.points)
    return -mu / (2 * math.pi) * _integral(np.log1p(np.exp(-x)), grid)


def free_energy_identity(mu: float, R: float) -> float:
    """|2E_b(μ, R) − E_b(2μ, R) − 2E_f(μ, R)| on one shared grid."""
    grid = _grid(mu, R)
    residual = abs(
        2 * boson_free_energy(mu, R, grid)
        - boson_free_energy(2 * mu, R, grid)
        - 2 * fermion_free_energy(mu, R, grid)
    )
    logger.info(f"free-energy identity at muR={mu * R:g}: residual {residual:.3e}")
    return residual
