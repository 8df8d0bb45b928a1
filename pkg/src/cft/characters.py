"""
Virasoro-free characters of the two-boson theory.

Each primary of weight Δ carries descendants counted by pairs of partitions,
so its character is q^{Δ−c/24} Σ_n (p⋆p)(n) q^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from ..exceptions import ParameterError
from .torus import TorusPoint


def partition_numbers(n_max: int) -> List[int]:
    """p(0..n_max) by Euler's pentagonal recurrence."""
    if n_max < 0:
        raise ParameterError(f"n_max must be non-negative, got {n_max}")
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def eta_power_series(power: int, level_max: int) -> List[int]:
    """Coefficients of ∏(1 − q^n)^power up to q^level_max."""
    coefficients = [1] + [0] * level_max
    for n in range(1, level_max + 1):
        for _ in range(abs(power)):
            if power > 0:
                for j in range(level_max, n - 1, -1):
                    coefficients[j] -= coefficients[j - n]
            else:
                for j in range(n, level_max + 1):
                    coefficients[j] += coefficients[j - n]
    return coefficients


@dataclass(frozen=True)
class CharacterSeries:
    """q-expansion q^{leading} Σ_n multiplicities[n] q^n."""
    leading: float
    multiplicities: tuple

    def value(self, tp: TorusPoint) -> complex:
        n = np.arange(len(self.multiplicities))
        terms = np.array(self.multiplicities, dtype=float) * np.exp(2j * np.pi * tp.tau * (self.leading + n))
        return complex(terms.sum())


def character(delta: float, c: float, level_max: int) -> CharacterSeries:
    """
    Character of a primary of weight Δ in a theory of central charge c made
    of two free bosons, truncated at level_max.
    """
    p = partition_numbers(level_max)
    multiplicities = tuple(
        sum(p[k] * p[n - k] for k in range(n + 1)) for n in range(level_max + 1)
    )
    return CharacterSeries(leading=delta - c / 24, multiplicities=multiplicities)
