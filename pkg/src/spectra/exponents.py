"""
Closed-form conformal data of the staggered model as functions of γ and the twist φ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..lattice.params import ModelParams


@dataclass(frozen=True)
class ExponentTable:
    params: ModelParams

    @property
    def c_tw(self) -> float:
        """Effective central charge in the twisted ground state, 2 − 6e0²/g."""
        p = self.params
        return 2 - 6 * p.e0 ** 2 / p.g

    @property
    def h_H(self) -> float:
        p = self.params
        return 0.125 - p.e0 ** 2 / (4 * p.g)

    @property
    def phi0(self) -> float:
        return math.pi * (1 + 2 * self.params.g) / 4

    def h_k(self, k: int) -> float:
        """k-leg watermelon dimension; k ≡ 2 mod 4 carries an extra 1/8."""
        p = self.params
        value = p.g * k ** 2 / 16 - p.e0 ** 2 / (4 * p.g)
        if k % 4 == 2:
            value += 0.125
        return value

    def delta1(self, phi: float) -> float:
        return (phi / math.pi) ** 2 / (4 * self.params.g)

    def delta2(self, phi: float) -> float:
        return (phi / math.pi - 0.5) ** 2 / (4 * self.params.g) + 0.125

    def delta3(self, phi: float) -> float:
        return (1 - phi / math.pi) ** 2 / (4 * self.params.g)

    def effective_central_charge(self, phi: float) -> float:
        return 2 - 6 * (phi / math.pi) ** 2 / self.params.g

    def lowest_twisted_dimension(self, phi: float) -> tuple:
        """(index, value) of min(Δ1, Δ2, Δ3) at twist φ."""
        values = (self.delta1(phi), self.delta2(phi), self.delta3(phi))
        index = min(range(3), key=values.__getitem__)
        return index + 1, values[index]

    def to_dict(self, ks=(2, 4)) -> dict:
        data = {
            "c_tw": self.c_tw,
            "h_H": self.h_H,
            "phi0": self.phi0,
        }
        for k in ks:
            data[f"h_{k}"] = self.h_k(k)
        return data


def exponent_formulas(params: ModelParams) -> ExponentTable:
    return ExponentTable(params)
