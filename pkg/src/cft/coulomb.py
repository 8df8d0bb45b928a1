"""
Coulombic torus partition functions of the staggered model.

Z_{m,m'}(g) is the free compact boson with defects (m, m'). The continuum
partition functions are parity-weighted sums of these, with weights A, B, C, D
taken either from theta quotients or from the Ising spin sectors. Both routes
are evaluated and compared whenever Z(g) is requested.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from ..exceptions import ConsistencyError, ParameterError, TruncationError
from ..lattice import params_from_Q
from .torus import TorusPoint, eta, z_nu

logger = logging.getLogger(__name__)

PARITY_CLASSES = ("ee", "eo", "oe", "oo")     # parities of (m, m')
MAX_DEFECT_TERMS = 4_000_000
CHECK_TOL = 1e-10


def z_zero(g: float, tp: TorusPoint) -> float:
    """Defect-free boson Z0(g) = √(g/Im τ)/|η|²."""
    return math.sqrt(g / tp.im) / abs(eta(tp)) ** 2


def z_mm(g: float, m: int, m_prime: int, tp: TorusPoint) -> float:
    """Z_{m,m'}(g) = Z0(g) exp(−πg|m' − mτ|²/Im τ)."""
    if g <= 0:
        raise ParameterError(f"coupling g must be positive, got {g!r}")
    return z_zero(g, tp) * math.exp(-math.pi * g * abs(m_prime - m * tp.tau) ** 2 / tp.im)


def _defect_grid(g: float, tp: TorusPoint):
    """
    Defect pairs (m, m') and their Z_{m,m'}(g), truncated where the Gaussian
    drops below the lattice tail bound.

    Raises:
        TruncationError: when the bound needs more than MAX_DEFECT_TERMS terms
    """
    if g <= 0:
        raise ParameterError(f"coupling g must be positive, got {g!r}")
    budget = tp.lattice_budget
    m_max = int(math.ceil(math.sqrt(budget / (math.pi * g * tp.im)))) + 1
    width = int(math.ceil(math.sqrt(budget * tp.im / (math.pi * g)))) + 1
    lo = int(math.floor(-m_max * abs(tp.re))) - width
    hi = int(math.ceil(m_max * abs(tp.re))) + width
    n_terms = (2 * m_max + 1) * (hi - lo + 1)
    if n_terms > MAX_DEFECT_TERMS:
        raise TruncationError(
            f"defect sum at g={g}, tau={tp.tau} needs {n_terms} terms "
            f"(|m| <= {m_max}, {lo} <= m' <= {hi}); limit is {MAX_DEFECT_TERMS}"
        )
    m, m_prime = np.meshgrid(np.arange(-m_max, m_max + 1), np.arange(lo, hi + 1), indexing="ij")
    exponent = (m_prime - m * tp.re) ** 2 + (m * tp.im) ** 2
    values = z_zero(g, tp) * np.exp(-math.pi * g * exponent / tp.im)
    return m, m_prime, values


def defect_sums(g: float, tp: TorusPoint,
                weight: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None) -> Dict[str, float]:
    """
    Σ Z_{m,m'}(g) over each parity class of (m, m'), optionally weighted.

    Keys are "ee", "eo", "oe", "oo" with the parity of m first.
    """
    m, m_prime, values = _defect_grid(g, tp)
    if weight is not None:
        values = values * weight(m, m_prime)
    sums = {}
    for key in PARITY_CLASSES:
        mask = (m % 2 == (key[0] == "o")) & (m_prime % 2 == (key[1] == "o"))
        sums[key] = float(values[mask].sum())
    return sums


def compact_boson_sum(g: float, tp: TorusPoint) -> float:
    """Σ over all (m, m') of Z_{m,m'}(g)."""
    return float(_defect_grid(g, tp)[2].sum())


def defect_row_sum(g: float, m: int, alpha: float, tp: TorusPoint) -> complex:
    """Σ_{m'} e^{iαm'} Z_{m,m'}(g)."""
    width = int(math.ceil(math.sqrt(tp.lattice_budget * tp.im / (math.pi * g)))) + 1
    centre = int(round(m * tp.re))
    m_prime = np.arange(centre - width, centre + width + 1)
    values = np.array([z_mm(g, m, int(k), tp) for k in m_prime])
    return complex((np.exp(1j * alpha * m_prime) * values).sum())


def coulomb_character_sum(g: float, m: int, alpha: float, tp: TorusPoint) -> complex:
    """
    Poisson-resummed form of defect_row_sum:
    |η|^{-2} Σ_{k ∈ Z + α/2π} q^{(k/√g + m√g)²/4} q̄^{(k/√g − m√g)²/4}.
    """
    shift = alpha / (2 * math.pi)
    k_max = int(math.ceil(math.sqrt(tp.lattice_budget * g / (math.pi * tp.im)))) + 2
    k = np.arange(-k_max, k_max + 1) + shift
    modulus = np.exp(-math.pi * tp.im * (k ** 2 / g + m ** 2 * g))
    phase = np.exp(2j * math.pi * tp.re * k * m)
    return complex((modulus * phase).sum()) / abs(eta(tp)) ** 2


@dataclass(frozen=True)
class PartitionSums:
    """The sector weights A, B, C, D multiplying the four parity classes."""
    A: float
    B: float
    C: float
    D: float

    def weights(self) -> Dict[str, float]:
        return {"ee": self.A, "eo": self.B, "oe": self.C, "oo": self.D}

    def max_difference(self, other: "PartitionSums") -> float:
        return max(abs(a - b) for a, b in zip(self.weights().values(), other.weights().values()))

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D}


def jacobi_abcd(tp: TorusPoint) -> PartitionSums:
    """A, B, C, D from the squared Jacobi partition functions."""
    z2, z3, z4 = (z_nu(nu, tp) ** 2 for nu in (2, 3, 4))
    return PartitionSums(
        A=(z2 + z3 + z4) / 4,
        B=(-z2 + z3 + z4) / 4,
        C=(z2 + z3 - z4) / 4,
        D=(z2 - z3 + z4) / 4,
    )


def defect_abcd(tp: TorusPoint) -> PartitionSums:
    """A, B, C, D as parity sums of Z_{m,m'}(1/2)."""
    sums = defect_sums(0.5, tp)
    return PartitionSums(A=sums["ee"], B=sums["eo"], C=sums["oe"], D=sums["oo"])


@dataclass(frozen=True)
class IsingBlocks:
    """
    Ising torus partition functions 𝒵(r, r') with spins flipped by (−1)^r and
    (−1)^{r'} across the two cycles.
    """
    z00: float
    z01: float
    z10: float
    z11: float

    @classmethod
    def from_jacobi(cls, tp: TorusPoint) -> "IsingBlocks":
        z2, z3, z4 = (z_nu(nu, tp) for nu in (2, 3, 4))
        return cls(
            z00=(z2 + z3 + z4) / 2,
            z01=(z3 + z4 - z2) / 2,
            z10=(z2 + z3 - z4) / 2,
            z11=(z2 + z4 - z3) / 2,
        )

    def __getitem__(self, key) -> float:
        r, r_prime = key
        return getattr(self, f"z{r}{r_prime}")

    def abcd(self) -> PartitionSums:
        """A, B, C, D as Ising bilinears."""
        return PartitionSums(
            A=(self.z00 ** 2 + self.z01 ** 2 + self.z10 ** 2 + self.z11 ** 2) / 4,
            B=(self.z00 * self.z01 - self.z10 * self.z11) / 2,
            C=(self.z00 * self.z10 - self.z01 * self.z11) / 2,
            D=(self.z00 * self.z11 - self.z01 * self.z10) / 2,
        )


def z_ising(tp: TorusPoint) -> float:
    """Critical Ising partition function (Z2 + Z3 + Z4)/2."""
    return IsingBlocks.from_jacobi(tp).z00


def _assemble(abcd: PartitionSums, sums: Dict[str, float]) -> float:
    weights = abcd.weights()
    return 2 * sum(weights[key] * sums[key] for key in PARITY_CLASSES)


def ising_form(g: float, tp: TorusPoint, sums: Optional[Dict[str, float]] = None) -> float:
    """
    Z(g) as ½ Σ (−1)^{r1 r2' + r1' r2} 𝒵(r1, r1') 𝒵(r2, r2') Σ Z_{m,m'}(g),
    with m ≡ r1 + r2 and m' ≡ r1' + r2' mod 2.
    """
    if sums is None:
        sums = defect_sums(g, tp)
    blocks = IsingBlocks.from_jacobi(tp)
    bits = (0, 1)
    total = 0.0
    for r1 in bits:
        for r1p in bits:
            for r2 in bits:
                for r2p in bits:
                    sign = -1.0 if (r1 * r2p + r1p * r2) % 2 else 1.0
                    key = "eo"[(r1 + r2) % 2] + "eo"[(r1p + r2p) % 2]
                    total += sign * blocks[r1, r1p] * blocks[r2, r2p] * sums[key]
    return total / 2


def z_untwisted(g: float, tp: TorusPoint) -> float:
    """
    Continuum partition function Z(g) of the untwisted staggered model.

    The theta-quotient and Ising-sector forms are both evaluated.

    Raises:
        ConsistencyError: when the two forms differ by more than CHECK_TOL
            relative to the value
    """
    sums = defect_sums(g, tp)
    coulomb = _assemble(jacobi_abcd(tp), sums)
    ising = ising_form(g, tp, sums)
    mismatch = abs(coulomb - ising)
    if mismatch > CHECK_TOL * max(1.0, abs(coulomb)):
        raise ConsistencyError(
            f"Z(g={g}) at tau={tp.tau}: Coulomb form {coulomb!r} vs Ising form {ising!r}"
        )
    logger.debug(f"Z(g={g}) at tau={tp.tau}: {coulomb:.12g} (forms differ by {mismatch:.2e})")
    return coulomb


def gcd_weight(phi: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """cos(2φ gcd(m, m')), with gcd(0, m') = |m'| and gcd(0, 0) = 0."""
    def weight(m: np.ndarray, m_prime: np.ndarray) -> np.ndarray:
        return np.cos(2 * phi * np.gcd(m, m_prime))
    return weight


def z_twisted(g: float, phi: float, tp: TorusPoint) -> float:
    """Ẑ(g, φ): non-contractible loops carry weight 2cos φ."""
    sums = defect_sums(g, tp, weight=gcd_weight(phi))
    return _assemble(jacobi_abcd(tp), sums)


def z_potts(Q: float, tp: TorusPoint) -> float:
    """
    Potts partition function Ẑ(g, πe0) + ½(Q − 1) Ẑ(g, π/2) for 0 < Q < 4.
    """
    params = params_from_Q(Q)
    cross = 0.5 * (Q - 1) * z_twisted(params.g, math.pi / 2, tp)
    return z_twisted(params.g, math.pi * params.e0, tp) + cross


def _boson_sectors(g: float, tp: TorusPoint) -> np.ndarray:
    """
    S[pe, pm] = Σ q^Δ q̄^Δ̄ over electric e ≡ pe and magnetic m ≡ pm (mod 2)
    for one boson at coupling g.
    """
    budget = tp.lattice_budget
    e_max = int(math.ceil(math.sqrt(4 * g * budget / (math.pi * tp.im)))) + 2
    m_max = int(math.ceil(math.sqrt(budget / (math.pi * g * tp.im)))) + 2
    e, m = np.meshgrid(np.arange(-e_max, e_max + 1), np.arange(-m_max, m_max + 1), indexing="ij")
    modulus = np.exp(-math.pi * tp.im * (e ** 2 / (4 * g) + g * m ** 2))
    terms = modulus * np.exp(1j * math.pi * tp.re * e * m)
    sectors = np.zeros((2, 2), dtype=complex)
    for pe in (0, 1):
        for pm in (0, 1):
            sectors[pe, pm] = terms[(e % 2 == pe) & (m % 2 == pm)].sum()
    return sectors


def coulomb_gas_sum(g: float, tp: TorusPoint) -> float:
    """
    Z(g) summed directly over charges (e, m, ẽ, m̃) of the two bosons, the
    second at coupling 1/2, with e + ẽ and m + m̃ even.
    """
    total = (_boson_sectors(g, tp) * _boson_sectors(0.5, tp)).sum()
    return float(total.real) / abs(eta(tp)) ** 4
