"""
Chain Hilbert spaces and the operators acting on them.

Two bases are supported:
- SpinBasis: 2N spin-1/2 sites, optionally restricted to a fixed Sz sector
- RsosBasis: closed height paths h_1..h_2N with heights in 1..p

A Representation bundles a basis with its TL generators so the lattice
models can be written once for both.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..exceptions import ParameterError
from .params import ModelParams, build_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpinBasis:
    """
    Bit configurations of 2N spins, site j up <=> bit (j-1) set.

    States are sorted ascending as integers. sector=None keeps the full
    2^(2N) space.
    """
    strands: int                    # 2N
    sector: Optional[int] = None    # total Sz, or None for all sectors
    states: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.strands < 2:
            raise ParameterError(f"need at least two strands, got {self.strands}")
        if self.sector is None:
            states = tuple(range(1 << self.strands))
        else:
            n_up = self.strands // 2 + self.sector
            if self.strands % 2 or not (0 <= n_up <= self.strands):
                states = ()
            else:
                states = tuple(s for s in range(1 << self.strands) if bin(s).count("1") == n_up)
        object.__setattr__(self, "states", states)

    @property
    def N(self) -> int:
        return self.strands // 2

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def state_array(self) -> np.ndarray:
        return np.array(self.states, dtype=np.int64)

    def spin(self, state: int, site: int) -> int:
        """+1 for up, -1 for down at 1-based site."""
        return 1 if (state >> (site - 1)) & 1 else -1


@dataclass(frozen=True)
class RsosBasis:
    """Closed height paths on 2N sites, enumerated in lexicographic order."""
    strands: int
    p: int
    heights: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.p < 3:
            raise ParameterError(f"RSOS cutoff p must be at least 3, got {self.p}")
        object.__setattr__(self, "heights", tuple(self._enumerate()))

    def _enumerate(self):
        L, p = self.strands, self.p
        paths = []

        def extend(path):
            if len(path) == L:
                if abs(path[-1] - path[0]) == 1:
                    paths.append(tuple(path))
                return
            for h in (path[-1] - 1, path[-1] + 1):
                if 1 <= h <= p:
                    extend(path + [h])

        for h1 in range(1, p + 1):
            extend([h1])
        return paths

    @property
    def N(self) -> int:
        return self.strands // 2

    @property
    def size(self) -> int:
        return len(self.heights)

    @cached_property
    def index(self) -> dict:
        return {h: i for i, h in enumerate(self.heights)}

    @property
    def sqrtQ(self) -> float:
        return 2.0 * math.cos(math.pi / (self.p + 1))

    def S(self, h: int) -> float:
        return math.sin(math.pi * h / (self.p + 1))


Basis = Union[SpinBasis, RsosBasis]


@dataclass
class SectorOperator:
    """A complex sparse operator on one basis."""
    basis: Basis
    matrix: sp.csr_matrix

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix, dtype=complex)
        n = self.basis.size
        if self.matrix.shape != (n, n):
            raise ParameterError(f"operator shape {self.matrix.shape} does not match basis size {n}")

    @property
    def dim(self) -> int:
        return self.basis.size

    @property
    def is_empty(self) -> bool:
        return self.basis.size == 0

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def with_matrix(self, matrix) -> "SectorOperator":
        return SectorOperator(self.basis, matrix)

    def __matmul__(self, other: "SectorOperator") -> "SectorOperator":
        return SectorOperator(self.basis, self.matrix @ other.matrix)

    def __add__(self, other: "SectorOperator") -> "SectorOperator":
        return SectorOperator(self.basis, self.matrix + other.matrix)

    def __sub__(self, other: "SectorOperator") -> "SectorOperator":
        return SectorOperator(self.basis, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "SectorOperator":
        return SectorOperator(self.basis, self.matrix * scalar)

    __rmul__ = __mul__


def operator_norm(matrix) -> float:
    """Spectral norm for small matrices, Frobenius bound beyond."""
    if sp.issparse(matrix):
        if max(matrix.shape) <= 2000:
            matrix = matrix.toarray()
        else:
            return float(spla.norm(matrix))
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, ord=2))


class Representation(ABC):
    """
    A basis together with its cyclic TL generators e_1..e_2N.

    Subclasses implement _build_generator(); generators are cached.
    """

    def __init__(self, N: int, params: ModelParams):
        if N < 1:
            raise ParameterError(f"block count N must be positive, got {N}")
        self.N = N
        self.params = params
        self._generators: dict[int, SectorOperator] = {}

    @property
    def strands(self) -> int:
        return 2 * self.N

    @property
    @abstractmethod
    def basis(self) -> Basis:
        pass

    @abstractmethod
    def _build_generator(self, j: int) -> sp.csr_matrix:
        pass

    def generator(self, j: int) -> SectorOperator:
        """e_j with 1-based cyclic index."""
        j = (j - 1) % self.strands + 1
        if j not in self._generators:
            self._generators[j] = SectorOperator(self.basis, self._build_generator(j))
        return self._generators[j]

    def generators(self) -> list[SectorOperator]:
        return [self.generator(j) for j in range(1, self.strands + 1)]

    def identity(self) -> SectorOperator:
        return SectorOperator(self.basis, sp.identity(self.basis.size, dtype=complex, format="csr"))


class SpinRepresentation(Representation):
    """
    e_j = -(σ+_j σ-_{j+1} + h.c.) + ½(1 - σz_j σz_{j+1}) exp(iγ σz_{j+1}).
    """

    def __init__(self, N: int, params: ModelParams, sector: Optional[int] = 0):
        super().__init__(N, params)
        self._basis = SpinBasis(2 * N, sector)
        if self._basis.size == 0:
            logger.warning(f"Sz sector {sector} is empty for 2N = {2 * N}")

    @property
    def basis(self) -> SpinBasis:
        return self._basis

    @property
    def sector(self) -> Optional[int]:
        return self._basis.sector

    def _build_generator(self, j: int) -> sp.csr_matrix:
        L = self.strands
        a, b = j - 1, j % L
        phase = np.exp(1j * self.params.gamma)
        rows, cols, vals = [], [], []
        index = self._basis.index
        for col, s in enumerate(self._basis.states):
            up_a, up_b = (s >> a) & 1, (s >> b) & 1
            if up_a == up_b:
                continue
            rows.append(col)
            cols.append(col)
            vals.append(np.conj(phase) if up_a else phase)
            rows.append(index[s ^ ((1 << a) | (1 << b))])
            cols.append(col)
            vals.append(-1.0)
        n = self._basis.size
        return sp.coo_matrix((vals, (rows, cols)), shape=(n, n), dtype=complex).tocsr()


class RsosRepresentation(Representation):
    """
    Height representation at √Q = 2cos(π/(p+1)); e_j acts on h_j.
    """

    def __init__(self, N: int, p: int):
        super().__init__(N, build_params(math.pi / (p + 1)))
        self.p = p
        self._basis = RsosBasis(2 * N, p)

    @property
    def basis(self) -> RsosBasis:
        return self._basis

    def _build_generator(self, j: int) -> sp.csr_matrix:
        L = self.strands
        basis = self._basis
        rows, cols, vals = [], [], []
        for col, path in enumerate(basis.heights):
            left, right = path[(j - 2) % L], path[j % L]
            if left != right:
                continue
            h = path[j - 1]
            for h_new in (right - 1, right + 1):
                if not 1 <= h_new <= basis.p:
                    continue
                new_path = path[:j - 1] + (h_new,) + path[j:]
                rows.append(basis.index[new_path])
                cols.append(col)
                vals.append(math.sqrt(basis.S(h) * basis.S(h_new)) / basis.S(right))
        n = basis.size
        return sp.coo_matrix((vals, (rows, cols)), shape=(n, n), dtype=complex).tocsr()


def get_representation(kind: str, N: int, params: Optional[ModelParams] = None,
                       sector: Optional[int] = 0, p: Optional[int] = None) -> Representation:
    """
    Factory for chain representations.

    Args:
        kind: "spin" or "rsos"
        N: block count (2N strands)
        params: model parameters (spin representation)
        sector: Sz sector for the spin representation, None for the full space
        p: height cutoff (RSOS representation)

    Raises:
        ParameterError: If the representation kind is not supported
    """
    representations = {
        "spin": lambda: SpinRepresentation(N, params, sector),
        "rsos": lambda: RsosRepresentation(N, p),
    }
    factory = representations.get(kind)
    if not factory:
        raise ParameterError(f"Unsupported representation: {kind}")
    if kind == "spin" and params is None:
        raise ParameterError("spin representation needs model parameters")
    if kind == "rsos" and p is None:
        raise ParameterError("RSOS representation needs the height cutoff p")
    return factory()
