"""
Eigenvalues of sector operators.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as la
import scipy.sparse.linalg as spla

from ..exceptions import ParameterError, SolverError
from ..lattice.representations import SectorOperator

logger = logging.getLogger(__name__)

# Above this dimension the full spectrum is refused and extremal mode is required.
DENSE_LIMIT = 4000
HERMITIAN_TOL = 1e-12
ARPACK_SEED = 0                     # seed of the eigs start vector


@dataclass
class SpectrumTable:
    """Sorted eigenvalues of one operator in one sector."""
    N: int
    sector: Optional[int]
    twist: float
    eigenvalues: np.ndarray
    kind: str = "hamiltonian"               # hamiltonian | transfer
    label: str = ""

    @property
    def ground(self) -> complex:
        return complex(self.eigenvalues[0]) if self.eigenvalues.size else complex("nan")

    def gaps(self) -> np.ndarray:
        return self.eigenvalues - self.eigenvalues[0]

    def to_rows(self, t: float) -> list[dict]:
        return [
            {
                "t": t,
                "N": self.N,
                "sector": "" if self.sector is None else self.sector,
                "twist": self.twist,
                "re": float(ev.real),
                "im": float(ev.imag),
            }
            for ev in self.eigenvalues
        ]


def _sort(values: np.ndarray, kind: str) -> np.ndarray:
    if kind == "transfer":
        order = np.lexsort((values.real, -np.abs(values)))
    else:
        order = np.lexsort((values.imag, values.real))
    return values[order]


def _is_hermitian(matrix) -> bool:
    diff = matrix - matrix.conj().T
    if diff.nnz == 0:
        return True
    return float(np.abs(diff.data).max()) < HERMITIAN_TOL


def diagonalize(op: SectorOperator, mode: str = "full", k: int = 6, kind: str = "hamiltonian",
                N: Optional[int] = None, twist: float = 0.0, label: str = "") -> SpectrumTable:
    """
    Eigenvalues of op.

    Args:
        op: the operator
        mode: "full" (dense) or "extremal" (ARPACK, k eigenvalues)
        kind: "hamiltonian" sorts by real part ascending,
              "transfer" by modulus descending
        N, twist, label: bookkeeping copied into the table

    Raises:
        ParameterError: unknown mode/kind, or full mode above DENSE_LIMIT
        SolverError: if ARPACK does not converge
    """
    if kind not in ("hamiltonian", "transfer"):
        raise ParameterError(f"unknown spectrum kind {kind!r}")
    sector = getattr(op.basis, "sector", None)
    N = op.basis.strands // 2 if N is None else N
    dim = op.dim
    if dim == 0:
        logger.warning("diagonalizing an empty operator")
        return SpectrumTable(N, sector, twist, np.zeros(0, dtype=complex), kind, label)

    if mode == "full":
        if dim > DENSE_LIMIT:
            raise ParameterError(
                f"dimension {dim} above the dense limit {DENSE_LIMIT} "
                f"(dense storage would need {dim * dim * 16 / 2**20:.0f} MiB); use extremal mode"
            )
        if _is_hermitian(op.matrix):
            values = la.eigvalsh(op.toarray()).astype(complex)
        else:
            values = la.eigvals(op.toarray())
    elif mode == "extremal":
        if k >= dim - 1:
            return diagonalize(op, "full", k, kind, N, twist, label)
        which = "LM" if kind == "transfer" else "SR"
        try:
            v0 = np.random.default_rng(ARPACK_SEED).standard_normal(dim)
            values = spla.eigs(op.matrix, k=k, which=which, v0=v0, return_eigenvectors=False)
        except spla.ArpackNoConvergence as e:
            raise SolverError(f"ARPACK did not converge: {e}", iterations=None)
    else:
        raise ParameterError(f"unknown diagonalization mode {mode!r}")

    table = SpectrumTable(N, sector, twist, _sort(np.asarray(values, dtype=complex), kind), kind, label)
    logger.info(f"Diagonalized dim={dim} mode={mode}: lowest {table.ground:.10g}")
    return table
