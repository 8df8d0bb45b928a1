"""
Six-vertex transfer matrices of the staggered chain.

t(u) is the trace over one auxiliary spin of the row of vertex weights, with
parameter differences u − v_k and a twist on the auxiliary line. The row is
applied to a block of basis columns at once as a tensor contraction.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.optimize import linear_sum_assignment

from ..exceptions import ConsistencyError, ParameterError
from .models import build_hamiltonian
from .params import Couplings, ModelParams
from .representations import SectorOperator, SpinBasis, SpinRepresentation

logger = logging.getLogger(__name__)

# Dense transfer matrices beyond this dimension are refused.
MAX_TRANSFER_DIM = 4096


def default_vertical_params(N: int) -> tuple:
    """0, π/2, 0, π/2, ... on 2N strands."""
    return tuple(0.0 if k % 2 == 0 else math.pi / 2 for k in range(2 * N))


def massive_vertical_params(N: int, Lambda: float) -> tuple:
    """
    Four-periodic pattern iΛ/2, −iΛ/2, π/2 + iΛ/2, π/2 − iΛ/2.

    Raises:
        ParameterError: for odd N (the pattern needs 2N divisible by four)
    """
    if N % 2:
        raise ParameterError(f"massive staggering needs an even block count, got N = {N}")
    shift = 0.5j * Lambda
    pattern = (shift, -shift, math.pi / 2 + shift, math.pi / 2 - shift)
    return tuple(pattern[k % 4] for k in range(2 * N))


@dataclass(frozen=True)
class TransferSpec:
    """Row geometry of a transfer matrix."""
    N: int                                          # block count, 2N strands
    u: complex = 0.0                                # horizontal spectral parameter
    vertical_params: tuple = field(default=())     # 2N values; empty means default pattern
    phi: float = 0.0                                # twist on the auxiliary line
    sector: Optional[int] = 0                       # Sz sector, None for the full space

    def __post_init__(self):
        if self.N < 1:
            raise ParameterError(f"block count N must be positive, got {self.N}")
        if not self.vertical_params:
            object.__setattr__(self, "vertical_params", default_vertical_params(self.N))
        if len(self.vertical_params) != 2 * self.N:
            raise ParameterError(
                f"need {2 * self.N} vertical parameters, got {len(self.vertical_params)}"
            )

    def at(self, u: complex) -> "TransferSpec":
        return TransferSpec(self.N, u, self.vertical_params, self.phi, self.sector)


def vertex_weights(w: complex, params: ModelParams) -> np.ndarray:
    """R[a_out, s_out, a_in, s_in], index 1 = up."""
    g = params.gamma
    R = np.zeros((2, 2, 2, 2), dtype=complex)
    R[0, 0, 0, 0] = R[1, 1, 1, 1] = np.sin(g - w)
    R[1, 0, 1, 0] = R[0, 1, 0, 1] = np.sin(w)
    R[0, 1, 1, 0] = np.sin(g) * np.exp(-1j * w)
    R[1, 0, 0, 1] = np.sin(g) * np.exp(1j * w)
    return R


def _odd_site_signs(basis: SpinBasis) -> np.ndarray:
    """(−1)^(number of down spins on odd sites) for every basis state."""
    odd_mask = sum(1 << (k - 1) for k in range(1, basis.strands + 1, 2))
    return np.array(
        [(-1) ** bin(~s & odd_mask).count("1") for s in basis.states], dtype=complex
    )


def transfer_matrix(spec: TransferSpec, params: ModelParams) -> SectorOperator:
    """
    Dense single-row transfer matrix t(u) on one Sz sector.

    The auxiliary line passes site 1 first. The twist multiplies the
    auxiliary amplitude by e^{iφ} (up) or e^{−iφ} (down) before the trace.
    The result is conjugated by the odd-site σz string so that it commutes
    with the Hamiltonian built from the TL generators.
    """
    L = 2 * spec.N
    basis = SpinBasis(L, spec.sector)
    d = basis.size
    if d > MAX_TRANSFER_DIM:
        raise ParameterError(f"sector dimension {d} too large for a dense transfer matrix")
    if d == 0:
        logger.warning(f"empty Sz sector {spec.sector} for 2N = {L}")
        return SectorOperator(basis, sp.csr_matrix((0, 0), dtype=complex))

    columns = np.zeros((1 << L, d), dtype=complex)
    columns[basis.state_array, np.arange(d)] = 1.0
    spins = columns.reshape((2,) * L + (d,))
    weights = [vertex_weights(spec.u - v, params) for v in spec.vertical_params]
    twist = np.array([np.exp(-1j * spec.phi), np.exp(1j * spec.phi)])

    out = np.zeros_like(spins)
    for a0 in (0, 1):
        psi = np.zeros((2,) + spins.shape, dtype=complex)
        psi[a0] = spins
        for k in range(1, L + 1):
            ax = 1 + (L - k)
            psi = np.tensordot(weights[k - 1], psi, axes=([2, 3], [0, ax]))
            psi = np.moveaxis(psi, 1, ax)
        out += twist[a0] * psi[a0]

    t = out.reshape(1 << L, d)[basis.state_array]
    signs = _odd_site_signs(basis)
    t = signs[:, None] * t * signs[None, :]
    return SectorOperator(basis, sp.csr_matrix(t))


def two_row_transfer(spec: TransferSpec, params: ModelParams) -> SectorOperator:
    """t(u) t(u + π/2)."""
    return transfer_matrix(spec, params) @ transfer_matrix(spec.at(spec.u + math.pi / 2), params)


def translation_operator(basis: SpinBasis, shift: int = 2) -> SectorOperator:
    """Cyclic translation moving the spin on site j to site j + shift."""
    L = basis.strands
    shift %= L
    mask = (1 << L) - 1
    rows, cols = [], []
    for col, s in enumerate(basis.states):
        new = ((s << shift) | (s >> (L - shift))) & mask if shift else s
        rows.append(basis.index[new])
        cols.append(col)
    n = basis.size
    matrix = sp.coo_matrix((np.ones(n, dtype=complex), (rows, cols)), shape=(n, n)).tocsr()
    return SectorOperator(basis, matrix)


def two_row_degeneration_residual(N: int, params: ModelParams, sector: Optional[int] = 0) -> float:
    """‖t(0)t(π/2) − (−sin²2γ/4)^N T2‖ at zero twist."""
    spec = TransferSpec(N, 0.0, sector=sector)
    product = two_row_transfer(spec, params)
    expected = translation_operator(product.basis, 2) * ((-math.sin(2 * params.gamma) ** 2 / 4) ** N)
    diff = (product - expected).toarray()
    return float(np.abs(diff).max()) if diff.size else 0.0


def anisotropic_limit_check(N: int, params: ModelParams, step: float = 1e-4,
                            sector: Optional[int] = 0) -> float:
    """
    Largest eigenvalue discrepancy between the Z2 Hamiltonian and

        −½ sin 2γ · d/du log[t(u) t(u + π/2)] at u = 0

    with the derivative taken by central differences of step `step`.
    """
    if N < 2:
        raise ParameterError("anisotropic limit check needs N >= 2")
    if N > 5:
        raise ParameterError("anisotropic limit check is limited to N <= 5")
    spec = TransferSpec(N, 0.0, sector=sector)
    M0 = two_row_transfer(spec, params).toarray()
    Mp = two_row_transfer(spec.at(step), params).toarray()
    Mm = two_row_transfer(spec.at(-step), params).toarray()
    try:
        derivative = la.solve(M0, (Mp - Mm) / (2 * step))
    except la.LinAlgError as e:
        raise ConsistencyError(f"t(0)t(pi/2) is singular: {e}")
    H_fd = -0.5 * math.sin(2 * params.gamma) * derivative

    rep = SpinRepresentation(N, params, sector)
    H = build_hamiltonian(Couplings.z2_point(params), params, rep).toarray()
    fd_eigs = la.eigvals(H_fd)
    exact_eigs = la.eigvals(H)
    cost = np.abs(fd_eigs[:, None] - exact_eigs[None, :])
    rows, cols = linear_sum_assignment(cost)
    discrepancy = float(cost[rows, cols].max())
    logger.info(f"anisotropic limit N={N} step={step:g}: discrepancy {discrepancy:.3e}")
    return discrepancy


def lattice_partition_trace(spec: TransferSpec, params: ModelParams, M: int,
                            sectors: Optional[Sequence[int]] = None,
                            log: bool = False) -> complex:
    """
    Z = Tr [t(u) t(u + π/2)]^M summed over the given Sz sectors.

    Eigenvalues are rescaled by the largest modulus before taking powers;
    with log=True the complex logarithm of Z is returned instead.
    """
    if M < 1:
        raise ParameterError(f"row count M must be positive, got {M}")
    if sectors is None:
        sectors = [spec.sector] if spec.sector is not None else range(-spec.N, spec.N + 1)
    eigs = []
    for sz in sectors:
        op = two_row_transfer(TransferSpec(spec.N, spec.u, spec.vertical_params, spec.phi, sz), params)
        if not op.is_empty:
            eigs.append(la.eigvals(op.toarray()))
    if not eigs:
        raise ParameterError("no states in the requested sectors")
    lam = np.concatenate(eigs)
    scale = np.abs(lam).max()
    if scale == 0:
        raise ConsistencyError("two-row transfer matrix is nilpotent at this u")
    reduced = np.sum((lam / scale) ** M)
    log_z = M * math.log(scale) + np.log(complex(reduced))
    if log:
        return complex(log_z)
    return complex(np.exp(log_z))
