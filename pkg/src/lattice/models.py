"""
R-matrices, block R-matrices and Hamiltonians built from TL generators.

Everything here works on a Representation, so the same code covers the
spin-1/2 chain and the RSOS height chain.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ..exceptions import ConsistencyError, ParameterError
from .params import Couplings, ModelParams
from .representations import (
    Representation,
    RsosRepresentation,
    SectorOperator,
    SpinBasis,
    SpinRepresentation,
    get_representation,
    operator_norm,
)

logger = logging.getLogger(__name__)

# Product form and expanded form of the block R-matrix must agree to this.
BLOCK_EXPANSION_TOL = 1e-10


def rmatrix(u: complex, params: ModelParams, j: int, rep: Representation) -> SectorOperator:
    """Ř_{j,j+1}(u) = sin(γ − u)·1 + sin(u)·e_j."""
    gamma = params.gamma
    return rep.identity() * np.sin(gamma - u) + rep.generator(j) * np.sin(u)


def check_ybe(u: complex, v: complex, params: ModelParams,
              rep: Optional[Representation] = None,
              rmatrix_fn: Optional[Callable] = None) -> float:
    """
    Operator-norm residual of the Yang-Baxter relation on strands j, j+1, j+2:

        Ř_j(u−v) Ř_{j+1}(u) Ř_j(v) = Ř_{j+1}(v) Ř_j(u) Ř_{j+1}(u−v)

    The default representation is the full four-strand spin space.
    """
    if rep is None:
        rep = get_representation("spin", 2, params, sector=None)
    R = rmatrix_fn or rmatrix
    lhs = R(u - v, params, 1, rep) @ R(u, params, 2, rep) @ R(v, params, 1, rep)
    rhs = R(v, params, 2, rep) @ R(u, params, 1, rep) @ R(u - v, params, 2, rep)
    return operator_norm((lhs - rhs).matrix)


def block_rmatrix_product(u: complex, params: ModelParams, j: int, rep: Representation) -> SectorOperator:
    """Ř_{2j,2j+1}(u−π/2) Ř_{2j−1,2j}(u) Ř_{2j+1,2j+2}(u) Ř_{2j,2j+1}(u+π/2)."""
    half_pi = math.pi / 2
    return (
        rmatrix(u - half_pi, params, 2 * j, rep)
        @ rmatrix(u, params, 2 * j - 1, rep)
        @ rmatrix(u, params, 2 * j + 1, rep)
        @ rmatrix(u + half_pi, params, 2 * j, rep)
    )


def block_rmatrix_expansion(u: complex, params: ModelParams, j: int, rep: Representation) -> SectorOperator:
    """The block R-matrix written as a polynomial in e_{2j−1}, e_{2j}, e_{2j+1}."""
    g = params.gamma
    a, b, c = rep.generator(2 * j - 1), rep.generator(2 * j), rep.generator(2 * j + 1)
    one = rep.identity()
    s2 = np.sin(2 * g - 2 * u)
    return (
        one * (-0.25 * s2 ** 2)
        + ((a + c) * np.cos(g - u) + b * (2 * np.cos(g) * np.cos(u))) * (-0.5 * np.sin(u) * s2)
        + (a @ b + b @ a + b @ c + c @ b) * (0.25 * np.sin(2 * u) * s2)
        - (a @ c) * (np.sin(u) ** 2 * np.cos(g - u) ** 2)
        + ((a @ c @ b + b @ a @ c) * np.cos(g - u) - (b @ a @ c @ b) * np.cos(u))
        * (np.sin(u) ** 2 * np.cos(u))
    )


def block_rmatrix(u: complex, params: ModelParams, j: int, rep: Representation) -> SectorOperator:
    """
    Block R-matrix on strands 2j−1..2j+2.

    Both the four-factor product and the expanded polynomial are evaluated;
    a disagreement beyond BLOCK_EXPANSION_TOL raises ConsistencyError.
    """
    if rep.strands < 4:
        raise ParameterError("block R-matrix needs at least four strands")
    product = block_rmatrix_product(u, params, j, rep)
    expansion = block_rmatrix_expansion(u, params, j, rep)
    mismatch = operator_norm((product - expansion).matrix)
    if mismatch > BLOCK_EXPANSION_TOL:
        raise ConsistencyError(f"block R-matrix product and expansion differ by {mismatch:.3e}")
    return product


def block_charge(j: int, params: ModelParams, rep: Representation) -> SectorOperator:
    """c_j = (cos γ)^{-2} Ř_{2j−1,2j}(π/2) Ř_{2j+1,2j+2}(π/2); squares to one."""
    half_pi = math.pi / 2
    return (
        rmatrix(half_pi, params, 2 * j - 1, rep) @ rmatrix(half_pi, params, 2 * j + 1, rep)
    ) * (math.cos(params.gamma) ** -2)


def z2_charge(params: ModelParams, rep: Representation) -> SectorOperator:
    """C = Π_j (cos γ)^{-1} Ř_{2j−1,2j}(π/2)."""
    charge = rep.identity()
    for j in range(1, rep.N + 1):
        charge = charge @ (rmatrix(math.pi / 2, params, 2 * j - 1, rep) * (1.0 / math.cos(params.gamma)))
    return charge


def build_hamiltonian(c: Couplings, params: ModelParams, rep: Representation) -> SectorOperator:
    """
    H = K1 Σ e_j + K2 Σ (e_j e_{j+1} + e_{j+1} e_j), periodic.

    At the Z2 point (K1, K2) = (−2cos γ, 1) the constant 2N cos 2γ is added.
    """
    L = rep.strands
    gens = rep.generators()
    linear = sum((e.matrix for e in gens), sp.csr_matrix((rep.basis.size, rep.basis.size), dtype=complex))
    quadratic = sp.csr_matrix((rep.basis.size, rep.basis.size), dtype=complex)
    for j in range(L):
        e, f = gens[j].matrix, gens[(j + 1) % L].matrix
        quadratic = quadratic + e @ f + f @ e
    H = c.K1 * linear + c.K2 * quadratic
    if c.is_z2_point(params):
        H = H + 2 * rep.N * math.cos(2 * params.gamma) * sp.identity(rep.basis.size, format="csr")
    return SectorOperator(rep.basis, H)


# ── Pauli-matrix forms ───────────────────────────────────────────────────────

_SIGMA_Z = sp.csr_matrix(np.diag([-1.0, 1.0]))          # local index 1 = up
_SIGMA_PLUS = sp.csr_matrix(np.array([[0.0, 0.0], [1.0, 0.0]]))
_SIGMA_MINUS = _SIGMA_PLUS.T.tocsr()


def _site_operator(local, site: int, L: int) -> sp.csr_matrix:
    """Embed a 2x2 operator at 1-based site; site j is bit j-1 of the state index."""
    left = sp.identity(1 << (L - site), format="csr")
    right = sp.identity(1 << (site - 1), format="csr")
    return sp.kron(sp.kron(left, local), right, format="csr")


def _restrict(full: sp.csr_matrix, basis: SpinBasis) -> sp.csr_matrix:
    idx = basis.state_array
    return full.tocsr()[idx][:, idx]


def pauli_hamiltonian(c: Couplings, params: ModelParams, N: int, sector: Optional[int] = 0) -> SectorOperator:
    """
    The spin-chain form of H(K1, K2) assembled directly from Pauli matrices:

        Σ_j { J2/2 σ_j·σ_{j+2} + J1xy (σ+_j σ-_{j+1} + h.c.) + J1z σz_j σz_{j+1}
              + i J3 (σz_{j−1} − σz_{j+2}) (σ+_j σ-_{j+1} + h.c.) } + N (K1 cos γ + K2)

    with the Z2-point constant 2N cos 2γ added as in build_hamiltonian.
    """
    L = 2 * N
    J = c.spin_couplings(params)
    sz = [None] + [_site_operator(_SIGMA_Z, k, L) for k in range(1, L + 1)]
    sp_ = [None] + [_site_operator(_SIGMA_PLUS, k, L) for k in range(1, L + 1)]
    sm = [None] + [_site_operator(_SIGMA_MINUS, k, L) for k in range(1, L + 1)]

    def site(k):
        return (k - 1) % L + 1

    def hop(j, k):
        return sp_[j] @ sm[k] + sm[j] @ sp_[k]

    H = sp.csr_matrix((1 << L, 1 << L), dtype=complex)
    for j in range(1, L + 1):
        j1, j2, jm = site(j + 1), site(j + 2), site(j - 1)
        # σ·σ = 2(σ+σ- + σ-σ+) + σzσz
        H = H + (J["J2"] / 2) * (2 * hop(j, j2) + sz[j] @ sz[j2])
        H = H + J["J1xy"] * hop(j, j1)
        H = H + J["J1z"] * (sz[j] @ sz[j1])
        H = H + 1j * J["J3"] * ((sz[jm] - sz[j2]) @ hop(j, j1))
    constant = N * (c.K1 * math.cos(params.gamma) + c.K2)
    if c.is_z2_point(params):
        constant += 2 * N * math.cos(2 * params.gamma)
    H = H + constant * sp.identity(1 << L, format="csr")
    basis = SpinBasis(L, sector)
    return SectorOperator(basis, _restrict(H, basis))


def xxz_hamiltonian(N: int, params: ModelParams, sector: Optional[int] = 0) -> SectorOperator:
    """
    Periodic XXZ chain on N sites, −½ Σ [σxσx + σyσy + Δ0 σzσz] with Δ0 = −cos 2γ.

    The basis uses N sites, so sector counts Sz over those N spins.
    """
    if N % 2:
        raise ParameterError("the XXZ comparison chain needs an even number of sites")
    delta0 = -math.cos(2 * params.gamma)
    sz = [None] + [_site_operator(_SIGMA_Z, k, N) for k in range(1, N + 1)]
    spl = [None] + [_site_operator(_SIGMA_PLUS, k, N) for k in range(1, N + 1)]
    smi = [None] + [_site_operator(_SIGMA_MINUS, k, N) for k in range(1, N + 1)]
    H = sp.csr_matrix((1 << N, 1 << N), dtype=complex)
    for j in range(1, N + 1):
        k = j % N + 1
        # σxσx + σyσy = 2(σ+σ- + σ-σ+)
        H = H - (spl[j] @ smi[k] + smi[j] @ spl[k]) - 0.5 * delta0 * (sz[j] @ sz[k])
    basis = SpinBasis(N, sector)
    return SectorOperator(basis, _restrict(H, basis))


# ── Special states ───────────────────────────────────────────────────────────

def dimerized_state(rep: Representation, height: Optional[int] = None) -> np.ndarray:
    """
    Normalised state on which every odd generator e_{2j−1} acts as √Q.

    Spin chain: product of (|↑↓> − e^{iγ}|↓↑>) on bonds (2j−1, 2j), in the Sz = 0 sector.
    RSOS chain: all even heights equal to `height` (default 2),
    odd heights summed with weights √S(h).
    """
    basis = rep.basis
    vec = np.zeros(basis.size, dtype=complex)
    if isinstance(rep, SpinRepresentation):
        if basis.sector != 0:
            raise ParameterError("the dimer state lives in the Sz = 0 sector")
        weight = -np.exp(1j * rep.params.gamma)
        for i, s in enumerate(basis.states):
            amp = 1.0 + 0j
            for j in range(rep.N):
                up_a, up_b = (s >> (2 * j)) & 1, (s >> (2 * j + 1)) & 1
                if up_a == up_b:
                    amp = 0.0
                    break
                if not up_a:
                    amp *= weight
            vec[i] = amp
    elif isinstance(rep, RsosRepresentation):
        b = height or 2
        for i, path in enumerate(basis.heights):
            even = path[1::2]
            if any(h != b for h in even):
                continue
            vec[i] = np.prod([math.sqrt(basis.S(h)) for h in path[0::2]])
    else:
        raise ParameterError(f"Unsupported representation: {type(rep).__name__}")
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ParameterError("dimer state is empty for this basis")
    return vec / norm


def anisotropy_weights(u: float, params: ModelParams) -> tuple[float, float]:
    """Loop-model weights (v1, v2) of the staggered lattice at spectral parameter u."""
    g = params.gamma
    return (
        params.sqrtQ * math.sin(u) / math.sin(g - u),
        -params.sqrtQ * math.cos(g - u) / math.cos(u),
    )
