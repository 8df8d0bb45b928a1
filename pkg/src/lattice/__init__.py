"""
Lattice layer: TL generators, R-matrices, Hamiltonians and transfer matrices.

- params: ModelParams (γ and derived constants), Couplings (K1, K2)
- representations: spin-1/2 and RSOS bases with their TL generators
- tl_core: generator builders and TL relation checks
- models: R-matrices, block R-matrix, Hamiltonians, Z2 charge
- transfer: twisted, staggered six-vertex transfer matrices
"""

from .params import ModelParams, Couplings, build_params, params_from_t, params_from_Q, z2_theta
from .representations import (
    SpinBasis,
    RsosBasis,
    SectorOperator,
    Representation,
    SpinRepresentation,
    RsosRepresentation,
    get_representation,
    operator_norm,
)
from .tl_core import build_e_spin, build_e_rsos, check_tl_relations, TLResidualReport
from .models import (
    rmatrix,
    check_ybe,
    block_rmatrix,
    block_charge,
    z2_charge,
    build_hamiltonian,
    pauli_hamiltonian,
    xxz_hamiltonian,
    dimerized_state,
    anisotropy_weights,
)
from .transfer import (
    TransferSpec,
    transfer_matrix,
    two_row_transfer,
    translation_operator,
    massive_vertical_params,
    anisotropic_limit_check,
    lattice_partition_trace,
)


__all__ = [
    'ModelParams',
    'Couplings',
    'build_params',
    'params_from_t',
    'params_from_Q',
    'z2_theta',
    'SpinBasis',
    'RsosBasis',
    'SectorOperator',
    'Representation',
    'SpinRepresentation',
    'RsosRepresentation',
    'get_representation',
    'operator_norm',
    'build_e_spin',
    'build_e_rsos',
    'check_tl_relations',
    'TLResidualReport',
    'rmatrix',
    'check_ybe',
    'block_rmatrix',
    'block_charge',
    'z2_charge',
    'build_hamiltonian',
    'pauli_hamiltonian',
    'xxz_hamiltonian',
    'dimerized_state',
    'anisotropy_weights',
    'TransferSpec',
    'transfer_matrix',
    'two_row_transfer',
    'translation_operator',
    'massive_vertical_params',
    'anisotropic_limit_check',
    'lattice_partition_trace',
]
