"""
Continuum torus partition functions.

- torus: TorusPoint, η and θ2, θ3, θ4 with mpmath references
- coulomb: defect sums Z_{m,m'}, Z(g), Ẑ(g, φ), Z_Potts and the Ising form
- characters: partition counts and two-boson characters
"""

from .torus import TorusPoint, eta, theta, z_nu, eta_reference, theta_reference
from .coulomb import (
    PARITY_CLASSES,
    PartitionSums,
    IsingBlocks,
    z_zero,
    z_mm,
    defect_sums,
    compact_boson_sum,
    defect_row_sum,
    coulomb_character_sum,
    jacobi_abcd,
    defect_abcd,
    ising_form,
    z_ising,
    z_untwisted,
    z_twisted,
    z_potts,
    coulomb_gas_sum,
)
from .characters import CharacterSeries, partition_numbers, eta_power_series, character


__all__ = [
    'TorusPoint',
    'eta',
    'theta',
    'z_nu',
    'eta_reference',
    'theta_reference',
    'PARITY_CLASSES',
    'PartitionSums',
    'IsingBlocks',
    'z_zero',
    'z_mm',
    'defect_sums',
    'compact_boson_sum',
    'defect_row_sum',
    'coulomb_character_sum',
    'jacobi_abcd',
    'defect_abcd',
    'ising_form',
    'z_ising',
    'z_untwisted',
    'z_twisted',
    'z_potts',
    'coulomb_gas_sum',
    'CharacterSeries',
    'partition_numbers',
    'eta_power_series',
    'character',
]
