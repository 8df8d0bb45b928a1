"""
Massive deformation: TBA systems, free energies and two-particle amplitudes.

- system: TbaSystem, chain and fork diagrams, RapidityGrid, MassiveParams
- solver: damped fixed-point TBA solver and UV reference values
- dilog: Rogers dilogarithm and UV central charges from stationary values
- free_energy: free boson and Majorana energies on a circle
- kernels: kernels and source terms of the massive Bethe equations
- smatrix: hole-hole amplitudes and their sine-Gordon forms
"""

from .system import TbaSystem, chain_system, fork_system, RapidityGrid, MassiveParams
from .solver import (
    TbaSolution,
    gudermannian,
    solve_tba,
    twisted_sg_fork,
    fork_central_charge,
    uv_central_charge,
)
from .dilog import rogers_dilog, stationary_values, uv_dilog_check, uv_decomposition
from .free_energy import boson_free_energy, fermion_free_energy, free_energy_identity
from .kernels import MassiveKernels, dressed_bae_kernels
from .smatrix import (
    sg_coupling,
    shifted_sg_coupling,
    sg_kink_amplitude,
    smatrix_elements,
    unitarity_residual,
    match_sg_coupling,
)

__all__ = [
    'TbaSystem',
    'chain_system',
    'fork_system',
    'RapidityGrid',
    'MassiveParams',
    'TbaSolution',
    'gudermannian',
    'solve_tba',
    'twisted_sg_fork',
    'fork_central_charge',
    'uv_central_charge',
    'rogers_dilog',
    'stationary_values',
    'uv_dilog_check',
    'uv_decomposition',
    'boson_free_energy',
    'fermion_free_energy',
    'free_energy_identity',
    'MassiveKernels',
    'dressed_bae_kernels',
    'sg_coupling',
    'shifted_sg_coupling',
    'sg_kink_amplitude',
    'smatrix_elements',
    'unitarity_residual',
    'match_sg_coupling',
]
