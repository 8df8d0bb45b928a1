"""
Bethe Ansatz for the Z2 staggered chain.

- state: Bethe integers (BetheState) and solved roots (RootConfig)
- kernels: momentum, energy and scattering kernels, Wiener-Hopf factors
- solver: Newton solver, energies, eigenvalues, XXZ reduction
- dressed: dressed quantities and Coulomb-gas dimensions
"""

from .state import BetheState, RootConfig, centered_integers
from .kernels import KernelSet, kernels, wiener_hopf_factors
from .solver import (
    solve_bae,
    bae_residuals,
    bethe_energy,
    eigenvalue_lambda,
    total_momentum,
    momentum_phase,
    two_row_eigenvalue,
    solve_xxz_bae,
    xxz_energy,
)
from .dressed import dressed_quantity, conformal_dimension


__all__ = [
    'BetheState',
    'RootConfig',
    'centered_integers',
    'KernelSet',
    'kernels',
    'wiener_hopf_factors',
    'solve_bae',
    'bae_residuals',
    'bethe_energy',
    'eigenvalue_lambda',
    'total_momentum',
    'momentum_phase',
    'two_row_eigenvalue',
    'solve_xxz_bae',
    'xxz_energy',
    'dressed_quantity',
    'conformal_dimension',
]
