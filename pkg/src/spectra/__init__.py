"""
Spectra: diagonalization, finite-size fits and closed-form exponents.
"""

from .diagonalize import SpectrumTable, diagonalize
from .fits import FitResult, central_charge_fit, exponent_fit, scaled_gap
from .exponents import ExponentTable, exponent_formulas


__all__ = [
    'SpectrumTable',
    'diagonalize',
    'FitResult',
    'central_charge_fit',
    'exponent_fit',
    'scaled_gap',
    'ExponentTable',
    'exponent_formulas',
]
