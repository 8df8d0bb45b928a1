"""
Two-particle amplitudes of the massive theory and their sine-Gordon forms.

Rapidities θ = πλ/(2γ); t = π/γ. The sine-Gordon coupling is b = β²/(8π)
with ξ = πb/(1−b).
"""
from __future__ import annotations

import logging
import math
from functools import partial
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from ..exceptions import ParameterError
from ..lattice.params import ModelParams

logger = logging.getLogger(__name__)

DECAY_EXPONENT = 37.0               # integrands dropped below e^{-37}
SLOW_XI = 0.1
MATCH_THETAS = (-2.0, -0.7, 0.4, 1.5, 3.0)
MATCH_BOUNDS = (0.3, 0.95)


def _sinh_cosh_ratio(a: float, b: float, k: float) -> float:
    """sinh(ak)/(sinh(bk) cosh(πk/2)) for b > 0, k > 0, overflow-free."""
    c = math.pi * k / 2
    sign = math.copysign(1.0, a)
    aa = abs(a) * k
    return (
        sign
        * math.exp(aa - b * k - c)
        * (-math.expm1(-2 * aa))
        / ((-math.expm1(-2 * b * k)) * (1 + math.exp(-2 * c)))
    )


def _phase_integral(theta: float, a: float, b: float, decay: float) -> float:
    """∫_0^∞ (dk/k) sin(kθ) sinh(ak)/(sinh(bk) cosh(πk/2))."""
    if theta == 0:
        return 0.0
    upper = DECAY_EXPONENT / decay
    integrand = lambda k: math.sin(k * theta) / k * _sinh_cosh_ratio(a, b, k)
    value, _ = quad(integrand, 0.0, upper, limit=400, epsabs=1e-13, epsrel=1e-12)
    return value


def sg_coupling(t: float) -> float:
    """b = (t−2)/(t−1) of the diagonal amplitudes."""
    return (t - 2) / (t - 1)


def shifted_sg_coupling(t: float) -> float:
    """b̃ = (t−2)/t of the product S^{(0,0)}S^{(0,1)}."""
    return (t - 2) / t


def sg_kink_amplitude(theta: float, b: float) -> complex:
    """
    Kink-kink amplitude
    −exp[−i ∫_0^∞ (dk/k) sin kθ sinh((π−ξ)k/2)/(sinh(ξk/2) cosh(πk/2))].
    """
    if not 0 < b < 1:
        raise ParameterError(f"sine-Gordon coupling must lie in (0, 1), got {b!r}")
    xi = math.pi * b / (1 - b)
    if xi < SLOW_XI:
        logger.warning(f"xi = {xi:.3g}: amplitude integrand decays slowly")
    F = _phase_integral(theta, (math.pi - xi) / 2, xi / 2, min(xi, math.pi))
    return -complex(np.exp(-1j * F))


def _diagonal_phase(theta: float, t: float) -> float:
    return _phase_integral(theta, math.pi * (t - 3) / 2, math.pi * (t - 2) / 2, min(math.pi, math.pi * (t - 2)))


def _offdiagonal_phase(theta: float, t: float) -> float:
    return _phase_integral(theta, math.pi / 2, math.pi * (t - 2) / 2, math.pi * (t - 2) / 2)


def smatrix_elements(theta: float, params: ModelParams) -> dict:
    """
    Hole-hole amplitudes at real θ before normalisation, and the
    normalisation factors.

    S00 = exp[iF0(θ)], S01 = i exp[−iF1(θ)], Z = S00 / sinh((iπ−θ)/(t−2)),
    Z̃ = exp[−iF1(θ)] / cosh((iπ−θ)/(t−2)).
    """
    t = params.t
    if t - 2 < SLOW_XI:
        logger.warning(f"t = {t:.4g} close to 2: amplitude integrals converge slowly")
    F0 = _diagonal_phase(theta, t)
    F1 = _offdiagonal_phase(theta, t)
    s00 = complex(np.exp(1j * F0))
    s01 = 1j * complex(np.exp(-1j * F1))
    arg = (1j * math.pi - theta) / (t - 2)
    return {
        "S00": s00,
        "S01": s01,
        "Z": s00 / complex(np.sinh(arg)),
        "Z_tilde": complex(np.exp(-1j * F1)) / complex(np.cosh(arg)),
    }


def unitarity_residual(thetas: Sequence[float], params: ModelParams) -> float:
    """max |S00(θ) S00(−θ) − 1|."""
    worst = 0.0
    for theta in thetas:
        forward = smatrix_elements(theta, params)["S00"]
        backward = smatrix_elements(-theta, params)["S00"]
        worst = max(worst, abs(forward * backward - 1))
    return worst


def _mismatch(b: float, targets: list) -> float:
    return sum(abs(s + sg_kink_amplitude(theta, b)) ** 2 for theta, s in targets)


def match_sg_coupling(params: ModelParams, thetas: Sequence[float] = MATCH_THETAS) -> float:
    """Coupling b minimising Σ|S00(θ) + 𝒮(θ; b)|² over a few rapidities."""
    targets = [(theta, smatrix_elements(theta, params)["S00"]) for theta in thetas]
    result = minimize_scalar(
        partial(_mismatch, targets=targets),
        bounds=MATCH_BOUNDS,
        method="bounded",
        options={"xatol": 1e-10},
    )
    logger.info(f"sine-Gordon coupling matched at t={params.t:.6g}: b = {result.x:.10g}")
    return float(result.x)
