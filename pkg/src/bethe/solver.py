"""
Newton solver for the logarithmic two-line Bethe equations, plus the
observables built from solved roots: energy, transfer-matrix eigenvalue
and total momentum. A reduced one-line solver covers the XXZ chain that
the symmetric states map onto.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np
import scipy.linalg as la

from ..exceptions import ParameterError, SolverError
from ..lattice.params import ModelParams
from .kernels import KernelSet
from .state import BetheState, RootConfig

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 200
# Counting-function argument is kept strictly inside (−1/4, 1/4).
INIT_CLIP = 0.249
POLE_TOL = 1e-14


def initial_roots(integers, N: int, phi: float, params: ModelParams) -> np.ndarray:
    """Invert the ground-state counting function at z = (I + φ/π)/N."""
    z = (np.asarray(integers, dtype=float) + phi / math.pi) / N
    z = np.clip(z, -INIT_CLIP, INIT_CLIP)
    return (4 * params.gamma / math.pi) * np.arctanh(np.tan(math.pi * z))


def _newton(residual: Callable, jacobian: Callable, x0: np.ndarray,
            tol: float, max_iter: int, label: str) -> tuple:
    """
    Newton iteration with backtracking on max |F|.

    When no step length decreases the residual the iteration falls back to
    a damped step of 1/16 and carries on.

    Returns:
        (x, residual, iterations)

    Raises:
        SolverError: if the residual is still above tol after max_iter steps
    """
    x = np.array(x0, dtype=float)
    if x.size == 0:
        return x, 0.0, 0
    F = residual(x)
    res = float(np.abs(F).max())
    for it in range(1, max_iter + 1):
        if res < tol:
            return x, res, it - 1
        try:
            step = la.solve(jacobian(x), -F)
        except la.LinAlgError as e:
            raise SolverError(f"{label}: singular Jacobian ({e})", residual=res, iterations=it)
        t = 1.0
        while t >= 1.0 / 1024:
            trial = x + t * step
            F_trial = residual(trial)
            res_trial = float(np.abs(F_trial).max())
            if np.isfinite(res_trial) and res_trial < res:
                break
            t /= 2
        else:
            logger.debug(f"{label}: line search failed at iteration {it}, damping")
            trial = x + step / 16
            F_trial = residual(trial)
            res_trial = float(np.abs(F_trial).max())
        x, F, res = trial, F_trial, res_trial
        logger.debug(f"{label}: iteration {it}, residual {res:.3e}, step {t:g}")
    if res < tol:
        return x, res, max_iter
    raise SolverError(f"{label}: no convergence after {max_iter} iterations", residual=res, iterations=max_iter)


def _bae_system(state: BetheState, params: ModelParams) -> tuple:
    """Residual and Jacobian of the log BAE in the stacked (line 0, line 1) roots."""
    N = state.N
    ks = KernelSet(params)
    ints = np.array(state.I0 + state.I1, dtype=float)
    line = np.array([0] * state.r0 + [1] * state.r1)
    same = line[:, None] == line[None, :]

    def residual(x):
        D = x[:, None] - x[None, :]
        scatter = np.where(same, ks.theta0(D), ks.theta1(D)).sum(axis=1)
        return N * ks.two_k(x) - 2 * math.pi * ints - 2 * state.phi + scatter

    def jacobian(x):
        D = x[:, None] - x[None, :]
        Kmat = np.where(same, ks.K0(D), ks.K1(D))
        np.fill_diagonal(Kmat, 0.0)
        return np.diag(N * ks.two_k_prime(x) + Kmat.sum(axis=1)) - Kmat

    return residual, jacobian


def solve_bae(state: BetheState, params: ModelParams, tol: float = DEFAULT_TOL,
              max_iter: int = MAX_ITERATIONS,
              initial: Optional[RootConfig] = None) -> RootConfig:
    """
    Solve N·2k(λ_j^a) − 2πI_j^a − 2φ + Σ_b Σ_l Θ^{(a−b)}(λ_j^a − λ_l^b) = 0.

    Args:
        state: Bethe integers on both lines and the twist
        params: model parameters
        tol: required max |F|
        initial: optional previous solution to continue from (same root counts)

    Raises:
        ParameterError: if a line holds more than N/2 roots
        SolverError: if Newton does not converge
    """
    N = state.N
    if 2 * state.r0 > N or 2 * state.r1 > N:
        raise ParameterError(f"at most N/2 roots per line, got ({state.r0}, {state.r1}) for N = {N}")
    residual, jacobian = _bae_system(state, params)
    if initial is not None and initial.lambda0.size == state.r0 and initial.lambda1.size == state.r1:
        x0 = initial.all_lambdas
    else:
        x0 = np.concatenate([
            initial_roots(state.I0, N, state.phi, params),
            initial_roots(state.I1, N, state.phi, params),
        ])
    x, res, iters = _newton(residual, jacobian, x0, tol, max_iter, f"BAE[{state.label or 'state'}]")
    logger.info(f"Solved BAE N={N} r=({state.r0},{state.r1}) phi={state.phi:.6g} in {iters} iterations")
    return RootConfig(
        state=state,
        gamma=params.gamma,
        lambda0=x[:state.r0],
        lambda1=x[state.r0:],
        residual=res,
        iterations=iters,
        converged=True,
    )


def bae_residuals(roots: RootConfig, params: ModelParams) -> np.ndarray:
    """|F_j| of the log BAE at each root, line 0 first."""
    residual, _ = _bae_system(roots.state, params)
    x = roots.all_lambdas
    return np.abs(residual(x)) if x.size else np.zeros(0)


def bethe_energy(roots: RootConfig, params: ModelParams) -> float:
    """E = 2N cos 2γ + Σ ε(λ)."""
    ks = KernelSet(params)
    return float(2 * roots.state.N * math.cos(2 * params.gamma) + ks.epsilon(roots.all_lambdas).sum())


def eigenvalue_lambda(u: complex, roots: RootConfig, params: ModelParams,
                      phi: Optional[float] = None) -> complex:
    """
    Transfer-matrix eigenvalue Λ(u) of a solved state.

    Raises:
        ParameterError: at a pole of the root products
    """
    N = roots.state.N
    phi = roots.state.phi if phi is None else phi
    g = params.gamma
    alphas = roots.alphas
    num1 = np.sinh(0.5 * (1j * g + alphas + 2j * u))
    den1 = np.sinh(0.5 * (1j * g - alphas - 2j * u))
    num2 = np.sinh(0.5 * (3j * g - alphas - 2j * u))
    den2 = np.sinh(0.5 * (alphas + 2j * u - 1j * g))
    if alphas.size and (np.abs(den1).min() < POLE_TOL or np.abs(den2).min() < POLE_TOL):
        raise ParameterError(f"u = {u!r} sits on a pole of the eigenvalue")
    first = np.exp(1j * phi) * np.sin(2 * (g - u)) ** N * np.prod(num1 / den1)
    second = np.exp(-1j * phi) * (-np.sin(2 * u)) ** N * np.prod(num2 / den2)
    return complex((first + second) / 2 ** N)


def total_momentum(state: BetheState) -> float:
    """2Q = (2π Σ I + 2φ r)/N + π r."""
    total = sum(state.I0) + sum(state.I1)
    return (2 * math.pi * total + 2 * state.phi * state.r) / state.N + math.pi * state.r


def momentum_phase(roots: RootConfig, params: ModelParams) -> complex:
    """Π sinh(α + iγ)/sinh(α − iγ), equal to e^{−i·2Q} on solutions."""
    g = params.gamma
    a = roots.alphas
    return complex(np.prod(np.sinh(a + 1j * g) / np.sinh(a - 1j * g)))


def two_row_eigenvalue(roots: RootConfig, params: ModelParams) -> complex:
    """e^{2iφ} (−sin²2γ/4)^N e^{−i·2Q}, the value of Λ(0)Λ(π/2)."""
    N = roots.state.N
    scale = (-math.sin(2 * params.gamma) ** 2 / 4) ** N
    return complex(np.exp(2j * roots.state.phi) * scale * np.exp(-1j * total_momentum(roots.state)))


# ── XXZ reduction ────────────────────────────────────────────────────────────

def _theta_xxz(x, params: ModelParams):
    """Θ^{(0)} + Θ^{(1)} = −2 atan(tanh x · cot 2γ)."""
    return -2 * np.arctan(np.tanh(x) / math.tan(2 * params.gamma))


def _theta_xxz_prime(x, params: ModelParams):
    c = 1 / math.tan(2 * params.gamma)
    th = np.tanh(x)
    return -2 * c * (1 - th ** 2) / (1 + (th * c) ** 2)


def solve_xxz_bae(N: int, integers, params: ModelParams, phi: float = 0.0,
                  tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> np.ndarray:
    """
    Roots of the N-site XXZ chain with Δ0 = −cos 2γ:

        N·2k(μ_j) − 2πI_j − 2φ − Σ_l 2 atan(tanh(μ_j − μ_l) cot 2γ) = 0
    """
    ks = KernelSet(params)
    ints = np.array(integers, dtype=float)

    def residual(x):
        D = x[:, None] - x[None, :]
        scatter = _theta_xxz(D, params).sum(axis=1)
        return N * ks.two_k(x) - 2 * math.pi * ints - 2 * phi + scatter

    def jacobian(x):
        D = x[:, None] - x[None, :]
        Kmat = _theta_xxz_prime(D, params)
        np.fill_diagonal(Kmat, 0.0)
        return np.diag(N * ks.two_k_prime(x) + Kmat.sum(axis=1)) - Kmat

    x0 = initial_roots(ints, N, phi, params)
    x, res, iters = _newton(residual, jacobian, x0, tol, max_iter, "XXZ BAE")
    logger.info(f"Solved XXZ BAE N={N} r={ints.size} in {iters} iterations")
    return x


def xxz_energy(mu: np.ndarray, N: int, params: ModelParams) -> float:
    """E_XXZ = (N/2) cos 2γ + Σ 2(cos p − cos 2γ), e^{ip} = sinh(μ+iγ)/sinh(μ−iγ)."""
    g = params.gamma
    mu = np.asarray(mu, dtype=float)
    eip = np.sinh(mu + 1j * g) / np.sinh(mu - 1j * g)
    p = np.angle(eip)
    return float(0.5 * N * math.cos(2 * g) + np.sum(2 * (np.cos(p) - math.cos(2 * g))))
