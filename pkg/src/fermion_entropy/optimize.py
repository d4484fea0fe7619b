"""
Projected gradient descent of S(γ_k) over the unit sphere of Λ^N C^d.

The objective is evaluated on the quadratic map c ↦ γ_k(c) of fermion.contraction_factors,
so its Euclidean gradient follows from dS = -Tr[(ln γ_k + I) dγ_k] restricted to the
support spectrum. Coefficients are treated as 2·C(d, N) real parameters; the redundant
global phase direction carries no gradient.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from fermion_entropy.combinadics import binomial
from fermion_entropy.entropy import entropy_of_spectrum, von_neumann
from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.fermion import (
    contraction_factors,
    contraction_table,
    load_state,
    random_state,
    rdm,
    save_state,
    state_from_coeffs,
    state_from_dict,
)
from fermion_entropy.linalg import eigh, hermitian_function
from fermion_entropy.models import OptimizationConfig, OptimizationResult, RestartTrace, TracePoint, WedgeState
from fermion_entropy.utils.config import setting, tolerance
from fermion_entropy.utils.seeds import derive_seed

logger = logging.getLogger("OPTIMIZE")

# restarts whose terminal values agree this closely are ties
TIE_TOLERANCE = 1e-10


def _raw_gamma(coeffs: np.ndarray, d: int, n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    v = contraction_factors(coeffs, d, n, k)
    gamma = (v.T @ v.conj()) / binomial(n, k)
    return v, (gamma + gamma.conj().T) / 2


def _spectrum(coeffs: np.ndarray, d: int, n: int, k: int, method: Optional[str] = None) -> np.ndarray:
    _, gamma = _raw_gamma(coeffs, d, n, k)
    w, _ = eigh(gamma, method=method)
    return w


def entropy_objective(coeffs, d: int, n: int, k: int, method: Optional[str] = None) -> float:
    """
    -Tr[γ ln γ] of γ_k(coeffs) without normalizing coeffs.

    This is the function entropy_gradient differentiates; on unit vectors it equals S_k.
    """
    return entropy_of_spectrum(_spectrum(np.asarray(coeffs, dtype=np.complex128), d, n, k, method=method))


def _complex_gradient(coeffs: np.ndarray, d: int, n: int, k: int, method: Optional[str] = None) -> np.ndarray:
    """2 ∂S/∂conj(c): real part is ∂S/∂Re c, imaginary part is ∂S/∂Im c."""
    v, gamma = _raw_gamma(coeffs, d, n, k)
    log_term = hermitian_function(gamma, lambda w: np.log(w) + 1.0, floor=tolerance("eigen_floor"), method=method)
    # ∂S/∂conj(V)[C, B] = -(V G^T)[C, B] / C(N, k)
    dv = -(v @ log_term.T) / binomial(n, k)

    index, sign = contraction_table(d, n, k)
    contrib = (sign * dv).ravel()
    idx = index.ravel()
    dim = binomial(d, n)
    # the padding slot at position dim collects the sign-0 entries
    re = np.bincount(idx, weights=contrib.real, minlength=dim + 1)[:dim]
    im = np.bincount(idx, weights=contrib.imag, minlength=dim + 1)[:dim]
    return 2.0 * (re + 1j * im)


def entropy_gradient(psi: WedgeState, k: int, method: Optional[str] = None) -> np.ndarray:
    """
    Euclidean gradient of S_k with respect to the real parameters (Re c, Im c), before sphere projection.

    Eigenvalues of γ_k below 1e-12 are left out of the logarithm term.

    Returns:
        np.ndarray: Real vector of length 2·C(d, N), real parts first.
    """
    if not 1 <= k <= psi.n_particles:
        raise ValueError(f"k={k} outside [1, {psi.n_particles}]")
    g = _complex_gradient(np.asarray(psi.coeffs), psi.d, psi.n_particles, k, method=method)
    return np.concatenate([g.real, g.imag])


def _tangent(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    return g - np.vdot(x, g).real * x


def slater_proximity(psi: WedgeState, method: Optional[str] = None) -> float:
    """Distance of the sorted γ_1 spectrum from (1/N, ..., 1/N, 0, ..., 0)."""
    spectrum = np.sort(rdm(psi, 1).spectrum(method=method))[::-1]
    target = np.zeros_like(spectrum)
    target[: psi.n_particles] = 1.0 / psi.n_particles
    return float(np.linalg.norm(spectrum - target))


def _run_restart(config: OptimizationConfig, restart: int) -> Tuple[RestartTrace, np.ndarray]:
    d, n, k = config.d, config.n_particles, config.k
    method = config.eigensolver
    armijo = float(setting("optimize", "armijo"))
    reject = float(setting("optimize", "eigen_reject"))
    value_tol = float(setting("optimize", "value_tol"))
    seed = derive_seed(config.seed, restart)

    x = np.array(random_state(d, n, seed).coeffs)
    w = _spectrum(x, d, n, k, method=method)
    value, support = entropy_of_spectrum(w), int(np.sum(w > reject))
    gt = _tangent(x, _complex_gradient(x, d, n, k, method=method))
    step = config.initial_step
    points: List[TracePoint] = []
    termination = "budget"
    iteration = 0
    progress = math.inf

    for iteration in range(config.max_iters + 1):
        grad_norm = float(np.linalg.norm(gt))
        if config.keep_traces:
            points.append(TracePoint(iteration=iteration, value=value, grad_norm=grad_norm))
        if grad_norm <= config.grad_tol:
            termination = "gradient"
            break
        # accepted steps that no longer move the value are rounding noise
        if progress <= value_tol:
            termination = "stalled"
            break
        if iteration == config.max_iters:
            break

        t = step
        accepted = False
        while t >= config.min_step:
            y = x - t * gt
            y /= np.linalg.norm(y)
            wy = _spectrum(y, d, n, k, method=method)
            candidate = entropy_of_spectrum(wy)
            # never shrink the support of γ_k: ln γ_k is singular at the boundary
            if int(np.sum(wy > reject)) >= support and candidate <= value - armijo * t * grad_norm ** 2:
                accepted = True
                break
            t *= config.shrink
        if not accepted:
            termination = "stalled"
            break

        progress = value - candidate
        x, value, support = y, candidate, int(np.sum(wy > reject))
        gt = _tangent(x, _complex_gradient(x, d, n, k, method=method))
        step = t / config.shrink

    logger.debug("Restart %d (seed %d): S_%d = %.12f after %d iterations (%s)", restart, seed, k, value, iteration, termination)
    trace = RestartTrace(
        restart=restart,
        seed=seed,
        final_value=value,
        iterations=iteration,
        termination=termination,
        points=points,
    )
    return trace, x


def _preserve_candidate(config: OptimizationConfig, restart: int, coeffs: np.ndarray, floor: float) -> Tuple[bool, Optional[str]]:
    """Serialize a sub-floor state, read it back and re-evaluate it."""
    psi = state_from_coeffs(config.d, config.n_particles, coeffs)
    path = None
    if config.candidate_dir is not None:
        name = f"d{config.d}_N{config.n_particles}_k{config.k}_seed{config.seed}_restart{restart}.json"
        path = str(save_state(psi, Path(config.candidate_dir) / name))
        reloaded = load_state(path)
    else:
        reloaded = state_from_dict(psi.to_dict())

    value = von_neumann(rdm(reloaded, config.k), method=config.eigensolver)
    reproduced = value < floor - float(setting("optimize", "sub_floor_margin"))
    logger.warning(
        "Sub-floor value for (d=%d, N=%d, k=%d) restart %d: S_k = %.15f, floor %.15f, reproduced=%s, saved to %s",
        config.d, config.n_particles, config.k, restart, value, floor, reproduced, path,
    )
    return reproduced, path


def minimize_entropy(config: OptimizationConfig) -> OptimizationResult:
    """
    Minimize S(γ_k) from config.restarts seeded random starts and return the best state found.

    Restart i starts from random_state(d, N, derive_seed(seed, i)); restarts may run on a
    thread pool and are merged by restart index, so the result does not depend on workers.
    Ties within 1e-10 go to the lowest restart index.

    Raises:
        NumericalInvariantError: If a k = 1 run ends below ln N (Coleman's bound).
    """
    d, n, k = config.d, config.n_particles, config.k
    floor = math.log(binomial(n, k))
    margin = float(setting("optimize", "sub_floor_margin"))

    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        outcomes = list(executor.map(lambda i: _run_restart(config, i), range(config.restarts)))

    best = 0
    for i, (trace, _) in enumerate(outcomes):
        if trace.final_value < outcomes[best][0].final_value - TIE_TOLERANCE:
            best = i
    best_trace, best_coeffs = outcomes[best]
    best_state = state_from_coeffs(d, n, best_coeffs)
    best_value = von_neumann(rdm(best_state, k), method=config.eigensolver)

    counterexample, candidate_path = False, None
    if k == 1:
        if best_value < math.log(n) - margin:
            raise NumericalInvariantError(f"S_1 = {best_value!r} fell below ln N = {math.log(n)!r}")
    else:
        for i, (trace, coeffs) in enumerate(outcomes):
            value = best_value if i == best else trace.final_value
            if value < floor - margin:
                reproduced, path = _preserve_candidate(config, i, coeffs, floor)
                if i == best:
                    counterexample, candidate_path = reproduced, path

    converged = best_trace.termination != "budget"
    result = OptimizationResult(
        config=config,
        best_state=best_state,
        best_restart=best,
        best_value=best_value,
        conjectured_floor=floor,
        gap=best_value - floor,
        slater_proximity=slater_proximity(best_state, method=config.eigensolver),
        converged=converged,
        counterexample_candidate=counterexample,
        candidate_path=candidate_path,
        traces=[trace for trace, _ in outcomes],
    )
    logger.info("Best S_%d for d=%d N=%d: %.12f (floor %.12f, gap %.3e, restart %d)", k, d, n, best_value, floor, result.gap, best)
    return result
