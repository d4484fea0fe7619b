"""Von Neumann entropy, quantum relative entropy and entropy profiles (natural log throughout)."""
import logging
import math
from typing import Optional, Union

import numpy as np

from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.fermion import rdm
from fermion_entropy.linalg import as_matrix, clamp_density_spectrum, eigh, require_hermitian
from fermion_entropy.models import EntropyProfile, MaximallyMixed, ReducedDensityMatrix, WedgeState
from fermion_entropy.utils.config import tolerance

logger = logging.getLogger("ENTROPY")

# +inf is the relative entropy outside the kernel condition
INFINITY = math.inf

DensityLike = Union[np.ndarray, ReducedDensityMatrix, MaximallyMixed]


def _density_matrix(rho: DensityLike, name: str) -> np.ndarray:
    if isinstance(rho, (ReducedDensityMatrix, MaximallyMixed)):
        rho = rho.matrix
    arr = as_matrix(rho)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    try:
        arr = require_hermitian(arr, name=name)
    except ValueError as e:
        raise NumericalInvariantError(str(e)) from None
    trace = float(np.trace(arr).real)
    if not abs(trace - 1.0) <= tolerance("density_trace"):
        raise NumericalInvariantError(f"{name} has trace {trace!r}, expected 1")
    return arr


def entropy_of_spectrum(w: np.ndarray) -> float:
    """-Σ λ ln λ over eigenvalues above the shared floor (0 ln 0 = 0)."""
    w = np.asarray(w, dtype=np.float64)
    w = w[w > tolerance("eigen_floor")]
    return float(-np.sum(w * np.log(w)))


def von_neumann(rho: DensityLike, method: Optional[str] = None) -> float:
    """
    S(ρ) = -Tr[ρ ln ρ] in nats.

    Raises:
        ValueError: If ρ is not a square matrix.
        NumericalInvariantError: If ρ is not Hermitian, its trace is off by more than 1e-8
            or an eigenvalue lies below -1e-10.
    """
    arr = _density_matrix(rho, "ρ")
    w, _ = eigh(arr, method=method)
    return entropy_of_spectrum(clamp_density_spectrum(w))


def relative_entropy(rho: DensityLike, sigma: DensityLike, method: Optional[str] = None) -> float:
    """
    D(ρ‖σ) = Tr[ρ(ln ρ - ln σ)] if ker σ ⊆ ker ρ, else +inf.

    The kernel test takes every eigenvector v of σ with eigenvalue below 1e-12 and
    requires <v|ρ|v> < 1e-10; ln σ is then evaluated on the support of σ only.

    Raises:
        ValueError: On non-square inputs or a dimension mismatch.
        NumericalInvariantError: On non-Hermitian or non-unit-trace inputs, or if a finite result violates Klein's inequality beyond 1e-8.
    """
    rho_m = _density_matrix(rho, "ρ")
    sigma_m = _density_matrix(sigma, "σ")
    if rho_m.shape != sigma_m.shape:
        raise ValueError(f"Dimension mismatch: {rho_m.shape} vs {sigma_m.shape}")

    mu, w = eigh(sigma_m, method=method)
    mu = clamp_density_spectrum(mu)
    floor = tolerance("eigen_floor")
    kernel = mu < floor
    # diagonal of ρ in σ's eigenbasis
    overlaps = np.real(np.einsum("ij,ik,kj->j", w.conj(), rho_m, w))
    if np.any(overlaps[kernel] >= tolerance("kernel_overlap")):
        return INFINITY

    lam, _ = eigh(rho_m, method=method)
    neg_entropy = -entropy_of_spectrum(clamp_density_spectrum(lam))
    cross = float(np.sum(np.log(mu[~kernel]) * overlaps[~kernel]))
    value = neg_entropy - cross
    if value < -tolerance("klein"):
        raise NumericalInvariantError(f"Relative entropy {value!r} violates Klein's inequality")
    return value


def entropy_profile(psi: WedgeState, method: Optional[str] = None) -> EntropyProfile:
    """S_k = S(γ_k) for k = 1..N."""
    values = [von_neumann(rdm(psi, k), method=method) for k in range(1, psi.n_particles + 1)]
    logger.debug("Profile for d=%d N=%d: %s", psi.d, psi.n_particles, values)
    return EntropyProfile(d=psi.d, n_particles=psi.n_particles, values=values)
