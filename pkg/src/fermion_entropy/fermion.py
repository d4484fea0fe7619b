"""
Fermionic pure states on the wedge basis of Λ^N C^d and their k-body reduced density matrices.

γ_k is never built on (C^d)^{⊗k}: since γ_k = P_k γ_k P_k it is computed directly on the
C(d, k)-dimensional wedge basis by the contraction

    γ_k[A, B] = C(N, k)^{-1} Σ_C sign(A, C) sign(B, C) c_{A∪C} conj(c_{B∪C}),

C ranging over (N-k)-subsets disjoint from A and B, sign = merge_sign. The full tensor
space embedding below exists to check this formula against the literal partial trace.
"""
import json
import logging
import math
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from fermion_entropy.combinadics import binomial, merge_sign, permutation_sign, rank, subsets, validate_subset
from fermion_entropy.errors import NumericalInvariantError, OracleCapExceededError
from fermion_entropy.linalg import as_matrix, is_unitary
from fermion_entropy.models import MaximallyMixed, ReducedDensityMatrix, WedgeState
from fermion_entropy.utils.config import setting, tolerance

logger = logging.getLogger("FERMION")


def slater(d: int, occupied: Iterable[int]) -> WedgeState:
    """The Slater determinant e_{i1} ∧ ... ∧ e_{iN} for 0-based occupied orbitals."""
    occupied = validate_subset(occupied, d)
    if not occupied:
        raise ValueError("A Slater determinant needs at least one occupied orbital")
    coeffs = np.zeros(binomial(d, len(occupied)), dtype=np.complex128)
    coeffs[rank(occupied, d)] = 1.0
    return WedgeState(d=d, n_particles=len(occupied), coeffs=coeffs)


def random_state(d: int, n: int, seed: int) -> WedgeState:
    """
    Seeded random state: i.i.d. complex standard normal coefficients, normalized.

    A degenerate draw (norm 0) is retried on the stream (seed, attempt).
    """
    if not 1 <= n <= d:
        raise ValueError(f"Need 1 <= N <= d, got N={n}, d={d}")
    dim = binomial(d, n)
    for attempt in range(int(setting("fermion", "max_random_retries"))):
        rng = np.random.default_rng(seed if attempt == 0 else [seed, attempt])
        coeffs = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2)
        norm = np.linalg.norm(coeffs)
        if norm > 0:
            return WedgeState(d=d, n_particles=n, coeffs=coeffs / norm)
        logger.warning("Degenerate random draw for (d=%d, N=%d, seed=%d), retrying", d, n, seed)
    raise NumericalInvariantError(f"Could not draw a non-degenerate state for seed {seed}")


def state_from_coeffs(d: int, n: int, coeffs) -> WedgeState:
    """Normalize arbitrary non-zero coefficients into a WedgeState."""
    arr = np.asarray(coeffs, dtype=np.complex128)
    norm = np.linalg.norm(arr)
    if norm == 0:
        raise ValueError("Cannot normalize the zero vector")
    return WedgeState(d=d, n_particles=n, coeffs=arr / norm)


@lru_cache(maxsize=None)
def contraction_table(d: int, n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Index and sign tables of the γ_k contraction.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Arrays of shape (C(d, N-k), C(d, k)). Entry [C, A] holds
        rank(A ∪ C) and sign(A, C); pairs with A ∩ C ≠ ∅ point at the padding slot C(d, N)
        with sign 0.
    """
    rest = subsets(d, n - k)
    kept = subsets(d, k)
    pad = binomial(d, n)
    index = np.full((len(rest), len(kept)), pad, dtype=np.int64)
    sign = np.zeros((len(rest), len(kept)), dtype=np.float64)
    for i, c in enumerate(rest):
        c_set = set(c)
        for j, a in enumerate(kept):
            if c_set.intersection(a):
                continue
            merged, s = merge_sign(a, c)
            index[i, j] = rank(merged, d)
            sign[i, j] = s
    index.flags.writeable = False
    sign.flags.writeable = False
    return index, sign


def contraction_factors(coeffs: np.ndarray, d: int, n: int, k: int) -> np.ndarray:
    """The matrix V with γ_k = V^T conj(V) / C(N, k), for raw (possibly unnormalized) coefficients."""
    index, sign = contraction_table(d, n, k)
    padded = np.append(np.asarray(coeffs, dtype=np.complex128), 0.0)
    return sign * padded[index]


def rdm_matrix(coeffs: np.ndarray, d: int, n: int, k: int) -> np.ndarray:
    """γ_k as a bare matrix, without normalization or validation."""
    v = contraction_factors(coeffs, d, n, k)
    gamma = (v.T @ v.conj()) / binomial(n, k)
    return (gamma + gamma.conj().T) / 2


def rdm(psi: WedgeState, k: int) -> ReducedDensityMatrix:
    """k-body reduced density matrix γ_k on the wedge basis of Λ^k C^d."""
    if not 1 <= k <= psi.n_particles:
        raise ValueError(f"k={k} outside [1, {psi.n_particles}]")
    matrix = rdm_matrix(psi.coeffs, psi.d, psi.n_particles, k)
    trace = float(np.trace(matrix).real)
    if not abs(trace - 1.0) <= tolerance("rdm_trace"):
        raise NumericalInvariantError(f"γ_{k} has trace {trace!r}")
    return ReducedDensityMatrix(d=psi.d, n_particles=psi.n_particles, k=k, matrix=matrix)


def maximally_mixed(d: int, k: int) -> MaximallyMixed:
    return MaximallyMixed(d=d, k=k)


def support_dimension(gamma1: ReducedDensityMatrix, tol: float = 1e-10, method: Optional[str] = None) -> int:
    """Number of eigenvalues of γ_1 above tol (d_Ψ)."""
    if gamma1.k != 1:
        raise ValueError(f"support_dimension expects γ_1, got γ_{gamma1.k}")
    return int(np.sum(gamma1.spectrum(method=method) > tol))


def _check_oracle_dim(d: int, n: int, max_dim: Optional[int]) -> None:
    cap = int(max_dim or setting("linalg", "oracle_max_dim"))
    if d ** n > cap:
        raise OracleCapExceededError(f"Embedding dimension {d}^{n} = {d ** n} exceeds cap {cap}")


def _embed_coeffs(coeffs: np.ndarray, d: int, n: int) -> np.ndarray:
    out = np.zeros(d ** n, dtype=np.complex128)
    weight = 1.0 / math.sqrt(math.factorial(n))
    powers = d ** np.arange(n - 1, -1, -1)
    for r, subset in enumerate(subsets(d, n)):
        c = coeffs[r]
        if c == 0:
            continue
        for perm in permutations(subset):
            # first tensor factor is the most significant digit
            out[int(np.dot(perm, powers))] += permutation_sign(perm) * weight * c
    return out


def embed_full(psi: WedgeState, max_dim: Optional[int] = None) -> np.ndarray:
    """
    The antisymmetric vector in (C^d)^{⊗N} represented by psi.

    Each wedge basis vector e_I maps to (N!)^{-1/2} Σ_σ sgn(σ) e_{I_σ(1)} ⊗ ... ⊗ e_{I_σ(N)}.
    """
    _check_oracle_dim(psi.d, psi.n_particles, max_dim)
    return _embed_coeffs(psi.coeffs, psi.d, psi.n_particles)


def wedge_isometry(d: int, k: int, max_dim: Optional[int] = None) -> np.ndarray:
    """d^k x C(d, k) isometry whose columns embed the wedge basis; P_k = W W^H."""
    _check_oracle_dim(d, k, max_dim)
    dim = binomial(d, k)
    columns = np.zeros((d ** k, dim), dtype=np.complex128)
    for r in range(dim):
        unit = np.zeros(dim, dtype=np.complex128)
        unit[r] = 1.0
        columns[:, r] = _embed_coeffs(unit, d, k)
    return columns


def apply_one_body_unitary(psi: WedgeState, u) -> WedgeState:
    """
    Act with U^{⊗N} on psi through the N-th compound matrix: c'_J = Σ_I det(u[J, I]) c_I.

    Raises:
        ValueError: If u is not a d x d unitary to 1e-9.
    """
    u = as_matrix(u)
    if u.shape != (psi.d, psi.d):
        raise ValueError(f"Expected a {psi.d}x{psi.d} matrix, got {u.shape}")
    if not is_unitary(u):
        raise ValueError("One-body transformation is not unitary")

    basis = np.array(subsets(psi.d, psi.n_particles), dtype=np.int64)
    out = np.empty(basis.shape[0], dtype=np.complex128)
    for j, rows in enumerate(basis):
        minors = np.linalg.det(u[rows][:, basis].transpose(1, 0, 2))
        out[j] = minors @ psi.coeffs

    norm = np.linalg.norm(out)
    if not abs(norm - 1.0) <= tolerance("unitary"):
        raise NumericalInvariantError(f"Compound matrix broke normalization (|c'| = {norm!r})")
    return WedgeState(d=psi.d, n_particles=psi.n_particles, coeffs=out / norm)


def state_from_dict(data: dict) -> WedgeState:
    """
    Parse the state file representation.

    Raises:
        ValueError: On missing keys, malformed or non-finite coefficients or a norm deviating from 1 by more than 1e-6.
    """
    try:
        d, n, raw = int(data["d"]), int(data["N"]), data["coeffs"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed state file: {e}") from None
    pairs = np.asarray(raw, dtype=np.float64)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("coeffs must be a list of [re, im] pairs")
    if not np.all(np.isfinite(pairs)):
        raise ValueError("State file holds non-finite coefficients")
    coeffs = pairs[:, 0] + 1j * pairs[:, 1]
    norm = float(np.linalg.norm(coeffs))
    if not abs(norm - 1.0) <= tolerance("state_file_norm"):
        raise ValueError(f"State file norm {norm!r} deviates from 1")
    return WedgeState(d=d, n_particles=n, coeffs=coeffs / norm)


def save_state(psi: Union[WedgeState, np.ndarray], path: Union[str, Path], d: Optional[int] = None, n: Optional[int] = None) -> Path:
    """Write a state file; raw coefficient vectors are normalized first (d and n required then)."""
    if not isinstance(psi, WedgeState):
        psi = state_from_coeffs(d, n, psi)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(psi.to_dict(), f, indent=2)
    return path


def load_state(path: Union[str, Path]) -> WedgeState:
    with open(path, "r") as f:
        return state_from_dict(json.load(f))
