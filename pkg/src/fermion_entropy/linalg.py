"""
Dense complex Hermitian linear algebra.

Eigendecomposition (LAPACK through numpy, or cyclic Jacobi rotations), spectral
matrix functions, Kronecker products, seeded random unitaries/density matrices,
and the literal full tensor space partial trace used as a cross-validation oracle.
"""
import logging
from typing import Callable, Optional, Tuple

import numpy as np

from fermion_entropy.errors import NumericalInvariantError, OracleCapExceededError
from fermion_entropy.utils.config import setting, tolerance

logger = logging.getLogger("LINALG")

EIGENSOLVERS = ("lapack", "jacobi")


def as_matrix(m) -> np.ndarray:
    """Return m as a 2-D complex128 array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"Expected a matrix, got an array with shape {arr.shape}")
    return arr


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m, name: str = "matrix") -> np.ndarray:
    """
    Validate that m is square and Hermitian to 1e-10 relative to its largest entry.

    Returns:
        np.ndarray: The exactly Hermitian part (m + m^H) / 2.

    Raises:
        ValueError: If m is not square or not Hermitian within tolerance.
    """
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    scale = float(np.max(np.abs(arr))) if arr.size else 0.0
    defect = hermiticity_defect(arr)
    if not defect <= tolerance("hermiticity_rel") * scale:
        raise ValueError(f"{name} is not Hermitian (defect {defect:.3e}, scale {scale:.3e})")
    return (arr + arr.conj().T) / 2


def _jacobi_eigh(h: np.ndarray, max_sweeps: int, rel_threshold: float) -> Tuple[np.ndarray, np.ndarray]:
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    target = rel_threshold * np.linalg.norm(a)

    for sweep in range(max_sweeps):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if off <= target:
            logger.debug("Jacobi converged after %d sweeps (dim %d)", sweep, n)
            return np.real(np.diag(a)).copy(), v

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue
                # phase rotation makes the (p, q) entry real, then a real Givens rotation zeroes it
                phase = np.conj(apq) / b
                theta = 0.5 * np.arctan2(2.0 * b, a[q, q].real - a[p, p].real)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)

                cols = [p, q]
                a[:, cols] = a[:, cols] @ rot
                a[cols, :] = rot.conj().T @ a[cols, :]
                v[:, cols] = v[:, cols] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    raise NumericalInvariantError(f"Jacobi eigensolver did not converge within {max_sweeps} sweeps (dim {n})")


def eigh(h, method: Optional[str] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        h: Hermitian matrix (validated to 1e-10 relative).
        method (Optional[str]): "lapack" or "jacobi". Defaults to linalg.eigensolver in the config.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Ascending real eigenvalues and orthonormal eigenvector columns.
    """
    arr = require_hermitian(h)
    method = method or setting("linalg", "eigensolver")
    if method not in EIGENSOLVERS:
        raise ValueError(f"Unknown eigensolver '{method}', expected one of {EIGENSOLVERS}")
    if arr.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)

    if method == "lapack":
        w, v = np.linalg.eigh(arr)
        return w, v

    w, v = _jacobi_eigh(
        arr,
        max_sweeps=int(setting("linalg", "jacobi_max_sweeps")),
        rel_threshold=float(setting("linalg", "jacobi_rel_threshold")),
    )
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def clamp_density_spectrum(w: np.ndarray) -> np.ndarray:
    """
    Clamp rounding-level negative eigenvalues of a density matrix to 0.

    Raises:
        NumericalInvariantError: If an eigenvalue lies below the PSD floor (-1e-10).
    """
    floor = tolerance("psd_floor")
    if w.size and w.min() < floor:
        raise NumericalInvariantError(f"Matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    return np.clip(w, 0.0, None)


def density_spectrum(rho, method: Optional[str] = None) -> np.ndarray:
    w, _ = eigh(rho, method=method)
    return clamp_density_spectrum(w)


def hermitian_function(
    h,
    fn: Callable[[np.ndarray], np.ndarray],
    floor: Optional[float] = None,
    method: Optional[str] = None,
) -> np.ndarray:
    """
    Spectral matrix function V f(Λ) V^H.

    When floor is given, only eigenvalues above it enter; the rest of the
    spectrum is mapped to 0 (used for logarithms restricted to the support).
    """
    w, v = eigh(h, method=method)
    mask = np.ones_like(w, dtype=bool) if floor is None else w > floor
    vs = v[:, mask]
    return (vs * fn(w[mask])) @ vs.conj().T


def kron(a, b, max_entries: Optional[int] = None) -> np.ndarray:
    """Kronecker product with a guard on the number of result entries."""
    a, b = as_matrix(a), as_matrix(b)
    cap = int(max_entries or setting("linalg", "kron_max_entries"))
    entries = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if entries > cap:
        raise OracleCapExceededError(f"Kronecker product with {entries} entries exceeds cap {cap}")
    return np.kron(a, b)


def partial_trace_full(m, d: int, n: int, keep: int, max_dim: Optional[int] = None) -> np.ndarray:
    """
    Trace out the last n - keep tensor factors of an operator on (C^d)^{⊗n}.

    This is the literal index contraction and exists only as an oracle for the
    wedge-basis computations.

    Raises:
        ValueError: On dimension mismatch or keep outside [1, n].
        OracleCapExceededError: If d^n exceeds the oracle cap.
    """
    cap = int(max_dim or setting("linalg", "oracle_max_dim"))
    full = d ** n
    if full > cap:
        raise OracleCapExceededError(f"Oracle dimension {d}^{n} = {full} exceeds cap {cap}")
    if not 1 <= keep <= n:
        raise ValueError(f"keep={keep} outside [1, {n}]")
    arr = as_matrix(m)
    if arr.shape != (full, full):
        raise ValueError(f"Expected a {full}x{full} operator on (C^{d})^{n}, got {arr.shape}")

    return trace_out(arr, d ** keep, d ** (n - keep))


def trace_out(m, kept: int, traced: int) -> np.ndarray:
    """Tr_B of an operator on C^kept ⊗ C^traced, the traced factor last."""
    arr = as_matrix(m)
    if arr.shape != (kept * traced, kept * traced):
        raise ValueError(f"Expected a {kept * traced}x{kept * traced} operator, got {arr.shape}")
    out = np.einsum("ajbj->ab", arr.reshape(kept, traced, kept, traced))
    return (out + out.conj().T) / 2


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded unitary from the QR decomposition of a complex Gaussian matrix with phase-fixed diagonal."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases


def random_density_matrix(dim: int, seed: int) -> np.ndarray:
    """Seeded full-rank density matrix G G^H / Tr from a complex Gaussian G."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def is_unitary(u, tol: Optional[float] = None) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    tol = tolerance("unitary") if tol is None else tol
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) <= tol
