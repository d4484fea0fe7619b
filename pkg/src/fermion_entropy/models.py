import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from fermion_entropy.combinadics import binomial
from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.linalg import density_spectrum, require_hermitian
from fermion_entropy.utils.config import setting, tolerance


def _frozen_array(value: Any) -> np.ndarray:
    arr = np.array(value, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


class WedgeState(BaseModel):
    """
    A pure fermionic state: normalized coefficients over the lexicographic basis of Λ^N C^d.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d: int = Field(..., description="Single-particle dimension.", ge=1)
    n_particles: int = Field(..., description="Number of fermions N, 1 <= N <= d.", ge=1)
    coeffs: np.ndarray = Field(..., description="Complex coefficients; index r is the basis vector unrank(r, d, N).")

    @field_validator("coeffs", mode="before")
    @classmethod
    def _to_array(cls, value: Any) -> np.ndarray:
        arr = _frozen_array(value)
        if arr.ndim != 1:
            raise ValueError(f"coeffs must be one-dimensional, got shape {arr.shape}")
        return arr

    @model_validator(mode="after")
    def _check_invariants(self) -> "WedgeState":
        if self.n_particles > self.d:
            raise ValueError(f"N={self.n_particles} exceeds d={self.d}")
        expected = binomial(self.d, self.n_particles)
        if self.coeffs.shape[0] != expected:
            raise ValueError(f"Expected {expected} coefficients for Λ^{self.n_particles} C^{self.d}, got {self.coeffs.shape[0]}")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("State coefficients must be finite")
        norm_sq = float(np.vdot(self.coeffs, self.coeffs).real)
        if not abs(norm_sq - 1.0) <= tolerance("state_norm"):
            raise ValueError(f"State is not normalized (|c|^2 = {norm_sq!r})")
        return self

    @property
    def dimension(self) -> int:
        return self.coeffs.shape[0]

    def to_dict(self) -> Dict[str, Any]:
        """State file representation: {d, N, coeffs: [[re, im], ...]} in rank order."""
        return {
            "d": self.d,
            "N": self.n_particles,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }


class ReducedDensityMatrix(BaseModel):
    """γ_k of a pure state, stored on the wedge basis of Λ^k C^d (dimension C(d, k))."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d: int = Field(..., description="Single-particle dimension.")
    n_particles: int = Field(..., description="Particle number N of the parent state.")
    k: int = Field(..., description="Number of particles kept.")
    matrix: np.ndarray = Field(..., description="Hermitian trace-one matrix in the lexicographic wedge basis.")

    @field_validator("matrix", mode="before")
    @classmethod
    def _to_array(cls, value: Any) -> np.ndarray:
        return _frozen_array(require_hermitian(value, name="reduced density matrix"))

    @model_validator(mode="after")
    def _check_invariants(self) -> "ReducedDensityMatrix":
        if not 1 <= self.k <= self.n_particles <= self.d:
            raise ValueError(f"Invalid (d, N, k) = ({self.d}, {self.n_particles}, {self.k})")
        dim = binomial(self.d, self.k)
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"Expected a {dim}x{dim} matrix, got {self.matrix.shape}")
        trace = float(np.trace(self.matrix).real)
        if not abs(trace - 1.0) <= tolerance("rdm_trace"):
            raise NumericalInvariantError(f"Reduced density matrix has trace {trace!r}")
        return self

    def spectrum(self, method: Optional[str] = None) -> np.ndarray:
        """Ascending eigenvalues, clamped at 0 after the PSD check."""
        return density_spectrum(self.matrix, method=method)


class MaximallyMixed(BaseModel):
    """π_k = d_k^{-1} P_k, represented implicitly on the wedge basis."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=1)
    k: int = Field(..., ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> "MaximallyMixed":
        if self.k > self.d:
            raise ValueError(f"k={self.k} exceeds d={self.d}")
        return self

    @property
    def dim(self) -> int:
        return binomial(self.d, self.k)

    @property
    def matrix(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.complex128) / self.dim


class EntropyProfile(BaseModel):
    """The sequence S_1, ..., S_N of one pure state."""

    model_config = ConfigDict(frozen=True)

    d: int
    n_particles: int
    values: List[float] = Field(..., description="S_1..S_N, in the unit named by log_base.")
    log_base: Literal["nats", "bits"] = "nats"

    @model_validator(mode="after")
    def _check_invariants(self) -> "EntropyProfile":
        if len(self.values) != self.n_particles:
            raise ValueError(f"Profile needs {self.n_particles} values, got {len(self.values)}")
        slack = tolerance("psd_floor")
        if not all(v >= slack for v in self.values):
            raise NumericalInvariantError(f"Negative entropy in profile {self.values}")
        if self.values and not self.values[-1] <= -slack:
            raise NumericalInvariantError(f"S_N = {self.values[-1]!r} should vanish for a pure state")
        return self

    def __getitem__(self, k: int) -> float:
        """S_k with the 1-based particle index; S_0 = 0 by convention."""
        if k == 0:
            return 0.0
        if not 1 <= k <= self.n_particles:
            raise IndexError(f"k={k} outside [0, {self.n_particles}]")
        return self.values[k - 1]

    def in_bits(self) -> "EntropyProfile":
        if self.log_base == "bits":
            return self
        return EntropyProfile(
            d=self.d,
            n_particles=self.n_particles,
            values=[v / math.log(2) for v in self.values],
            log_base="bits",
        )


CheckKind = Literal["inequality", "identity", "informational"]


class CheckResult(BaseModel):
    """Outcome of one claim evaluated at one parameter point."""

    claim_id: str = Field(..., description="Stable claim identifier, e.g. 'eq:symm'.")
    passed: bool
    slack: Optional[float] = Field(None, description="LHS - RHS for inequalities, residual for identities.")
    tolerance: float
    kind: CheckKind = "inequality"
    context: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[str] = None

    @model_validator(mode="after")
    def _check_consistency(self) -> "CheckResult":
        if self.error is not None or self.kind == "informational":
            return self
        if self.slack is None:
            raise ValueError("A non-error check needs a slack")
        expected = self.slack >= -self.tolerance if self.kind == "inequality" else abs(self.slack) <= self.tolerance
        if self.passed != expected:
            raise ValueError(f"passed={self.passed} inconsistent with slack {self.slack!r} and tolerance {self.tolerance!r}")
        return self

    @classmethod
    def inequality(cls, claim_id: str, slack: float, tol: float, **context: Any) -> "CheckResult":
        return cls(claim_id=claim_id, passed=slack >= -tol, slack=float(slack), tolerance=tol, kind="inequality", context=context)

    @classmethod
    def identity(cls, claim_id: str, residual: float, tol: float, **context: Any) -> "CheckResult":
        return cls(claim_id=claim_id, passed=abs(residual) <= tol, slack=float(residual), tolerance=tol, kind="identity", context=context)

    @classmethod
    def informational(cls, claim_id: str, slack: float, tol: float, **context: Any) -> "CheckResult":
        return cls(claim_id=claim_id, passed=True, slack=float(slack), tolerance=tol, kind="informational", context=context)

    @classmethod
    def failure(cls, claim_id: str, error: Exception, tol: float, **context: Any) -> "CheckResult":
        return cls(
            claim_id=claim_id,
            passed=False,
            tolerance=tol,
            context=context,
            error=f"{type(error).__name__}: {error}",
        )


class VerificationConfig(BaseModel):
    """Ranges, sample counts, seeds and tolerances of a verification run."""

    min_d: int = Field(default_factory=lambda: setting("verify", "min_d"), ge=1)
    max_d: int = Field(default_factory=lambda: setting("verify", "max_d"), ge=1)
    min_n: int = Field(default_factory=lambda: setting("verify", "min_n"), ge=1)
    max_n: int = Field(default_factory=lambda: setting("verify", "max_n"), ge=1)
    trials: int = Field(default_factory=lambda: setting("verify", "trials"), ge=0, description="Random samples, spread round-robin over the (d, N) grid.")
    seed: int = Field(default_factory=lambda: setting("verify", "seed"), ge=0)
    inequality_tol: float = Field(default_factory=lambda: tolerance("inequality"), gt=0)
    identity_tol: float = Field(default_factory=lambda: tolerance("identity"), gt=0)
    oracle_max_dim: int = Field(default_factory=lambda: setting("verify", "oracle_max_dim"), ge=1)
    mono_trials: int = Field(default_factory=lambda: setting("verify", "mono_trials"), ge=0)
    mono_dims: List[List[int]] = Field(default_factory=lambda: setting("verify", "mono_dims"))
    lemma_pi_cases: List[List[int]] = Field(default_factory=lambda: setting("verify", "lemma_pi_cases"))
    claims: List[str] = Field(default_factory=lambda: setting("verify", "claims"))
    workers: int = Field(default_factory=lambda: setting("verify", "workers"), ge=1)

    @model_validator(mode="after")
    def _check_ranges(self) -> "VerificationConfig":
        if self.min_d > self.max_d or self.min_n > self.max_n:
            raise ValueError("Empty verification range")
        return self

    def grid(self) -> List[tuple]:
        """All (d, N) pairs with min_n <= N <= max_n and max(N, min_d) <= d <= max_d, in order."""
        return [
            (d, n)
            for n in range(self.min_n, self.max_n + 1)
            for d in range(max(n, self.min_d), self.max_d + 1)
        ]


class ReportSummary(BaseModel):
    total: int
    passed: int
    failed: int
    informational: int


class VerificationReport(BaseModel):
    config: VerificationConfig
    results: List[CheckResult]
    summary: ReportSummary

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0

    @classmethod
    def from_results(cls, config: VerificationConfig, results: List[CheckResult]) -> "VerificationReport":
        informational = sum(1 for r in results if r.kind == "informational")
        failed = sum(1 for r in results if not r.passed)
        return cls(
            config=config,
            results=results,
            summary=ReportSummary(
                total=len(results),
                passed=len(results) - failed - informational,
                failed=failed,
                informational=informational,
            ),
        )


class OptimizationConfig(BaseModel):
    d: int = Field(..., ge=1)
    n_particles: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    restarts: int = Field(default_factory=lambda: setting("optimize", "restarts"), ge=1)
    max_iters: int = Field(default_factory=lambda: setting("optimize", "max_iters"), ge=0)
    initial_step: float = Field(default_factory=lambda: setting("optimize", "initial_step"), gt=0)
    shrink: float = Field(default_factory=lambda: setting("optimize", "shrink"), gt=0, lt=1)
    grad_tol: float = Field(default_factory=lambda: setting("optimize", "grad_tol"), gt=0)
    min_step: float = Field(default_factory=lambda: setting("optimize", "min_step"), gt=0)
    seed: int = Field(default_factory=lambda: setting("optimize", "seed"), ge=0)
    workers: int = Field(default_factory=lambda: setting("optimize", "workers"), ge=1)
    eigensolver: str = Field(default_factory=lambda: setting("optimize", "eigensolver"))
    keep_traces: bool = Field(True, description="Store per-iteration traces in the result.")
    candidate_dir: Optional[str] = Field(
        default_factory=lambda: setting("optimize", "candidate_dir"),
        description="Directory where sub-floor states are serialized. None disables writing.",
    )

    @model_validator(mode="after")
    def _check_ranges(self) -> "OptimizationConfig":
        if not self.k <= self.n_particles <= self.d:
            raise ValueError(f"Need k <= N <= d, got (d, N, k) = ({self.d}, {self.n_particles}, {self.k})")
        limit = setting("optimize", "max_coefficients")
        if binomial(self.d, self.n_particles) > limit:
            raise ValueError(f"C({self.d},{self.n_particles}) exceeds the optimizer limit {limit}")
        return self


class TracePoint(BaseModel):
    iteration: int
    value: float
    grad_norm: float


class RestartTrace(BaseModel):
    restart: int
    seed: int
    final_value: float
    iterations: int
    termination: Literal["gradient", "stalled", "budget"]
    points: List[TracePoint] = Field(default_factory=list)


class OptimizationResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: OptimizationConfig
    best_state: WedgeState
    best_restart: int
    best_value: float = Field(..., description="S_k of best_state in nats.")
    conjectured_floor: float = Field(..., description="ln C(N, k).")
    gap: float = Field(..., description="best_value - conjectured_floor, reported regardless of sign.")
    slater_proximity: float
    converged: bool
    counterexample_candidate: bool = False
    candidate_path: Optional[str] = None
    traces: List[RestartTrace] = Field(default_factory=list)

    @field_serializer("best_state")
    def _serialize_state(self, state: WedgeState) -> Dict[str, Any]:
        return state.to_dict()
