from typing import Callable, List, Optional, Tuple

from fermion_entropy.base import BaseCheck
from fermion_entropy.entropy import relative_entropy
from fermion_entropy.linalg import random_density_matrix, trace_out
from fermion_entropy.models import CheckResult
from fermion_entropy.utils.seeds import derive_seed


class RelativeEntropyMonotonicityCheck(BaseCheck):
    """D(ρ_AB‖σ_AB) >= D(ρ_A‖σ_A) for seeded random full-rank states on C^a ⊗ C^b."""

    name: str = "RelativeEntropyMonotonicityCheck"
    claim_id: str = "eq:mono"
    scope = "case"

    def get_check(self) -> Callable[[Tuple[int, int, int]], List[CheckResult]]:
        def _check(case: Tuple[int, int, int]) -> List[CheckResult]:
            dim_a, dim_b, seed = case
            if dim_a < 1 or dim_b < 1:
                raise ValueError(f"Factor dimensions must be positive, got ({dim_a}, {dim_b})")
            rho = random_density_matrix(dim_a * dim_b, derive_seed(seed, 0))
            sigma = random_density_matrix(dim_a * dim_b, derive_seed(seed, 1))
            joint = relative_entropy(rho, sigma)
            marginal = relative_entropy(trace_out(rho, dim_a, dim_b), trace_out(sigma, dim_a, dim_b))
            return self._log([CheckResult.inequality(self.claim_id, joint - marginal, self.tol, a=dim_a, b=dim_b, seed=seed)])

        return _check


def check_relative_entropy_monotonicity(dim_a: int, dim_b: int, seed: int, tol: Optional[float] = None) -> CheckResult:
    return RelativeEntropyMonotonicityCheck(tol=tol).get_check()((dim_a, dim_b, seed))[0]
