from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.entropy import relative_entropy
from fermion_entropy.linalg import kron
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class ConcavityIdentityCheck(BaseCheck):
    """
    D(γ_{k+1} ‖ γ_1 ⊗ γ_k) = S_1 + S_k - S_{k+1} in full tensor space.

    The marginals of γ_{k+1} on the first factor and on the remaining k factors are
    γ_1 and γ_k, so this is the mutual information identity for the split 1 | k.
    """

    name: str = "ConcavityIdentityCheck"
    claim_id: str = "eq:conc"
    kind = "identity"
    requires_oracle = True

    def __init__(self, tol: Optional[float] = None, k: Optional[int] = None):
        super().__init__(tol=tol)
        self.k = k

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            ks = [self.k] if self.k is not None else range(1, sample.n)
            profile = sample.profile
            results = []
            for k in ks:
                product = kron(sample.oracle_gamma(1), sample.oracle_gamma(k))
                divergence = relative_entropy(sample.oracle_gamma(k + 1), product, method=sample.eigensolver)
                residual = divergence - (profile[1] + profile[k] - profile[k + 1])
                results.append(CheckResult.identity(self.claim_id, residual, self.tol, **sample.context(k=k)))
            return self._log(results)

        return _check


def check_concavity_identity(psi: WedgeState, k: int, tol: Optional[float] = None) -> CheckResult:
    if not 1 <= k <= psi.n_particles - 1:
        raise ValueError(f"k={k} outside [1, {psi.n_particles - 1}]")
    return ConcavityIdentityCheck(tol=tol, k=k).get_check()(as_sample(psi))[0]
