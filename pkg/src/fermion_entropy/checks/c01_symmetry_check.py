from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class SymmetryCheck(BaseCheck):
    """S_k = S_{N-k}: particle-hole symmetry of the entropy profile of a pure state."""

    name: str = "SymmetryCheck"
    claim_id: str = "eq:symm"
    kind = "identity"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            profile = sample.profile
            results = [
                CheckResult.identity(self.claim_id, abs(profile[k] - profile[sample.n - k]), self.tol, **sample.context(k=k))
                for k in range(1, sample.n)
            ]
            return self._log(results)

        return _check


def check_symmetry(psi: WedgeState, tol: Optional[float] = None) -> List[CheckResult]:
    """One identity result per k in 1..N-1 with residual |S_k - S_{N-k}|."""
    return SymmetryCheck(tol=tol).get_check()(as_sample(psi))
