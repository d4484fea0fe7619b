from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class ConcavityCheck(BaseCheck):
    name: str = "ConcavityCheck"
    claim_id: str = "eq:main12"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            profile = sample.profile
            results = [
                CheckResult.inequality(
                    self.claim_id,
                    profile[k] - (profile[k + 1] + profile[k - 1]) / 2,
                    self.tol,
                    **sample.context(k=k),
                )
                for k in range(2, sample.n)
            ]
            return self._log(results)

        return _check


def check_concavity(psi: WedgeState, tol: Optional[float] = None) -> List[CheckResult]:
    """Slack S_k - (S_{k+1} + S_{k-1}) / 2 for 2 <= k <= N-1 (empty for N < 3)."""
    return ConcavityCheck(tol=tol).get_check()(as_sample(psi))
