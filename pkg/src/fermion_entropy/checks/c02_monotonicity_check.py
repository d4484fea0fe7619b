from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


def proven_monotonicity_range(n: int) -> range:
    """k with S_k <= S_{k+1} established by the proof: 1 <= k <= (N-1)/2."""
    return range(1, (n - 1) // 2 + 1)


def informational_monotonicity_range(n: int) -> range:
    """The step k = N/2 for even N: evaluated and logged, never failed. Empty for odd N."""
    return range((n - 1) // 2 + 1, min(n // 2, n - 1) + 1)


class MonotonicityCheck(BaseCheck):
    """
    S_k <= S_{k+1} on the first half of the profile.

    Pass/fail results cover the proven range only; the boundary step is reported
    as informational with its measured slack.
    """

    name: str = "MonotonicityCheck"
    claim_id: str = "eq:main11"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            profile = sample.profile
            results = [
                CheckResult.inequality(self.claim_id, profile[k + 1] - profile[k], self.tol, **sample.context(k=k, range="proven"))
                for k in proven_monotonicity_range(sample.n)
            ]
            for k in informational_monotonicity_range(sample.n):
                slack = profile[k + 1] - profile[k]
                self.logger.info("Boundary step k=%d (N=%d): S_{k+1} - S_k = %.3e", k, sample.n, slack)
                results.append(CheckResult.informational(self.claim_id, slack, self.tol, **sample.context(k=k, range="boundary")))
            return self._log(results)

        return _check


def check_monotonicity(psi: WedgeState, tol: Optional[float] = None) -> List[CheckResult]:
    return MonotonicityCheck(tol=tol).get_check()(as_sample(psi))
