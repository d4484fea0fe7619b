import math
from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class AllKEntangledCheck(BaseCheck):
    """S_k >= ln N for every 1 <= k <= N-1 (monotonicity and symmetry carry Coleman's bound inward)."""

    name: str = "AllKEntangledCheck"
    claim_id: str = "rmk:allk"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            floor = math.log(sample.n)
            results = [
                CheckResult.inequality(self.claim_id, sample.profile[k] - floor, self.tol, **sample.context(k=k))
                for k in range(1, sample.n)
            ]
            return self._log(results)

        return _check


def check_all_k_entangled(psi: WedgeState, tol: Optional[float] = None) -> List[CheckResult]:
    return AllKEntangledCheck(tol=tol).get_check()(as_sample(psi))
