import math
from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.utils.config import tolerance
from fermion_entropy.verification_state import VerificationSample, as_sample


class ColemanCheck(BaseCheck):
    """S_1 >= ln N, flagging equality (Slater determinants saturate it)."""

    name: str = "ColemanCheck"
    claim_id: str = "coleman"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            slack = sample.profile[1] - math.log(sample.n)
            equality = abs(slack) <= tolerance("equality_flag")
            return self._log([CheckResult.inequality(self.claim_id, slack, self.tol, **sample.context(k=1, equality=equality))])

        return _check


def check_coleman(psi: WedgeState, tol: Optional[float] = None) -> CheckResult:
    return ColemanCheck(tol=tol).get_check()(as_sample(psi))[0]
