import math
from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


def clr_bound_rhs(s1: float, dim: int, n: int) -> float:
    """S_1 + ln((N-1)/(dim-N+2)), the lower bound on S_2."""
    return s1 + math.log((n - 1) / (dim - n + 2))


class ClrBoundCheck(BaseCheck):
    """
    S_2 >= S_1 + ln((N-1)/(d-N+2)).

    A second result with d replaced by the support dimension d_Ψ of γ_1 is emitted
    (the state lives in Λ^N of the range of γ_1).
    """

    name: str = "ClrBoundCheck"
    claim_id: str = "eq:main21"

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            if sample.n < 2:
                return []
            s1, s2 = sample.profile[1], sample.profile[2]
            d_psi = sample.support_dimension()
            results = [
                CheckResult.inequality(self.claim_id, s2 - clr_bound_rhs(s1, sample.d, sample.n), self.tol, **sample.context(k=2, variant="d")),
                CheckResult.inequality(
                    self.claim_id,
                    s2 - clr_bound_rhs(s1, d_psi, sample.n),
                    self.tol,
                    **sample.context(k=2, variant="d_psi", d_psi=d_psi),
                ),
            ]
            return self._log(results)

        return _check


def check_clr_bound(psi: WedgeState, tol: Optional[float] = None) -> List[CheckResult]:
    """The bound with d, followed by the same bound with d_Ψ."""
    return ClrBoundCheck(tol=tol).get_check()(as_sample(psi))
