import math
from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


def k_bound_rhs(s1: float, dim: int, n: int, k: int) -> float:
    """
    S_1 + Σ_{j=2}^{k} ln((N-j+1)/(dim-N+j)).

    Each term bounds S_j - S_{j-1} from below: by symmetry this difference equals
    D(γ_{N-j+1}‖π_{N-j+1}) - D(γ_{N-j}‖π_{N-j}) + ln(d_{N-j}/d_{N-j+1}), and the relative
    entropy does not increase under the partial trace. Valid for 2 <= k <= N (d_0 = 1).
    For k = 2 this is the S_2 bound of ClrBoundCheck.
    """
    if not 2 <= k <= n:
        raise ValueError(f"k={k} outside [2, {n}]")
    return s1 + sum(math.log((n - j + 1) / (dim - n + j)) for j in range(2, k + 1))


class KBoundCheck(BaseCheck):
    """S_k >= k_bound_rhs for every 2 <= k <= N-1, with d and with d_Ψ."""

    name: str = "KBoundCheck"
    claim_id: str = "eq:kbound"

    def __init__(self, tol: Optional[float] = None, k: Optional[int] = None):
        super().__init__(tol=tol)
        self.k = k

    def _results(self, sample: VerificationSample, k: int, d_psi: int) -> List[CheckResult]:
        s1, sk = sample.profile[1], sample.profile[k]
        return [
            CheckResult.inequality(self.claim_id, sk - k_bound_rhs(s1, sample.d, sample.n, k), self.tol, **sample.context(k=k, variant="d")),
            CheckResult.inequality(
                self.claim_id,
                sk - k_bound_rhs(s1, d_psi, sample.n, k),
                self.tol,
                **sample.context(k=k, variant="d_psi", d_psi=d_psi),
            ),
        ]

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            if self.k is not None and not 2 <= self.k <= sample.n - 1:
                raise ValueError(f"k={self.k} outside [2, {sample.n - 1}]")
            ks = [self.k] if self.k is not None else range(2, sample.n)
            d_psi = sample.support_dimension()
            results = [result for k in ks for result in self._results(sample, k, d_psi)]
            return self._log(results)

        return _check


def check_k_bound(psi: WedgeState, k: int, tol: Optional[float] = None) -> List[CheckResult]:
    """
    Raises:
        ValueError: If k is outside [2, N-1].
    """
    return KBoundCheck(tol=tol, k=k).get_check()(as_sample(psi))
