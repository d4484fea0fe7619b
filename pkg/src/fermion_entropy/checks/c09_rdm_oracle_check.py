from typing import Callable, List, Optional

import numpy as np

from fermion_entropy.base import BaseCheck
from fermion_entropy.linalg import density_spectrum
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class RdmOracleCheck(BaseCheck):
    """
    The wedge-basis γ_k against the literal partial trace of the embedded state.

    The oracle γ_k lives on (C^d)^{⊗k} and has rank at most C(d, k): its largest C(d, k)
    eigenvalues must match the wedge spectrum and the remainder must vanish.
    """

    name: str = "RdmOracleCheck"
    claim_id: str = "oracle:rdm"
    kind = "identity"
    requires_oracle = True

    def __init__(self, tol: Optional[float] = None, k: Optional[int] = None):
        super().__init__(tol=tol)
        self.k = k

    def _residual(self, sample: VerificationSample, k: int) -> float:
        fast = np.sort(sample.gamma(k).spectrum(method=sample.eigensolver))[::-1]
        oracle = np.sort(density_spectrum(sample.oracle_gamma(k), method=sample.eigensolver))[::-1]
        head, tail = oracle[: fast.size], oracle[fast.size :]
        residual = float(np.max(np.abs(head - fast)))
        return max(residual, float(np.max(np.abs(tail)))) if tail.size else residual

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            ks = [self.k] if self.k is not None else range(1, sample.n + 1)
            results = [CheckResult.identity(self.claim_id, self._residual(sample, k), self.tol, **sample.context(k=k)) for k in ks]
            return self._log(results)

        return _check


def check_rdm_oracle(psi: WedgeState, k: int, tol: Optional[float] = None, max_dim: Optional[int] = None) -> CheckResult:
    """
    Raises:
        OracleCapExceededError: If d^N exceeds the oracle cap.
    """
    sample = as_sample(psi) if max_dim is None else VerificationSample(psi=psi, oracle_max_dim=max_dim)
    return RdmOracleCheck(tol=tol, k=k).get_check()(sample)[0]
