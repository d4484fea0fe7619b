from typing import Callable, List, Optional

import numpy as np

from fermion_entropy.base import BaseCheck
from fermion_entropy.fermion import wedge_isometry
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class WedgeSupportCheck(BaseCheck):
    """γ_k = P_k γ_k = γ_k P_k for the antisymmetric projector P_k on (C^d)^{⊗k}."""

    name: str = "WedgeSupportCheck"
    claim_id: str = "eq:first"
    kind = "identity"
    requires_oracle = True

    def __init__(self, tol: Optional[float] = None, k: Optional[int] = None):
        super().__init__(tol=tol)
        self.k = k

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            ks = [self.k] if self.k is not None else range(1, sample.n + 1)
            results = []
            for k in ks:
                w = wedge_isometry(sample.d, k, max_dim=sample.oracle_max_dim)
                projector = w @ w.conj().T
                gamma = sample.oracle_gamma(k)
                residual = max(float(np.max(np.abs(projector @ gamma - gamma))), float(np.max(np.abs(gamma @ projector - gamma))))
                results.append(CheckResult.identity(self.claim_id, residual, self.tol, **sample.context(k=k)))
            return self._log(results)

        return _check


def check_wedge_support(psi: WedgeState, k: int, tol: Optional[float] = None) -> CheckResult:
    if not 1 <= k <= psi.n_particles:
        raise ValueError(f"k={k} outside [1, {psi.n_particles}]")
    return WedgeSupportCheck(tol=tol, k=k).get_check()(as_sample(psi))[0]
