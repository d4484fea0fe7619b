import math
from typing import Callable, List, Optional

from fermion_entropy.base import BaseCheck
from fermion_entropy.combinadics import binomial
from fermion_entropy.entropy import relative_entropy
from fermion_entropy.fermion import maximally_mixed
from fermion_entropy.models import CheckResult, WedgeState
from fermion_entropy.verification_state import VerificationSample, as_sample


class LemmaKeyCheck(BaseCheck):
    """S_k = ln C(d, k) - D(γ_k‖π_k), evaluated on the wedge basis."""

    name: str = "LemmaKeyCheck"
    claim_id: str = "lem:key"
    kind = "identity"

    def __init__(self, tol: Optional[float] = None, k: Optional[int] = None):
        super().__init__(tol=tol)
        self.k = k

    def get_check(self) -> Callable[[VerificationSample], List[CheckResult]]:
        def _check(sample: VerificationSample) -> List[CheckResult]:
            ks = [self.k] if self.k is not None else range(1, sample.n + 1)
            results = []
            for k in ks:
                divergence = relative_entropy(sample.gamma(k), maximally_mixed(sample.d, k), method=sample.eigensolver)
                residual = sample.profile[k] + divergence - math.log(binomial(sample.d, k))
                results.append(CheckResult.identity(self.claim_id, residual, self.tol, **sample.context(k=k)))
            return self._log(results)

        return _check


def check_lemma_key(psi: WedgeState, k: int, tol: Optional[float] = None) -> CheckResult:
    if not 1 <= k <= psi.n_particles:
        raise ValueError(f"k={k} outside [1, {psi.n_particles}]")
    return LemmaKeyCheck(tol=tol, k=k).get_check()(as_sample(psi))[0]
