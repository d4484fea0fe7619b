from typing import Callable, List, Optional, Tuple

import numpy as np

from fermion_entropy.base import BaseCheck
from fermion_entropy.combinadics import binomial
from fermion_entropy.fermion import wedge_isometry
from fermion_entropy.linalg import partial_trace_full
from fermion_entropy.models import CheckResult
from fermion_entropy.utils.config import setting


def maximally_mixed_full(d: int, m: int, max_dim: Optional[int] = None) -> np.ndarray:
    """π_m on (C^d)^{⊗m}: the antisymmetric projector W W^H divided by C(d, m)."""
    w = wedge_isometry(d, m, max_dim=max_dim)
    return (w @ w.conj().T) / binomial(d, m)


class LemmaPiCheck(BaseCheck):
    """Tracing the last l factors of π_m gives π_{m-l}, checked in full tensor space."""

    name: str = "LemmaPiCheck"
    claim_id: str = "lem:pi"
    kind = "identity"
    scope = "case"
    requires_oracle = True

    def __init__(self, tol: Optional[float] = None, max_dim: Optional[int] = None):
        super().__init__(tol=tol)
        self.max_dim = int(max_dim or setting("linalg", "oracle_max_dim"))

    def get_check(self) -> Callable[[Tuple[int, int, int]], List[CheckResult]]:
        def _check(case: Tuple[int, int, int]) -> List[CheckResult]:
            d, m, l = case
            if not 1 <= l < m <= d:
                raise ValueError(f"Need 1 <= l < m <= d, got (d, m, l) = ({d}, {m}, {l})")
            traced = partial_trace_full(maximally_mixed_full(d, m, self.max_dim), d, m, keep=m - l, max_dim=self.max_dim)
            residual = float(np.max(np.abs(traced - maximally_mixed_full(d, m - l, self.max_dim))))
            return self._log([CheckResult.identity(self.claim_id, residual, self.tol, d=d, m=m, l=l)])

        return _check


def check_lemma_pi(d: int, m: int, l: int, tol: Optional[float] = None, max_dim: Optional[int] = None) -> CheckResult:
    """
    Raises:
        OracleCapExceededError: If d^m exceeds the oracle cap.
    """
    return LemmaPiCheck(tol=tol, max_dim=max_dim).get_check()((d, m, l))[0]
