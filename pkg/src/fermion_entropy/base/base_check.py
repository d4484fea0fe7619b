import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, List, Literal, Optional

from fermion_entropy.models import CheckKind, CheckResult
from fermion_entropy.utils.config import tolerance


class BaseCheck(ABC):
    """
    Abstract base class for every executable claim.

    A check owns a stable claim id, a tolerance and a logger, and hands out a callable
    through get_check. Sample checks take a VerificationSample; parameter checks take
    a tuple of integers (see the suite).

    Attributes:
        name (str): Class-level name used for logging.
        claim_id (str): Stable identifier written to reports.
        kind (CheckKind): inequality (one-sided tolerance) or identity (two-sided).
        scope (str): "sample" checks run once per state, "case" checks once per parameter tuple.
        requires_oracle (bool): Whether the check builds full tensor space objects.
    """

    name: str
    claim_id: str
    kind: CheckKind = "inequality"
    scope: Literal["sample", "case"] = "sample"
    requires_oracle: bool = False

    def __init__(self, tol: Optional[float] = None):
        """
        Args:
            tol (Optional[float]): Tolerance override. Defaults to tolerances.inequality
                or tolerances.identity depending on kind.
        """
        if not getattr(self, "name", None) or not getattr(self, "claim_id", None):
            raise ValueError("Please name your check and give it a claim id.")
        self.tol = tol if tol is not None else tolerance(self.kind)

    def applies_to(self, sample: Any) -> bool:
        """Whether a sample check has anything to evaluate on this sample."""
        return not self.requires_oracle or sample.oracle_available()

    @property
    def logger(self) -> logging.Logger:
        """
        Returns:
            logging.Logger: A logger prefixed with CHECK::{check_name}
        """
        return logging.getLogger(f"CHECK::{self.name}")

    def _log(self, results: List[CheckResult]) -> List[CheckResult]:
        for result in results:
            if not result.passed:
                self.logger.warning("%s failed: slack=%r tol=%r context=%s", result.claim_id, result.slack, result.tolerance, result.context)
        return results

    @abstractmethod
    def get_check(self) -> Callable[[Any], List[CheckResult]]:
        """
        Returns:
            Callable[[Any], List[CheckResult]]: The check as a callable over one sample or parameter point.
        """
        pass
