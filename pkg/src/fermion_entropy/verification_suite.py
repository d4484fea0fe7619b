import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

from fermion_entropy.base import BaseCheck
from fermion_entropy.checks import CHECKS
from fermion_entropy.fermion import apply_one_body_unitary, random_state, slater
from fermion_entropy.linalg import random_unitary
from fermion_entropy.models import CheckResult, VerificationConfig, VerificationReport
from fermion_entropy.utils.seeds import derive_seed
from fermion_entropy.verification_state import VerificationSample


class VerificationSuite:
    """
    Runs every enabled claim over Slater determinants, seeded random states and
    rotated Slater determinants, plus the parameter cases of lem:pi and eq:mono.

    Per-sample work may run on a thread pool; results are assembled by claim and then
    by sample order, so the report only depends on the configuration.
    """

    _config: VerificationConfig
    _eigensolver: Optional[str]

    def __init__(self, config: Optional[VerificationConfig] = None, eigensolver: Optional[str] = None):
        self._config = config or VerificationConfig()
        unknown = [claim for claim in self._config.claims if claim not in CHECKS]
        if unknown:
            raise ValueError(f"Unknown claim ids: {unknown}. Available: {list(CHECKS)}")
        self._eigensolver = eigensolver

    @property
    def name(self) -> str:
        return self.__class__.__name__

    @property
    def logger(self):
        return logging.getLogger(f"SUITE:{self.name}")

    @property
    def config(self) -> VerificationConfig:
        return self._config

    def _sample(self, psi, source: str, seed: Optional[int] = None) -> VerificationSample:
        return VerificationSample(
            psi=psi,
            source=source,
            seed=seed,
            eigensolver=self._eigensolver,
            oracle_max_dim=self._config.oracle_max_dim,
        )

    def samples(self) -> List[VerificationSample]:
        """
        Deterministic Slater determinants first (one per grid point, plus d = N), then for
        trial t at grid point t mod |grid| a random state and a rotated Slater determinant.
        """
        config = self._config
        grid = config.grid()
        points = list(grid)
        for n in range(config.min_n, config.max_n + 1):
            if (n, n) not in points:
                points.append((n, n))
        samples = [self._sample(slater(d, range(n)), "slater") for d, n in points]

        if grid:
            for t in range(config.trials):
                d, n = grid[t % len(grid)]
                state_seed = derive_seed(config.seed, t, 0)
                samples.append(self._sample(random_state(d, n, state_seed), "random", state_seed))
                rotation_seed = derive_seed(config.seed, t, 1)
                rotated = apply_one_body_unitary(slater(d, range(n)), random_unitary(d, rotation_seed))
                samples.append(self._sample(rotated, "rotated_slater", rotation_seed))
        return samples

    def cases(self, claim_id: str) -> List[Tuple[int, int, int]]:
        config = self._config
        if claim_id == "lem:pi":
            return [tuple(case) for case in config.lemma_pi_cases]
        if claim_id == "eq:mono" and config.mono_dims:
            count = min(config.trials, config.mono_trials)
            return [(*config.mono_dims[t % len(config.mono_dims)], derive_seed(config.seed, t, 2)) for t in range(count)]
        return []

    def checks(self) -> List[BaseCheck]:
        config = self._config
        checks = []
        for claim_id in config.claims:
            check_cls = CHECKS[claim_id]
            tol = config.inequality_tol if check_cls.kind == "inequality" else config.identity_tol
            check = check_cls(tol=tol, max_dim=config.oracle_max_dim) if claim_id == "lem:pi" else check_cls(tol=tol)
            checks.append(check)
        return checks

    def _run_sample(self, sample: VerificationSample, checks: List[BaseCheck]) -> Dict[str, List[CheckResult]]:
        results: Dict[str, List[CheckResult]] = {}
        for check in checks:
            if check.scope != "sample" or not check.applies_to(sample):
                continue
            try:
                results[check.claim_id] = check.get_check()(sample)
            except Exception as e:
                self.logger.warning("%s raised on %s: %s", check.claim_id, sample.context(), e)
                results[check.claim_id] = [CheckResult.failure(check.claim_id, e, check.tol, **sample.context())]
        return results

    def _run_case(self, check: BaseCheck, case: Tuple[int, int, int]) -> List[CheckResult]:
        try:
            return check.get_check()(case)
        except Exception as e:
            self.logger.warning("%s raised on case %s: %s", check.claim_id, case, e)
            return [CheckResult.failure(check.claim_id, e, check.tol, case=list(case))]

    def run(self) -> VerificationReport:
        config = self._config
        checks = self.checks()
        samples = self.samples()
        self.logger.info("Running %d claims over %d samples", len(checks), len(samples))

        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            per_sample = list(executor.map(lambda sample: self._run_sample(sample, checks), samples))

        results: List[CheckResult] = []
        for check in checks:
            if check.scope == "sample":
                claim_results = [result for outcome in per_sample for result in outcome.get(check.claim_id, [])]
            else:
                claim_results = [result for case in self.cases(check.claim_id) for result in self._run_case(check, case)]
            if not claim_results:
                claim_results = [
                    CheckResult(claim_id=check.claim_id, passed=True, tolerance=check.tol, kind="informational", context={"note": "no applicable cases"})
                ]
            results.extend(claim_results)

        report = VerificationReport.from_results(config, results)
        self.logger.info("%d results: %d passed, %d failed, %d informational", report.summary.total, report.summary.passed, report.summary.failed, report.summary.informational)
        return report


def run_suite(config: Optional[VerificationConfig] = None, eigensolver: Optional[str] = None) -> VerificationReport:
    """Execute every enabled check and return the assembled report."""
    return VerificationSuite(config, eigensolver=eigensolver).run()
