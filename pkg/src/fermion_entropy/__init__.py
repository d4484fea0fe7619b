from .combinadics import binomial, merge_sign, rank, unrank
from .entropy import entropy_profile, relative_entropy, von_neumann
from .errors import NumericalInvariantError, OracleCapExceededError
from .fermion import (
    apply_one_body_unitary,
    embed_full,
    load_state,
    maximally_mixed,
    random_state,
    rdm,
    save_state,
    slater,
    support_dimension,
)
from .models import (
    CheckResult,
    EntropyProfile,
    OptimizationConfig,
    OptimizationResult,
    ReducedDensityMatrix,
    VerificationConfig,
    VerificationReport,
    WedgeState,
)
from .optimize import entropy_gradient, minimize_entropy, slater_proximity
from .verification_state import VerificationSample
from .verification_suite import VerificationSuite, run_suite

__all__ = [
    "binomial",
    "merge_sign",
    "rank",
    "unrank",
    "entropy_profile",
    "relative_entropy",
    "von_neumann",
    "NumericalInvariantError",
    "OracleCapExceededError",
    "apply_one_body_unitary",
    "embed_full",
    "load_state",
    "maximally_mixed",
    "random_state",
    "rdm",
    "save_state",
    "slater",
    "support_dimension",
    "CheckResult",
    "EntropyProfile",
    "OptimizationConfig",
    "OptimizationResult",
    "ReducedDensityMatrix",
    "VerificationConfig",
    "VerificationReport",
    "WedgeState",
    "entropy_gradient",
    "minimize_entropy",
    "slater_proximity",
    "VerificationSample",
    "VerificationSuite",
    "run_suite",
]
