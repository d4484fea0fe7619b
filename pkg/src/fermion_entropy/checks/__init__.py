from .c01_symmetry_check import SymmetryCheck, check_symmetry
from .c02_monotonicity_check import MonotonicityCheck, check_monotonicity
from .c03_concavity_check import ConcavityCheck, check_concavity
from .c04_coleman_check import ColemanCheck, check_coleman
from .c05_clr_bound_check import ClrBoundCheck, check_clr_bound, clr_bound_rhs
from .c06_k_bound_check import KBoundCheck, check_k_bound, k_bound_rhs
from .c07_lemma_key_check import LemmaKeyCheck, check_lemma_key
from .c08_lemma_pi_check import LemmaPiCheck, check_lemma_pi
from .c09_rdm_oracle_check import RdmOracleCheck, check_rdm_oracle
from .c10_all_k_check import AllKEntangledCheck, check_all_k_entangled
from .c11_concavity_identity_check import ConcavityIdentityCheck, check_concavity_identity
from .c12_wedge_support_check import WedgeSupportCheck, check_wedge_support
from .c13_relative_entropy_monotonicity_check import RelativeEntropyMonotonicityCheck, check_relative_entropy_monotonicity

# claim id -> check class, in report order
CHECKS = {
    check.claim_id: check
    for check in (
        SymmetryCheck,
        MonotonicityCheck,
        ConcavityCheck,
        ColemanCheck,
        ClrBoundCheck,
        KBoundCheck,
        LemmaKeyCheck,
        LemmaPiCheck,
        RdmOracleCheck,
        AllKEntangledCheck,
        ConcavityIdentityCheck,
        WedgeSupportCheck,
        RelativeEntropyMonotonicityCheck,
    )
}


__all__ = [
    "CHECKS",
    "SymmetryCheck",
    "MonotonicityCheck",
    "ConcavityCheck",
    "ColemanCheck",
    "ClrBoundCheck",
    "KBoundCheck",
    "LemmaKeyCheck",
    "LemmaPiCheck",
    "RdmOracleCheck",
    "AllKEntangledCheck",
    "ConcavityIdentityCheck",
    "WedgeSupportCheck",
    "RelativeEntropyMonotonicityCheck",
    "check_symmetry",
    "check_monotonicity",
    "check_concavity",
    "check_coleman",
    "check_clr_bound",
    "check_k_bound",
    "check_lemma_key",
    "check_lemma_pi",
    "check_rdm_oracle",
    "check_all_k_entangled",
    "check_concavity_identity",
    "check_wedge_support",
    "check_relative_entropy_monotonicity",
    "clr_bound_rhs",
    "k_bound_rhs",
]
