from typing import Any, Dict, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from fermion_entropy.entropy import von_neumann
from fermion_entropy.fermion import embed_full, rdm, support_dimension
from fermion_entropy.linalg import partial_trace_full
from fermion_entropy.models import EntropyProfile, ReducedDensityMatrix, WedgeState
from fermion_entropy.utils.config import setting


class VerificationSample(BaseModel):
    """
    One state under verification, carried through every check.

    Reduced density matrices, the entropy profile and the oracle objects are computed
    lazily and cached, so each check reads the same numbers.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    psi: WedgeState = Field(..., description="The state being checked.")
    source: str = Field("state", description="Where the state came from: slater, random, rotated_slater, file, ...")
    seed: Optional[int] = Field(None, description="Seed the state was drawn with, if any.")
    eigensolver: Optional[str] = Field(None, description="Eigensolver override; None uses the configured default.")
    oracle_max_dim: int = Field(
        default_factory=lambda: setting("linalg", "oracle_max_dim"),
        description="Largest d^N for which full tensor space oracle objects are built.",
    )

    _rdms: Dict[int, ReducedDensityMatrix] = PrivateAttr(default_factory=dict)
    _profile: Optional[EntropyProfile] = PrivateAttr(None)
    _oracle_rho: Optional[np.ndarray] = PrivateAttr(None)
    _oracle_rdms: Dict[int, np.ndarray] = PrivateAttr(default_factory=dict)

    @property
    def d(self) -> int:
        return self.psi.d

    @property
    def n(self) -> int:
        return self.psi.n_particles

    def gamma(self, k: int) -> ReducedDensityMatrix:
        if k not in self._rdms:
            self._rdms[k] = rdm(self.psi, k)
        return self._rdms[k]

    @property
    def profile(self) -> EntropyProfile:
        if self._profile is None:
            values = [von_neumann(self.gamma(k), method=self.eigensolver) for k in range(1, self.n + 1)]
            self._profile = EntropyProfile(d=self.d, n_particles=self.n, values=values)
        return self._profile

    def support_dimension(self) -> int:
        return support_dimension(self.gamma(1), method=self.eigensolver)

    def oracle_available(self) -> bool:
        """Whether the embedded state fits under the oracle cap."""
        return self.d ** self.n <= self.oracle_max_dim

    def oracle_gamma(self, k: int) -> np.ndarray:
        """γ_k on (C^d)^{⊗k} by the literal partial trace of the embedded pure state."""
        if k not in self._oracle_rdms:
            if self._oracle_rho is None:
                vec = embed_full(self.psi, max_dim=self.oracle_max_dim)
                self._oracle_rho = np.outer(vec, vec.conj())
            self._oracle_rdms[k] = partial_trace_full(self._oracle_rho, self.d, self.n, keep=k, max_dim=self.oracle_max_dim)
        return self._oracle_rdms[k]

    def context(self, **extra: Any) -> Dict[str, Any]:
        return {"d": self.d, "N": self.n, "seed": self.seed, "source": self.source, **extra}


def as_sample(psi: Union[WedgeState, VerificationSample]) -> VerificationSample:
    return psi if isinstance(psi, VerificationSample) else VerificationSample(psi=psi)
