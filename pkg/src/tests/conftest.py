import numpy as np
import pytest

from fermion_entropy.fermion import random_state


@pytest.fixture
def random_psi():
    """Factory for seeded random wedge states."""

    def _make(d: int, n: int, seed: int = 0):
        return random_state(d, n, seed)

    return _make


@pytest.fixture
def random_hermitian():
    def _make(dim: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        return (a + a.conj().T) / 2

    return _make


@pytest.fixture(params=["lapack", "jacobi"])
def eigensolver(request) -> str:
    return request.param
