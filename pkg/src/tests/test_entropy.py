import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermion_entropy.entropy import entropy_of_spectrum, entropy_profile, relative_entropy, von_neumann
from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.fermion import maximally_mixed, random_state, rdm, slater
from fermion_entropy.linalg import kron, random_density_matrix, random_unitary
from fermion_entropy.models import EntropyProfile


def _pure(dim: int, index: int = 0) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=np.complex128)
    rho[index, index] = 1.0
    return rho


def test_entropy_of_pure_state():
    assert von_neumann(_pure(4)) == 0.0


def test_entropy_of_maximally_mixed():
    assert abs(von_neumann(np.eye(6) / 6) - 1.791759469228055) < 1e-12
    assert abs(von_neumann(maximally_mixed(4, 2)) - math.log(6)) < 1e-12


def test_entropy_of_spectrum_skips_zeros():
    assert entropy_of_spectrum(np.array([0.0, 0.5, 0.5])) == pytest.approx(math.log(2))
    assert entropy_of_spectrum(np.array([1e-13, 1.0])) == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_entropy_is_unitarily_invariant(seed):
    dim = 1 + (seed * 7) % 20
    rho = random_density_matrix(dim, seed=seed)
    u = random_unitary(dim, seed=100 + seed)
    assert abs(von_neumann(u @ rho @ u.conj().T) - von_neumann(rho)) < 1e-10


def test_entropy_solvers_agree(eigensolver):
    rho = random_density_matrix(7, seed=8)
    assert abs(von_neumann(rho, method=eigensolver) - von_neumann(rho, method="lapack")) < 1e-10


def test_entropy_rejects_bad_trace():
    with pytest.raises(NumericalInvariantError):
        von_neumann(np.eye(3) / 2)


def test_entropy_rejects_non_psd():
    with pytest.raises(NumericalInvariantError):
        von_neumann(np.diag([1.5, -0.5]))


def test_entropy_rejects_non_hermitian():
    with pytest.raises(NumericalInvariantError):
        von_neumann(np.array([[0.5, 0.3], [0.0, 0.5]]))


def test_entropy_rejects_non_finite():
    with pytest.raises(NumericalInvariantError):
        von_neumann(np.array([[np.nan, 0.0], [0.0, 0.5]]))
    with pytest.raises(NumericalInvariantError):
        relative_entropy(np.eye(2) / 2, np.diag([np.inf, 0.0]))


def test_entropy_rejects_non_square():
    with pytest.raises(ValueError):
        von_neumann(np.ones((2, 3)) / 2)


def test_relative_entropy_of_equal_states():
    rho = random_density_matrix(4, seed=1)
    assert abs(relative_entropy(rho, rho)) < 1e-10


def test_relative_entropy_pure_against_mixed():
    assert abs(relative_entropy(_pure(6), np.eye(6) / 6) - math.log(6)) < 1e-12


def test_relative_entropy_infinite_outside_support():
    assert relative_entropy(np.eye(2) / 2, np.diag([1.0, 0.0])) == math.inf


def test_relative_entropy_finite_on_shared_kernel():
    # ker σ ⊆ ker ρ
    assert abs(relative_entropy(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])) - math.log(2)) < 1e-12
    assert abs(relative_entropy(np.diag([1.0, 0.0, 0.0]), np.diag([0.5, 0.5, 0.0])) - math.log(2)) < 1e-12


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(ValueError):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


@settings(max_examples=30, deadline=None)
@given(dim=st.integers(min_value=1, max_value=6), seed=st.integers(min_value=0, max_value=2**31))
def test_relative_entropy_is_nonnegative(dim, seed):
    rho = random_density_matrix(dim, seed=seed)
    sigma = random_density_matrix(dim, seed=seed + 1)
    assert relative_entropy(rho, sigma) >= -1e-10


@settings(max_examples=30, deadline=None)
@given(dim=st.integers(min_value=1, max_value=8), seed=st.integers(min_value=0, max_value=2**31))
def test_relative_entropy_to_maximally_mixed(dim, seed):
    # D(ρ‖I/n) = ln n - S(ρ)
    rho = random_density_matrix(dim, seed=seed)
    assert abs(relative_entropy(rho, np.eye(dim) / dim) - (math.log(dim) - von_neumann(rho))) < 1e-9


def test_relative_entropy_is_additive_on_products():
    r1, r2 = random_density_matrix(2, 1), random_density_matrix(3, 2)
    s1, s2 = random_density_matrix(2, 3), random_density_matrix(3, 4)
    joint = relative_entropy(kron(r1, r2), kron(s1, s2))
    assert abs(joint - relative_entropy(r1, s1) - relative_entropy(r2, s2)) < 1e-9


def test_relative_entropy_accepts_models():
    psi = random_state(5, 2, 6)
    gamma = rdm(psi, 1)
    value = relative_entropy(gamma, maximally_mixed(5, 1))
    assert abs(value - (math.log(5) - von_neumann(gamma))) < 1e-10


@pytest.mark.parametrize("d, n", [(4, 2), (5, 3), (6, 3), (6, 4)])
def test_relative_entropy_separates_distinct_rdms(d, n):
    for seed in range(5):
        psi, phi = random_state(d, n, seed), random_state(d, n, 50 + seed)
        for k in range(1, n):
            rho, sigma = rdm(psi, k), rdm(phi, k)
            assert np.max(np.abs(rho.matrix - sigma.matrix)) > 1e-8
            assert relative_entropy(rho, sigma) > 1e-8
            assert abs(relative_entropy(rho, rho)) <= 1e-8


def test_relative_entropy_slater_against_random_rdm():
    gamma = rdm(slater(5, [0, 1]), 1)
    sigma = rdm(random_state(5, 2, 3), 1)
    assert 1e-8 < relative_entropy(gamma, sigma) < math.inf


def test_profile_ends_at_zero(random_psi):
    profile = entropy_profile(random_psi(6, 3, 11))
    assert len(profile.values) == 3
    assert profile[3] < 1e-10
    assert profile[0] == 0.0


def test_profile_is_symmetric(random_psi):
    profile = entropy_profile(random_psi(6, 3, 11))
    assert abs(profile[1] - profile[2]) < 1e-9


def test_profile_index_bounds():
    profile = entropy_profile(slater(4, [0, 1]))
    with pytest.raises(IndexError):
        profile[3]


def test_profile_in_bits():
    profile = entropy_profile(slater(8, [0, 1, 2, 3]))
    bits = profile.in_bits()
    assert bits.log_base == "bits"
    np.testing.assert_allclose(bits.values, [2.0, math.log2(6), 2.0, 0.0], atol=1e-9)
    assert bits.in_bits() is bits


def test_profile_rejects_impossible_values():
    with pytest.raises(NumericalInvariantError):
        EntropyProfile(d=4, n_particles=2, values=[-0.1, 0.0])
    with pytest.raises(NumericalInvariantError):
        EntropyProfile(d=4, n_particles=2, values=[0.7, 0.3])
    with pytest.raises(NumericalInvariantError):
        EntropyProfile(d=4, n_particles=2, values=[math.nan, 0.0])
