import json
import math

import numpy as np
import pytest

from fermion_entropy.combinadics import binomial
from fermion_entropy.entropy import entropy_profile, von_neumann
from fermion_entropy.errors import OracleCapExceededError
from fermion_entropy.fermion import (
    apply_one_body_unitary,
    contraction_table,
    embed_full,
    load_state,
    maximally_mixed,
    random_state,
    rdm,
    save_state,
    slater,
    support_dimension,
    wedge_isometry,
)
from fermion_entropy.linalg import density_spectrum, partial_trace_full, random_unitary
from fermion_entropy.models import WedgeState


def test_slater_coefficients():
    psi = slater(4, [0, 1, 2])
    np.testing.assert_array_equal(psi.coeffs, [1, 0, 0, 0])
    np.testing.assert_array_equal(slater(3, [0, 1, 2]).coeffs, [1])


def test_slater_rejects_invalid_orbitals():
    with pytest.raises(ValueError):
        slater(3, [0, 3])
    with pytest.raises(ValueError):
        slater(3, [])


def test_slater_profile():
    profile = entropy_profile(slater(8, [0, 1, 2, 3]))
    np.testing.assert_allclose(profile.values, [math.log(binomial(4, k)) for k in range(1, 4)] + [0.0], atol=1e-9)


def test_random_state_is_deterministic():
    a, b = random_state(6, 3, 42), random_state(6, 3, 42)
    np.testing.assert_array_equal(a.coeffs, b.coeffs)
    assert not np.array_equal(a.coeffs, random_state(6, 3, 43).coeffs)


def test_random_state_in_one_dimensional_space():
    psi = random_state(4, 4, 5)
    assert psi.dimension == 1
    assert abs(abs(psi.coeffs[0]) - 1.0) < 1e-12


def test_wedge_state_validation():
    with pytest.raises(ValueError):
        WedgeState(d=4, n_particles=2, coeffs=np.ones(5) / np.sqrt(5))
    with pytest.raises(ValueError):
        WedgeState(d=4, n_particles=2, coeffs=np.ones(6))
    with pytest.raises(ValueError):
        WedgeState(d=2, n_particles=3, coeffs=[1.0])


def test_contraction_table_padding():
    index, sign = contraction_table(4, 2, 1)
    assert index.shape == sign.shape == (4, 4)
    # A = C is never allowed, so the diagonal points at the padding slot
    np.testing.assert_array_equal(np.diag(index), [binomial(4, 2)] * 4)
    np.testing.assert_array_equal(np.diag(sign), 0.0)


def test_rdm_of_slater():
    gamma = rdm(slater(4, [0, 1, 2]), 2).matrix
    expected = np.zeros(6)
    expected[[0, 1, 3]] = 1 / 3
    np.testing.assert_allclose(gamma, np.diag(expected), atol=1e-15)


def test_rdm_top_level_is_the_state(random_psi):
    psi = random_psi(5, 3, 1)
    gamma = rdm(psi, 3)
    np.testing.assert_allclose(gamma.matrix, np.outer(psi.coeffs, psi.coeffs.conj()), atol=1e-15)
    assert von_neumann(gamma) < 1e-10


def test_rdm_properties(random_psi):
    for seed in range(5):
        psi = random_psi(6, 3, seed)
        for k in range(1, 4):
            gamma = rdm(psi, k)
            w = gamma.spectrum()
            assert abs(np.trace(gamma.matrix).real - 1.0) < 1e-10
            assert w.min() >= 0.0
            np.testing.assert_allclose(gamma.matrix, gamma.matrix.conj().T, atol=1e-15)


def test_one_body_eigenvalues_bounded_by_pauli(random_psi):
    assert rdm(random_psi(5, 3, 7), 1).spectrum().max() <= 1 / 3 + 1e-9


def test_rdm_rejects_k_out_of_range(random_psi):
    psi = random_psi(5, 3)
    with pytest.raises(ValueError):
        rdm(psi, 0)
    with pytest.raises(ValueError):
        rdm(psi, 4)


def test_embed_two_fermion_singlet():
    np.testing.assert_allclose(embed_full(slater(2, [0, 1])), [0, 1 / np.sqrt(2), -1 / np.sqrt(2), 0], atol=1e-15)


def test_embedding_is_antisymmetric(random_psi):
    psi = random_psi(4, 3, 2)
    vec = embed_full(psi)
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-12
    swapped = vec.reshape(4, 4, 4).transpose(1, 0, 2).ravel()
    np.testing.assert_allclose(swapped, -vec, atol=1e-15)


def test_embedding_cap():
    with pytest.raises(OracleCapExceededError):
        embed_full(slater(8, range(4)), max_dim=1000)


@pytest.mark.parametrize("d, n", [(d, n) for d in range(2, 6) for n in range(1, min(d, 3) + 1)])
def test_rdm_matches_literal_partial_trace(d, n):
    for seed in range(20):
        psi = random_state(d, n, seed)
        vec = embed_full(psi)
        rho = np.outer(vec, vec.conj())
        for k in range(1, n + 1):
            fast = np.sort(rdm(psi, k).spectrum())[::-1]
            oracle = np.sort(density_spectrum(partial_trace_full(rho, d, n, keep=k)))[::-1]
            np.testing.assert_allclose(oracle[: fast.size], fast, atol=1e-9)
            np.testing.assert_allclose(oracle[fast.size :], 0.0, atol=1e-9)


def test_wedge_isometry_columns_are_orthonormal():
    w = wedge_isometry(4, 2)
    assert w.shape == (16, 6)
    np.testing.assert_allclose(w.conj().T @ w, np.eye(6), atol=1e-14)


def test_apply_identity_and_phases(random_psi):
    psi = random_psi(5, 2, 3)
    np.testing.assert_allclose(apply_one_body_unitary(psi, np.eye(5)).coeffs, psi.coeffs, atol=1e-14)

    phases = np.exp(1j * np.arange(5))
    rotated = apply_one_body_unitary(psi, np.diag(phases))
    from fermion_entropy.combinadics import subsets

    expected = np.array([np.prod(phases[list(s)]) for s in subsets(5, 2)]) * psi.coeffs
    np.testing.assert_allclose(rotated.coeffs, expected, atol=1e-14)
    np.testing.assert_allclose(np.abs(rotated.coeffs), np.abs(psi.coeffs), atol=1e-14)


def test_rotated_slater_keeps_slater_profile():
    rotated = apply_one_body_unitary(slater(4, [0, 1, 2]), random_unitary(4, seed=11))
    np.testing.assert_allclose(entropy_profile(rotated).values, [math.log(3), math.log(3), 0.0], atol=1e-9)


def test_profile_invariant_under_one_body_unitaries():
    for seed in range(20):
        d, n = 4 + seed % 3, 2 + seed % 2
        psi = random_state(d, n, seed)
        rotated = apply_one_body_unitary(psi, random_unitary(d, seed=1000 + seed))
        np.testing.assert_allclose(entropy_profile(rotated).values, entropy_profile(psi).values, atol=1e-8)


def test_apply_rejects_non_unitary(random_psi):
    with pytest.raises(ValueError):
        apply_one_body_unitary(random_psi(4, 2), 2 * np.eye(4))
    with pytest.raises(ValueError):
        apply_one_body_unitary(random_psi(4, 2), np.eye(3))


def test_maximally_mixed():
    pi = maximally_mixed(4, 2)
    np.testing.assert_array_equal(pi.matrix, np.eye(6) / 6)
    assert abs(von_neumann(pi) - math.log(6)) < 1e-12
    np.testing.assert_array_equal(maximally_mixed(3, 3).matrix, [[1.0]])


def test_support_dimension(random_psi):
    assert support_dimension(rdm(slater(6, [0, 1, 2]), 1)) == 3
    assert support_dimension(rdm(random_psi(5, 3, 4), 1)) == 5
    assert support_dimension(rdm(random_psi(4, 4, 4), 1)) == 4
    with pytest.raises(ValueError):
        support_dimension(rdm(random_psi(5, 3), 2))


def test_state_file_roundtrip(tmp_path, random_psi):
    psi = random_psi(5, 2, 12)
    path = save_state(psi, tmp_path / "state.json")
    np.testing.assert_allclose(load_state(path).coeffs, psi.coeffs, atol=1e-15)


def test_writer_normalizes(tmp_path):
    path = save_state(np.array([3.0, 0, 0, 4.0, 0, 0]), tmp_path / "raw.json", d=4, n=2)
    data = json.loads(path.read_text())
    assert data["d"] == 4 and data["N"] == 2
    np.testing.assert_allclose(np.array(data["coeffs"])[:, 0], [0.6, 0, 0, 0.8, 0, 0])


def test_reader_rejects_unnormalized(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"d": 2, "N": 1, "coeffs": [[1.0, 0.0], [1.0, 0.0]]}))
    with pytest.raises(ValueError):
        load_state(path)
    path.write_text(json.dumps({"d": 2, "coeffs": [[1.0, 0.0]]}))
    with pytest.raises(ValueError):
        load_state(path)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_reader_rejects_non_finite(tmp_path, bad):
    path = tmp_path / "nan.json"
    path.write_text(json.dumps({"d": 3, "N": 2, "coeffs": [[bad, 0.0], [0.0, 0.0], [0.0, 0.0]]}))
    with pytest.raises(ValueError, match="non-finite"):
        load_state(path)


def test_wedge_state_rejects_non_finite():
    with pytest.raises(ValueError):
        WedgeState(d=3, n_particles=2, coeffs=[np.nan, 0.0, 0.0])
