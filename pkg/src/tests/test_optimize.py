import json
import math

import numpy as np
import pytest

from fermion_entropy import optimize
from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.fermion import apply_one_body_unitary, load_state, random_state, slater
from fermion_entropy.linalg import random_unitary
from fermion_entropy.models import OptimizationConfig
from fermion_entropy.optimize import entropy_gradient, entropy_objective, minimize_entropy, slater_proximity


def _finite_difference(psi, k: int, h: float = 1e-5) -> np.ndarray:
    x = np.concatenate([psi.coeffs.real, psi.coeffs.imag])
    dim = psi.dimension
    out = np.empty_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        plus, minus = x + step, x - step
        out[i] = (
            entropy_objective(plus[:dim] + 1j * plus[dim:], psi.d, psi.n_particles, k)
            - entropy_objective(minus[:dim] + 1j * minus[dim:], psi.d, psi.n_particles, k)
        ) / (2 * h)
    return out


@pytest.mark.parametrize(
    "d, n, k, seed",
    [
        (4, 2, 1, 0),
        (5, 2, 1, 1),
        (5, 3, 1, 2),
        (5, 3, 2, 29),
        (6, 2, 1, 3),
        (6, 3, 1, 4),
        (6, 3, 2, 5),
        (6, 4, 1, 6),
        (6, 4, 2, 7),
        (5, 4, 1, 8),
    ],
)
def test_gradient_matches_finite_differences(d, n, k, seed):
    psi = random_state(d, n, seed)
    grad = entropy_gradient(psi, k)
    assert grad.shape == (2 * psi.dimension,)
    fd = _finite_difference(psi, k)
    assert np.linalg.norm(grad - fd) <= 1e-5 * np.linalg.norm(grad)


def test_global_phase_direction_is_flat():
    psi = random_state(5, 3, 29)
    grad = entropy_gradient(psi, 2)
    direction = np.concatenate([-psi.coeffs.imag, psi.coeffs.real])
    assert abs(grad @ direction) <= 1e-9


def test_slater_is_a_critical_point():
    psi = slater(5, [0, 1, 2])
    g = entropy_gradient(psi, 1)
    x = np.concatenate([psi.coeffs.real, psi.coeffs.imag])
    assert np.linalg.norm(g - (g @ x) * x) <= 1e-6


def test_objective_matches_entropy_on_unit_vectors(random_psi):
    from fermion_entropy.entropy import entropy_profile

    psi = random_psi(6, 3, 2)
    profile = entropy_profile(psi)
    for k in (1, 2, 3):
        assert abs(entropy_objective(psi.coeffs, 6, 3, k) - profile[k]) < 1e-12


def test_gradient_rejects_k_out_of_range(random_psi):
    with pytest.raises(ValueError):
        entropy_gradient(random_psi(5, 3), 4)


def test_slater_proximity():
    assert slater_proximity(slater(6, [1, 3, 4])) <= 1e-10
    rotated = apply_one_body_unitary(slater(6, [0, 1, 2]), random_unitary(6, seed=3))
    assert slater_proximity(rotated) <= 1e-8
    assert slater_proximity(random_state(6, 3, 31)) > 1e-3


def test_one_dimensional_space():
    result = minimize_entropy(OptimizationConfig(d=4, n_particles=4, k=2, restarts=2, candidate_dir=None))
    assert abs(result.best_value - math.log(6)) < 1e-12
    assert abs(result.gap) < 1e-12
    assert result.converged
    assert not result.counterexample_candidate


def test_one_body_minimum_is_coleman_bound():
    result = minimize_entropy(OptimizationConfig(d=5, n_particles=3, k=1, restarts=4, seed=7, candidate_dir=None))
    assert abs(result.best_value - math.log(3)) <= 1e-6
    assert result.converged
    assert result.slater_proximity <= 1e-3


def test_traces_are_non_increasing():
    result = minimize_entropy(OptimizationConfig(d=5, n_particles=3, k=2, restarts=3, max_iters=100, seed=1, candidate_dir=None))
    assert [trace.restart for trace in result.traces] == [0, 1, 2]
    for trace in result.traces:
        values = [point.value for point in trace.points]
        assert values[0] >= values[-1]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
        assert trace.final_value == pytest.approx(values[-1])


def test_best_restart_is_lowest():
    result = minimize_entropy(OptimizationConfig(d=5, n_particles=3, k=2, restarts=4, max_iters=30, seed=3, candidate_dir=None))
    finals = [trace.final_value for trace in result.traces]
    assert finals[result.best_restart] <= min(finals) + 1e-10
    assert result.best_value == pytest.approx(finals[result.best_restart], abs=1e-10)


def test_budget_exhaustion_is_not_converged():
    result = minimize_entropy(OptimizationConfig(d=6, n_particles=3, k=2, restarts=1, max_iters=1, seed=2, candidate_dir=None))
    assert not result.converged
    assert result.traces[0].termination == "budget"


def test_keep_traces_off():
    result = minimize_entropy(OptimizationConfig(d=5, n_particles=2, k=1, restarts=2, max_iters=20, keep_traces=False, candidate_dir=None))
    assert all(trace.points == [] for trace in result.traces)


def test_workers_do_not_change_the_result():
    base = dict(d=5, n_particles=3, k=2, restarts=4, max_iters=40, seed=11, candidate_dir=None)
    single = minimize_entropy(OptimizationConfig(**base, workers=1)).model_dump(exclude={"config"})
    pooled = minimize_entropy(OptimizationConfig(**base, workers=3)).model_dump(exclude={"config"})
    assert single == pooled


def test_result_serializes_state():
    result = minimize_entropy(OptimizationConfig(d=4, n_particles=2, k=1, restarts=1, max_iters=5, candidate_dir=None))
    data = json.loads(result.model_dump_json())
    assert data["best_state"]["d"] == 4 and data["best_state"]["N"] == 2
    assert len(data["best_state"]["coeffs"]) == 6


def test_sub_floor_value_is_preserved(tmp_path, monkeypatch):
    monkeypatch.setattr(optimize, "von_neumann", lambda *args, **kwargs: 0.0)
    config = OptimizationConfig(d=4, n_particles=3, k=2, restarts=2, max_iters=5, candidate_dir=str(tmp_path))
    result = minimize_entropy(config)
    assert result.counterexample_candidate
    assert result.candidate_path is not None
    saved = load_state(result.candidate_path)
    assert saved.d == 4 and saved.n_particles == 3
    assert result.candidate_path.endswith(f"d4_N3_k2_seed{config.seed}_restart{result.best_restart}.json")
    assert result.gap < 0


def test_sub_floor_value_without_directory(monkeypatch):
    monkeypatch.setattr(optimize, "von_neumann", lambda *args, **kwargs: 0.0)
    result = minimize_entropy(OptimizationConfig(d=4, n_particles=3, k=2, restarts=1, max_iters=5, candidate_dir=None))
    assert result.counterexample_candidate
    assert result.candidate_path is None


def test_one_body_value_below_coleman_raises(monkeypatch):
    monkeypatch.setattr(optimize, "von_neumann", lambda *args, **kwargs: 0.0)
    with pytest.raises(NumericalInvariantError):
        minimize_entropy(OptimizationConfig(d=4, n_particles=2, k=1, restarts=1, max_iters=5, candidate_dir=None))


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizationConfig(d=4, n_particles=3, k=4)
    with pytest.raises(ValueError):
        OptimizationConfig(d=3, n_particles=4, k=1)
    with pytest.raises(ValueError):
        OptimizationConfig(d=30, n_particles=15, k=2)
    with pytest.raises(ValueError):
        OptimizationConfig(d=5, n_particles=3, k=2, shrink=1.5)


@pytest.mark.slow
def test_two_body_minimum_reaches_slater_floor():
    result = minimize_entropy(OptimizationConfig(d=5, n_particles=4, k=2, restarts=32, seed=7, candidate_dir=None))
    assert result.gap <= 1e-3
    assert result.slater_proximity <= 1e-3
    assert not result.counterexample_candidate
