import numpy as np
import pytest

from gaussian_ergotropy.ergotropy import gaussian_passive_energy
from gaussian_ergotropy.errors import InvalidArgumentError
from gaussian_ergotropy.oracle.search import (
    SymplecticSearchConfig,
    check_rearrangement_lemma,
    minimize_passive_energy_numerical,
    restart_seeds,
)
from gaussian_ergotropy.states import QuadraticHamiltonian, random_gaussian_state, random_hamiltonian
from gaussian_ergotropy.symplectic import is_symplectic, random_symplectic

FAST = SymplecticSearchConfig(restarts=4)


def test_vacuum_minimum_at_identity():
    res = minimize_passive_energy_numerical(np.eye(2), np.eye(2), FAST)
    assert res.value == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(res.s_best @ res.s_best.T, np.eye(2), atol=1e-6)


@pytest.mark.parametrize("method", ["gradient", "coordinate"])
def test_unsqueezing(method):
    cfg = SymplecticSearchConfig(restarts=4, method=method)
    res = minimize_passive_energy_numerical(np.eye(2), np.diag([4.0, 0.25]), cfg)
    assert res.value == pytest.approx(0.5, rel=1e-4)
    assert is_symplectic(res.s_best, tol=1e-8 * (1 + np.linalg.norm(res.s_best) ** 2))


def test_discovers_mode_swap():
    h = np.diag([1.0, 1.0, 2.0, 2.0])
    S = random_symplectic(2, 3, 0.3)
    V = S @ np.diag([1.0, 1.0, 3.0, 3.0]) @ S.T
    res = minimize_passive_energy_numerical(h, V, SymplecticSearchConfig(restarts=8))
    assert res.value == pytest.approx(2.5, rel=1e-4)
    assert res.value >= 2.5 - 1e-9


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_closed_form(n):
    H = random_hamiltonian(n, 100 + n)
    V = random_gaussian_state(n, 200 + n).V
    closed = gaussian_passive_energy(H, V)
    res = minimize_passive_energy_numerical(H.h, V, SymplecticSearchConfig(restarts=8))
    assert abs(res.value - closed) <= 1e-4 * closed
    assert res.value >= closed - 1e-9


def test_deterministic():
    H = random_hamiltonian(2, 1)
    V = random_gaussian_state(2, 2).V
    a = minimize_passive_energy_numerical(H.h, V, SymplecticSearchConfig(restarts=3, seed=5))
    b = minimize_passive_energy_numerical(H.h, V, SymplecticSearchConfig(restarts=3, seed=5))
    assert a.value == b.value and np.array_equal(a.s_best, b.s_best)
    assert restart_seeds(5, 4) == restart_seeds(5, 4)
    assert restart_seeds(5, 4)[:2] == restart_seeds(5, 2)


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        SymplecticSearchConfig(restarts=0)
    with pytest.raises(InvalidArgumentError):
        SymplecticSearchConfig(method="annealing")
    with pytest.raises(InvalidArgumentError):
        minimize_passive_energy_numerical(np.eye(2), np.eye(4), FAST)


def test_rearrangement_identity_margin_is_zero():
    assert check_rearrangement_lemma([1, 2], [3, 1], trials=0, seed=0).worst_margin == 0.0


def test_rearrangement_hand_baseline():
    chk = check_rearrangement_lemma([1.0, 2.0], [3.0, 1.0], trials=1000, seed=0)
    assert chk.all_hold and chk.worst_margin >= -1e-9


def test_rearrangement_single_mode_is_trace_bound():
    # for n = 1 the margin is alpha * beta * (Tr[S Sᵀ] - 2)
    for seed in range(50):
        S = random_symplectic(1, seed, 1.0)
        assert np.trace(S @ S.T) >= 2 - 1e-12
    assert check_rearrangement_lemma([0.7], [2.0], trials=500, seed=3).all_hold


def test_rearrangement_input_checks():
    with pytest.raises(InvalidArgumentError):
        check_rearrangement_lemma([2, 1], [3, 1], trials=1, seed=0)
    with pytest.raises(InvalidArgumentError):
        check_rearrangement_lemma([1, 2], [1, 3], trials=1, seed=0)
    with pytest.raises(InvalidArgumentError):
        check_rearrangement_lemma([1], [3, 1], trials=1, seed=0)


def test_oracle_uses_no_spectrum_of_h():
    # h that is not diagonal in any simple basis, run against the closed form
    H = QuadraticHamiltonian(np.array([[2.0, 0.3], [0.3, 0.7]]))
    V = np.array([[1.5, 0.4], [0.4, 2.0]])
    res = minimize_passive_energy_numerical(H.h, V, FAST)
    assert res.value == pytest.approx(gaussian_passive_energy(H, V), rel=1e-8)
