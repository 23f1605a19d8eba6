import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussian_ergotropy.ergotropy import (
    delta_tot,
    entropic_nongaussianity_mu,
    gaussian_ergotropy,
    gaussian_passive_energy,
    gaussian_passive_state,
    n_copy_gaussian_ergotropy,
    optimal_gaussian_unitary,
    total_ergotropy,
    totb_lower_bound_check,
)
from gaussian_ergotropy.errors import InvalidArgumentError
from gaussian_ergotropy.states import (
    GaussianState,
    QuadraticHamiltonian,
    StateMoments,
    energy,
    random_gaussian_state,
    random_hamiltonian,
    thermal_state,
)
from gaussian_ergotropy.symplectic import is_symplectic, random_symplectic, symplectic_eigenvalues


def _with_entropy(state, fraction):
    return StateMoments(state.m, state.V, fraction * state.entropy)


def test_passive_energy_standard_hamiltonian():
    V = random_gaussian_state(3, 2).V
    H = QuadraticHamiltonian.standard(3)
    assert gaussian_passive_energy(H, V) == pytest.approx(0.5 * symplectic_eigenvalues(V).sum())
    assert gaussian_passive_energy(QuadraticHamiltonian.standard(1), np.eye(2)) == pytest.approx(0.5)


def test_passive_energy_pairs_opposite_orders():
    H = QuadraticHamiltonian(np.diag([1.0, 1.0, 2.0, 2.0]))
    # largest V eigenvalue sits on the stiffer mode
    V = np.diag([1.0, 1.0, 3.0, 3.0])
    assert gaussian_passive_energy(H, V) == pytest.approx(2.5)
    assert energy(H, GaussianState(np.zeros(4), V)) == pytest.approx(3.5)


def test_squeezed_example(h0, squeezed):
    rep = gaussian_ergotropy(h0, squeezed)
    assert rep.energy == pytest.approx(1.0625)
    assert rep.ergotropy == pytest.approx(0.5625, abs=1e-14)
    out = rep.unitary.apply(squeezed)
    assert np.allclose(out.V, np.eye(2), atol=1e-12)
    assert energy(h0, out) == pytest.approx(0.5)


def test_coherent_state(h0):
    alpha = 0.9
    rep = gaussian_ergotropy(h0, GaussianState(np.array([alpha, 0.0]), np.eye(2)))
    assert rep.ergotropy == pytest.approx(alpha**2 / 2, abs=1e-14)
    passive = gaussian_passive_state(h0, GaussianState(np.array([alpha, 0.0]), np.eye(2)))
    assert np.allclose(passive.m, 0) and np.allclose(passive.V, np.eye(2))


def test_vacuum_is_fixed(h0):
    vac = GaussianState.vacuum(1)
    out = optimal_gaussian_unitary(h0, vac).apply(vac)
    assert energy(h0, out) == pytest.approx(0.5)


@pytest.mark.parametrize("beta", [0.1, 1.0, 10.0])
def test_thermal_states_are_passive(beta):
    H = random_hamiltonian(3, 7)
    tau = thermal_state(H, beta)
    assert abs(gaussian_ergotropy(H, tau).ergotropy) <= 1e-9
    passive = gaussian_passive_state(H, tau)
    assert energy(H, passive) == pytest.approx(energy(H, tau), abs=1e-10)


def test_passive_fixed_point():
    H = random_hamiltonian(2, 4)
    state = random_gaussian_state(2, 5)
    passive = gaussian_passive_state(H, state)
    again = gaussian_passive_state(H, passive)
    assert energy(H, again) == pytest.approx(energy(H, passive), rel=1e-10)
    assert gaussian_ergotropy(H, passive).ergotropy <= 1e-9


def test_fock_one_passive_state(h0, fock_one_moments):
    passive = gaussian_passive_state(h0, fock_one_moments)
    assert np.allclose(passive.V, 3 * np.eye(2)) and np.allclose(passive.m, 0)
    assert energy(h0, passive) == pytest.approx(1.5)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 4), seed=st.integers(0, 10_000))
def test_optimal_unitary_reaches_passive_energy(n, seed):
    H = random_hamiltonian(n, seed)
    state = random_gaussian_state(n, seed + 1)
    rep = gaussian_ergotropy(H, state)
    U = rep.unitary
    assert is_symplectic(U.s, tol=1e-8 * (1 + np.linalg.norm(U.s) ** 2))
    achieved = energy(H, U.apply(state))
    assert achieved == pytest.approx(rep.passive_energy, rel=1e-9, abs=1e-9)
    assert 0 <= rep.ergotropy <= rep.energy


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 3), seed=st.integers(0, 10_000))
def test_no_random_unitary_beats_passive_energy(n, seed):
    H = random_hamiltonian(n, seed)
    V = random_gaussian_state(n, seed + 1).V
    S = random_symplectic(n, seed + 2, 0.8)
    assert 0.25 * np.trace(H.h @ S @ V @ S.T) >= gaussian_passive_energy(H, V) - 1e-9


def test_n_copy(h0, squeezed):
    assert n_copy_gaussian_ergotropy(h0, squeezed, 1) == pytest.approx(0.5625)
    assert n_copy_gaussian_ergotropy(h0, squeezed, 3) == pytest.approx(1.6875)
    H = random_hamiltonian(2, 1)
    assert abs(n_copy_gaussian_ergotropy(H, thermal_state(H, 0.7), 4)) <= 1e-9
    with pytest.raises(InvalidArgumentError):
        n_copy_gaussian_ergotropy(h0, squeezed, 0)


def test_total_ergotropy_examples(h0, fock_one_moments):
    H = random_hamiltonian(2, 9)
    assert abs(total_ergotropy(H, thermal_state(H, 1.3))) <= 1e-9
    assert total_ergotropy(h0, fock_one_moments) == pytest.approx(1.0)


def test_total_ergotropy_needs_entropy(h0):
    with pytest.raises(InvalidArgumentError):
        total_ergotropy(h0, StateMoments(np.zeros(2), np.eye(2)))


def test_delta_tot_examples(h0, fock_one_moments):
    H = random_hamiltonian(2, 10)
    assert abs(delta_tot(H, thermal_state(H, 0.4))) <= 1e-9
    assert delta_tot(h0, fock_one_moments) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 3), seed=st.integers(0, 10_000), frac=st.floats(0, 1))
def test_delta_tot_two_paths(n, seed, frac):
    H = random_hamiltonian(n, seed)
    state = _with_entropy(random_gaussian_state(n, seed + 1), frac)
    direct = delta_tot(H, state)
    diff = total_ergotropy(H, state) - gaussian_ergotropy(H, state).ergotropy
    assert direct == pytest.approx(diff, abs=1e-8)
    assert direct >= 0


def test_mu_examples(fock_one_moments):
    assert entropic_nongaussianity_mu(_with_entropy(random_gaussian_state(2, 3), 1.0)) == pytest.approx(0, abs=1e-12)
    assert entropic_nongaussianity_mu(fock_one_moments) == pytest.approx(2 * math.log(2))


def test_mu_invariant_under_gaussian_unitaries():
    state = _with_entropy(random_gaussian_state(2, 8), 0.4)
    S = random_symplectic(2, 3, 0.7)
    moved = StateMoments(S @ state.m + 1.0, S @ state.V @ S.T, state.entropy)
    assert entropic_nongaussianity_mu(moved) == pytest.approx(entropic_nongaussianity_mu(state), abs=1e-9)


def test_totb_examples(h0, fock_one_moments):
    H = random_hamiltonian(1, 2)
    thermal = thermal_state(H, 0.9)
    chk = totb_lower_bound_check(H, thermal)
    assert chk.holds and abs(chk.lhs) <= 1e-9 and abs(chk.rhs) <= 1e-9
    chk = totb_lower_bound_check(h0, fock_one_moments)
    assert chk.holds and chk.lhs == pytest.approx(1.0) and chk.rhs == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 3), seed=st.integers(0, 10_000))
def test_totb_on_gaussian_states(n, seed):
    H = random_hamiltonian(n, seed)
    assert totb_lower_bound_check(H, random_gaussian_state(n, seed + 1)).holds


def test_mode_mismatch(h0):
    with pytest.raises(InvalidArgumentError):
        gaussian_ergotropy(h0, GaussianState.vacuum(2))
