import math

import numpy as np
import pytest

from gaussian_ergotropy.ergotropy import totb_lower_bound_check
from gaussian_ergotropy.errors import InvalidArgumentError, TruncationError, UnsupportedInputError
from gaussian_ergotropy.oracle import fock
from gaussian_ergotropy.states import GaussianState, QuadraticHamiltonian, gaussian_entropy, thermal_state

H0 = QuadraticHamiltonian.standard(1)


@pytest.mark.parametrize("cutoff", [4, 8, 32])
def test_quadrature_matrix_elements(cutoff):
    ops = fock.build_fock_operators(cutoff)
    x2, p2, _ = ops.second_moments()
    assert x2[0, 0] == pytest.approx(0.5)
    assert x2[1, 1] == pytest.approx(1.5)
    assert p2[1, 1] == pytest.approx(1.5)


def test_commutator_away_from_edge():
    ops = fock.build_fock_operators(16)
    comm = ops.x_op @ ops.p_op - ops.p_op @ ops.x_op
    block = comm[:-1, :-1]
    assert np.max(np.abs(block - 1j * np.eye(15))) <= 1e-12


def test_operator_guards():
    with pytest.raises(UnsupportedInputError):
        fock.build_fock_operators(8, n_modes=2)
    with pytest.raises(InvalidArgumentError):
        fock.build_fock_operators(2)
    ops = fock.build_fock_operators(8)
    with pytest.raises(UnsupportedInputError):
        ops.quadratic(np.eye(4))


def test_moments_of_number_states():
    ops = fock.build_fock_operators(8)
    vac = fock.fock_moments_and_entropy(fock.fock_state(0, 8), ops)
    assert np.allclose(vac.m, 0) and np.allclose(vac.V, np.eye(2)) and vac.entropy == 0
    one = fock.fock_moments_and_entropy(fock.fock_state(1, 8), ops)
    assert np.allclose(one.V, 3 * np.eye(2)) and one.entropy == 0


def test_thermal_moments_and_entropy():
    ops = fock.build_fock_operators(64)
    mom = fock.fock_moments_and_entropy(fock.thermal_density(1.0, 64), ops)
    assert np.allclose(mom.V, 3 * np.eye(2), atol=1e-6)
    assert mom.entropy == pytest.approx(2 * math.log(2), abs=1e-6)
    assert mom.entropy == pytest.approx(gaussian_entropy(mom.V), abs=1e-6)


def test_standard_ergotropy_examples():
    ops = fock.build_fock_operators(32)
    Hm = ops.hamiltonian(H0)
    assert fock.fock_standard_ergotropy(fock.fock_state(0, 32), Hm) == pytest.approx(0, abs=1e-12)
    assert fock.fock_standard_ergotropy(fock.fock_state(1, 32), Hm) == pytest.approx(1.0)
    assert abs(fock.fock_standard_ergotropy(fock.thermal_density(0.5, 32), Hm)) <= 1e-9


def test_non_gaussian_work_potential_fock_one():
    ops = fock.build_fock_operators(32)
    delta = fock.non_gaussian_work_potential(fock.fock_state(1, 32), ops.hamiltonian(H0), H0, ops)
    assert delta == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize(
    "rho",
    [
        fock.thermal_density(0.5, 48),
        fock.coherent_density(0.8, 48),
        fock.gaussian_state_fock(GaussianState(np.array([0.3, -0.2]), np.diag([1.8, 0.9])), 48),
    ],
    ids=["thermal", "coherent", "squeezed"],
)
def test_gaussian_states_have_no_nongaussian_work(rho):
    ops = fock.build_fock_operators(48)
    delta = fock.non_gaussian_work_potential(rho, ops.hamiltonian(H0), H0, ops)
    assert delta <= 1e-6


def test_gaussian_state_fock_matches_moments():
    state = GaussianState(np.array([0.5, 0.1]), np.array([[2.0, 0.3], [0.3, 1.4]]))
    ops = fock.build_fock_operators(48)
    mom = fock.fock_moments_and_entropy(fock.gaussian_state_fock(state, 48), ops)
    assert np.allclose(mom.m, state.m, atol=1e-8)
    assert np.allclose(mom.V, state.V, atol=1e-7)
    assert mom.entropy == pytest.approx(state.entropy, abs=1e-7)


def test_gibbs_state_matches_gaussian_thermal_state():
    H = QuadraticHamiltonian(np.array([[1.3, 0.2], [0.2, 0.8]]), np.array([0.2, -0.1]))
    ops = fock.build_fock_operators(48)
    mom = fock.fock_moments_and_entropy(fock.gibbs_state(ops.hamiltonian(H), 1.0), ops)
    tau = thermal_state(H, 1.0)
    assert np.allclose(mom.V, tau.V, atol=1e-7) and np.allclose(mom.m, tau.m, atol=1e-8)


def test_relative_entropy_zero_for_gibbs():
    ops = fock.build_fock_operators(32)
    Hm = ops.hamiltonian(H0)
    assert fock.relative_entropy_to_gibbs(fock.gibbs_state(Hm, 0.8), Hm, 0.8) == pytest.approx(0, abs=1e-10)


def test_truncation_error():
    ops = fock.build_fock_operators(16)
    with pytest.raises(TruncationError):
        fock.fock_moments_and_entropy(fock.coherent_density(4.0, 16), ops)


def test_density_checks():
    with pytest.raises(InvalidArgumentError):
        fock.check_density_matrix(np.diag([0.5, 0.4]))
    with pytest.raises(InvalidArgumentError):
        fock.check_density_matrix(np.diag([1.2, -0.2]))


def test_entropic_identity_fock_one():
    ops = fock.build_fock_operators(64)
    rep = fock.entropic_bound_terms(fock.fock_state(1, 64), H0, 1.0, ops)
    assert abs(rep.identity_residual) <= 1e-5
    assert rep.lower_margin >= -1e-6 and rep.upper_margin >= -1e-6
    assert rep.mu == pytest.approx(2 * math.log(2), abs=1e-6)


@pytest.mark.parametrize("nbar", [0.5, 1.0])
def test_total_bound_saturates_for_thermal_input(nbar):
    ops = fock.build_fock_operators(64)
    moments = fock.fock_moments_and_entropy(fock.thermal_density(nbar, 64), ops)
    chk = totb_lower_bound_check(H0, moments)
    assert chk.holds
    assert abs(chk.lhs) <= 1e-9 and abs(chk.rhs) <= 1e-9
