"""Gaussian ergotropy of quadratic Hamiltonians and related work quantities.

All quantities are computed from the state's moments (and entropy where
needed). The Gaussian-passive energy pairs the symplectic eigenvalues of ``h``
in ascending order with those of ``V`` in descending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericalFailureError
from .states import (
    GaussianState,
    QuadraticHamiltonian,
    State,
    StateMoments,
    coth_half,
    energy,
    gaussian_entropy,
    intrinsic_beta,
    tensor,
    thermal_state,
)
from .symplectic import direct_sum, symplectic_eigenvalues, williamson

CLAMP_TOL = 1e-9


def _clamp_nonnegative(value: float, scale: float, what: str) -> float:
    tol = CLAMP_TOL * max(1.0, abs(scale))
    if value < -tol:
        raise NumericalFailureError(f"{what} is negative beyond tolerance: {value:.3e}", residual=value)
    return max(value, 0.0)


def _require_match(H: QuadraticHamiltonian, state: State) -> None:
    if H.n != state.n:
        raise InvalidArgumentError(f"mode mismatch: Hamiltonian has {H.n}, state has {state.n}")


@dataclass(frozen=True, eq=False)
class GaussianUnitaryDescriptor:
    """Gaussian unitary acting on moments as ``m -> s (m + pre) + post``, ``V -> s V sᵀ``."""

    s: np.ndarray
    pre_displacement: np.ndarray
    post_displacement: np.ndarray

    def apply(self, state: State) -> State:
        """Transform a state's moments; a StateMoments keeps its entropy."""
        m = self.s @ (state.m + self.pre_displacement) + self.post_displacement
        V = self.s @ state.V @ self.s.T
        V = 0.5 * (V + V.T)
        if isinstance(state, StateMoments):
            return StateMoments(m, V, state.entropy)
        return GaussianState(m, V)


@dataclass(frozen=True, eq=False)
class ErgotropyReport:
    energy: float
    passive_energy: float
    ergotropy: float
    d_h_ascending: np.ndarray
    d_V_descending: np.ndarray
    unitary: GaussianUnitaryDescriptor

    def to_dict(self) -> dict:
        return {
            "energy": self.energy,
            "passive_energy": self.passive_energy,
            "ergotropy": self.ergotropy,
            "d_h": self.d_h_ascending.tolist(),
            "d_V": self.d_V_descending.tolist(),
            "S": self.unitary.s.tolist(),
            "pre_displacement": self.unitary.pre_displacement.tolist(),
            "post_displacement": self.unitary.post_displacement.tolist(),
        }


def gaussian_passive_energy(H: QuadraticHamiltonian, V) -> float:
    """``½ Σ_j d_j↑(h) d_j↓(V)``: least energy reachable by Gaussian unitaries."""
    d_V = symplectic_eigenvalues(V)[::-1]
    if d_V.shape != H.spectrum.shape:
        raise InvalidArgumentError("mode mismatch between Hamiltonian and covariance matrix")
    return 0.5 * float(np.dot(H.spectrum, d_V))


def optimal_gaussian_unitary(H: QuadraticHamiltonian, state: State) -> GaussianUnitaryDescriptor:
    """The energy-minimising Gaussian unitary for ``state`` under ``H``.

    Displaces the state to zero mean, brings ``V`` to ``D↓(V)`` with ``S1``,
    applies ``S2`` with ``S2ᵀ h S2 = D↑(h)``, then displaces to ``r``.
    """
    _require_match(H, state)
    W_V = williamson(state.V, order="descending").s
    W_h = williamson(H.h, order="ascending").s
    S1 = np.linalg.inv(W_V)
    S2 = np.linalg.inv(W_h).T
    return GaussianUnitaryDescriptor(S2 @ S1, -np.array(state.m), np.array(H.r))


def gaussian_ergotropy(H: QuadraticHamiltonian, state: State) -> ErgotropyReport:
    """Closed-form Gaussian ergotropy with the optimal unitary attached."""
    _require_match(H, state)
    e = energy(H, state)
    d_V = state.symplectic_spectrum[::-1].copy()
    passive = 0.5 * float(np.dot(H.spectrum, d_V))
    erg = _clamp_nonnegative(e - passive, e, "Gaussian ergotropy")
    return ErgotropyReport(
        energy=e,
        passive_energy=passive,
        ergotropy=erg,
        d_h_ascending=H.spectrum.copy(),
        d_V_descending=d_V,
        unitary=optimal_gaussian_unitary(H, state),
    )


def gaussian_passive_state(H: QuadraticHamiltonian, state: State) -> GaussianState:
    """Gaussian state with the moments of the Gaussian-passive state of ``state``."""
    out = optimal_gaussian_unitary(H, state).apply(state)
    return GaussianState(out.m, out.V)


def copies_hamiltonian(H: QuadraticHamiltonian, n_copies: int) -> QuadraticHamiltonian:
    """Sum of ``n_copies`` non-interacting replicas of ``H``."""
    if int(n_copies) != n_copies or n_copies < 1:
        raise InvalidArgumentError(f"n_copies must be a positive integer, got {n_copies!r}")
    return QuadraticHamiltonian(direct_sum(*[H.h] * n_copies), np.tile(H.r, n_copies))


def n_copy_gaussian_ergotropy(H: QuadraticHamiltonian, state: State, n_copies: int) -> float:
    """Gaussian ergotropy of ``state^{⊗n}`` under the summed Hamiltonian, evaluated directly."""
    H_n = copies_hamiltonian(H, n_copies)
    return gaussian_ergotropy(H_n, tensor([state] * n_copies)).ergotropy


def _entropy_of(state: State) -> float:
    s = state.entropy
    if s is None:
        raise InvalidArgumentError("this quantity needs the state's entropy, which was not supplied")
    return s


def total_ergotropy(H: QuadraticHamiltonian, state: State) -> float:
    """``E(ρ) - E(τ_β*)`` with ``β*`` the intrinsic inverse temperature of the state."""
    _require_match(H, state)
    beta = intrinsic_beta(H, _entropy_of(state))
    e = energy(H, state)
    if math.isinf(beta):
        e_ref = H.ground_energy
    else:
        e_ref = energy(H, thermal_state(H, beta))
    return _clamp_nonnegative(e - e_ref, e, "total ergotropy")


def delta_tot(H: QuadraticHamiltonian, state: State) -> float:
    """Total non-Gaussian work potential ``½ Σ d_j↑(h) (d_j↓(V) - coth(β* d_j↑(h) / 2))``."""
    _require_match(H, state)
    beta = intrinsic_beta(H, _entropy_of(state))
    d_h = H.spectrum
    d_V = state.symplectic_spectrum[::-1]
    value = 0.5 * float(np.sum(d_h * (d_V - coth_half(beta, d_h))))
    return _clamp_nonnegative(value, float(np.dot(d_h, d_V)), "total non-Gaussian work potential")


def entropic_nongaussianity_mu(state: State) -> float:
    """``S(δ(ρ)) - S(ρ)``: entropy deficit with respect to the Gaussianification."""
    s = _entropy_of(state)
    s_gauss = gaussian_entropy(state.V)
    gap = s_gauss - s
    if gap < -1e-9:
        raise InvalidArgumentError(
            f"entropy {s:.12g} exceeds the Gaussian entropy {s_gauss:.12g} of the same moments"
        )
    return max(gap, 0.0)


@dataclass(frozen=True)
class TotalErgotropyBound:
    lhs: float
    rhs: float
    holds: bool


def totb_lower_bound_check(H: QuadraticHamiltonian, state: State, tol: float = 1e-9) -> TotalErgotropyBound:
    """Check ``E_tot ≥ μ / β* + E_G`` (μ/β* is taken as 0 for a pure state)."""
    lhs = total_ergotropy(H, state)
    beta = intrinsic_beta(H, _entropy_of(state))
    mu = entropic_nongaussianity_mu(state)
    mu_term = 0.0 if math.isinf(beta) else mu / beta
    rhs = mu_term + gaussian_ergotropy(H, state).ergotropy
    return TotalErgotropyBound(lhs, rhs, lhs >= rhs - tol * max(1.0, abs(lhs)))
