"""Single-mode truncated Fock-space oracle.

Dense density matrices in the number basis ``|0>, ..., |N-1>`` give an
independent route to energies, moments, entropies, the standard ergotropy and
the relative entropies that appear in the entropic work bounds.

Quadratic operators are assembled in a padded space and then cut back to N×N,
so their matrix elements are exact; only states are truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..ergotropy import gaussian_passive_energy, gaussian_passive_state
from ..errors import InvalidArgumentError, NumericalFailureError, TruncationError, UnsupportedInputError
from ..states import GaussianState, QuadraticHamiltonian, StateMoments, gaussianification
from ..symplectic import williamson

TAIL_TOL = 1e-8
DENSITY_TOL = 1e-10
_PURE_XI = 60.0


def _ladder(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def _quadratures(dim: int) -> tuple[np.ndarray, np.ndarray]:
    a = _ladder(dim)
    x = (a + a.T) / math.sqrt(2)
    p = (a - a.T) / (1j * math.sqrt(2))
    return x.astype(complex), p


@dataclass(frozen=True, eq=False)
class FockOperatorSet:
    """Quadrature operators of one mode truncated at ``cutoff`` levels."""

    cutoff: int
    a: np.ndarray
    x_op: np.ndarray
    p_op: np.ndarray

    def quadratic(self, h, r=None) -> np.ndarray:
        """Matrix of ``½ (R - r)ᵀ h (R - r)``, exact on the retained levels."""
        h = np.asarray(h, dtype=float)
        r = np.zeros(2) if r is None else np.asarray(r, dtype=float)
        if h.shape != (2, 2):
            raise UnsupportedInputError("the Fock oracle handles a single mode only")
        return _quadratic_matrix(h, r, self.cutoff, self.cutoff + 2)

    def hamiltonian(self, H: QuadraticHamiltonian) -> np.ndarray:
        return self.quadratic(H.h, H.r)

    def second_moments(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Exact truncations of ``x²``, ``p²`` and ``xp + px``."""
        x, p = _quadratures(self.cutoff + 2)
        N = self.cutoff
        return (x @ x)[:N, :N], (p @ p)[:N, :N], (x @ p + p @ x)[:N, :N]

    def truncation_tail(self, rho) -> float:
        """Population in the top ``max(2, N // 16)`` retained levels."""
        width = max(2, self.cutoff // 16)
        return float(np.real(np.trace(np.asarray(rho)[-width:, -width:])))


def _quadratic_matrix(h, r, keep: int, dim: int) -> np.ndarray:
    x, p = _quadratures(dim)
    eye = np.eye(dim)
    R = [x - r[0] * eye, p - r[1] * eye]
    op = sum(0.5 * h[i, j] * R[i] @ R[j] for i in range(2) for j in range(2))
    op = op[:keep, :keep]
    return 0.5 * (op + op.conj().T)


def build_fock_operators(cutoff: int, n_modes: int = 1) -> FockOperatorSet:
    """Ladder-operator construction of ``x = (a + a†)/√2`` and ``p = (a - a†)/(i√2)``."""
    if n_modes != 1:
        raise UnsupportedInputError("the Fock oracle handles a single mode only")
    if int(cutoff) != cutoff or cutoff < 4:
        raise InvalidArgumentError(f"cutoff must be an integer >= 4, got {cutoff!r}")
    cutoff = int(cutoff)
    x, p = _quadratures(cutoff)
    return FockOperatorSet(cutoff, _ladder(cutoff), x, p)


def check_density_matrix(rho, ops: FockOperatorSet | None = None, tail_tol: float = TAIL_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidArgumentError(f"density matrix must be square, got {rho.shape}")
    if ops is not None and rho.shape[0] != ops.cutoff:
        raise InvalidArgumentError(f"density matrix has dimension {rho.shape[0]}, cutoff is {ops.cutoff}")
    if np.linalg.norm(rho - rho.conj().T) > DENSITY_TOL:
        raise InvalidArgumentError("density matrix is not Hermitian")
    rho = 0.5 * (rho + rho.conj().T)
    if abs(np.trace(rho).real - 1.0) > DENSITY_TOL:
        raise InvalidArgumentError(f"density matrix has trace {np.trace(rho).real:.12g}")
    if np.linalg.eigvalsh(rho)[0] < -DENSITY_TOL:
        raise InvalidArgumentError("density matrix is not positive semidefinite")
    if ops is not None:
        tail = ops.truncation_tail(rho)
        if tail > tail_tol:
            raise TruncationError(f"population {tail:.3e} near the cutoff exceeds {tail_tol:.1e}", residual=tail)
    return rho


def von_neumann_entropy(rho) -> float:
    lam = np.clip(np.linalg.eigvalsh(np.asarray(rho)), 0.0, None)
    lam = lam[lam > 0]
    return max(float(-np.sum(lam * np.log(lam))), 0.0)


def fock_moments_and_entropy(rho, ops: FockOperatorSet) -> StateMoments:
    """Moments (anticommutator convention, vacuum V = I) and entropy of a Fock density matrix."""
    rho = check_density_matrix(rho, ops)
    x2, p2, xp = ops.second_moments()
    ev = lambda A: float(np.real(np.trace(A @ rho)))  # noqa: E731
    m = np.array([ev(ops.x_op), ev(ops.p_op)])
    V = np.array(
        [
            [2 * ev(x2) - 2 * m[0] ** 2, ev(xp) - 2 * m[0] * m[1]],
            [ev(xp) - 2 * m[0] * m[1], 2 * ev(p2) - 2 * m[1] ** 2],
        ]
    )
    return StateMoments(m, V, von_neumann_entropy(rho))


def fock_energy(rho, H_matrix) -> float:
    return float(np.real(np.trace(np.asarray(H_matrix) @ np.asarray(rho))))


def fock_passive_energy(rho, H_matrix) -> float:
    """``Σ λ_i↑(H) λ_i↓(ρ)``: least energy reachable by any unitary."""
    e_h = np.linalg.eigvalsh(H_matrix)
    lam = np.sort(np.linalg.eigvalsh(rho))[::-1]
    return float(np.dot(e_h, lam))


def fock_standard_ergotropy(rho, H_matrix) -> float:
    """``Tr[Hρ] - Σ λ_i↑(H) λ_i↓(ρ)``."""
    rho = check_density_matrix(rho)
    return fock_energy(rho, H_matrix) - fock_passive_energy(rho, H_matrix)


def fock_passive_state(rho, H_matrix) -> np.ndarray:
    """Place the eigenvalues of ρ, largest first, on the eigenvectors of H, lowest first."""
    _, U = np.linalg.eigh(H_matrix)
    lam = np.sort(np.linalg.eigvalsh(rho))[::-1]
    return (U * lam) @ U.conj().T


def gibbs_state(H_matrix, beta: float) -> np.ndarray:
    """Gibbs state of the truncated Hamiltonian, normalised after truncation."""
    e, U = np.linalg.eigh(H_matrix)
    if math.isinf(beta):
        w = np.zeros_like(e)
        w[0] = 1.0
    else:
        w = np.exp(-beta * (e - e[0]))
        w /= w.sum()
    return (U * w) @ U.conj().T


def relative_entropy_to_gibbs(rho, H_matrix, beta: float) -> float:
    """``D(ρ ‖ τ_β)`` using ``ln τ_β = -β (H - E0) - ln Z'`` on the truncated space."""
    e = np.linalg.eigvalsh(H_matrix)
    shifted = -beta * (e - e[0])
    log_z = float(np.log(np.sum(np.exp(shifted))))
    mean = fock_energy(rho, H_matrix) - e[0]
    return -von_neumann_entropy(rho) + beta * mean + log_z


def gaussian_state_fock(state: GaussianState, cutoff: int, padding: int | None = None) -> np.ndarray:
    """Density matrix of a single-mode Gaussian state, truncated to ``cutoff`` levels.

    The state is the Gibbs state at unit temperature of ``½ (R - m)ᵀ G (R - m)``
    with ``G = W^{-T} diag(ξ) W^{-1}``, ``V = W diag(ν) Wᵀ``, ``coth(ξ/2) = ν``.
    Pure modes use a large ξ, which projects onto the ground state.
    """
    if state.n != 1:
        raise UnsupportedInputError("the Fock oracle handles a single mode only")
    dim = padding if padding is not None else max(2 * cutoff, cutoff + 64)
    wil = williamson(state.V)
    nu = float(wil.d[0])
    xi = _PURE_XI if nu - 1.0 < 1e-12 else min(_PURE_XI, math.log((nu + 1.0) / (nu - 1.0)))
    W_inv = np.linalg.inv(wil.s)
    G = xi * W_inv.T @ W_inv
    op = _quadratic_matrix(G, state.m, dim, dim + 2)
    e, U = np.linalg.eigh(op)
    w = np.exp(-(e - e[0]))
    rho = (U * (w / w.sum())) @ U.conj().T
    rho = rho[:cutoff, :cutoff]
    return rho / np.trace(rho).real


def fock_state(k: int, cutoff: int) -> np.ndarray:
    rho = np.zeros((cutoff, cutoff), dtype=complex)
    rho[k, k] = 1.0
    return rho


def thermal_density(nbar: float, cutoff: int) -> np.ndarray:
    """Geometric number distribution, renormalised after truncation."""
    k = np.arange(cutoff)
    pops = (nbar / (1.0 + nbar)) ** k / (1.0 + nbar)
    return np.diag(pops / pops.sum()).astype(complex)


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    k = np.arange(cutoff)
    mag = np.exp(-0.5 * abs(alpha) ** 2 + k * np.log(abs(alpha) + 1e-300) - 0.5 * gammaln(k + 1))
    return mag * np.exp(1j * np.angle(alpha) * k)


def cat_density(alpha: complex, cutoff: int, parity: int = 1) -> np.ndarray:
    """``|α> + parity |-α>``, normalised on the retained levels."""
    c = coherent_amplitudes(alpha, cutoff) + parity * coherent_amplitudes(-alpha, cutoff)
    c /= np.linalg.norm(c)
    return np.outer(c, c.conj())


def coherent_density(alpha: complex, cutoff: int) -> np.ndarray:
    c = coherent_amplitudes(alpha, cutoff)
    c /= np.linalg.norm(c)
    return np.outer(c, c.conj())


def non_gaussian_work_potential(rho, H_matrix, H: QuadraticHamiltonian, ops: FockOperatorSet) -> float:
    """``Δ = E(ρ_G↓) - E(ρ↓)``: closed-form Gaussian-passive energy minus Fock passive energy."""
    moments = fock_moments_and_entropy(rho, ops)
    delta = gaussian_passive_energy(H, moments.V) - fock_passive_energy(rho, H_matrix)
    if delta < -1e-8:
        raise NumericalFailureError(f"non-Gaussian work potential is negative: {delta:.3e}", residual=delta)
    return max(delta, 0.0)


@dataclass(frozen=True)
class EntropicBoundReport:
    """Terms of the entropic work relations at inverse temperature ``beta``.

    ``identity_residual`` is ``βΔ - (μ + D(δ_G↓‖τ) - D(ρ↓‖τ))``; the two margins
    are the slack in ``μ - D(ρ↓‖τ) ≤ βΔ ≤ S(δ(ρ)) - S(δ(ρ↓)) + D(δ_G↓‖τ)``.
    """

    beta: float
    delta: float
    mu: float
    d_gaussian_passive: float
    d_passive: float
    s_gaussianified: float
    s_gaussianified_passive: float
    identity_residual: float
    lower_margin: float
    upper_margin: float


def entropic_bound_terms(rho, H: QuadraticHamiltonian, beta: float, ops: FockOperatorSet) -> EntropicBoundReport:
    """Evaluate every term from dense truncated matrices."""
    if not beta > 0 or math.isinf(beta):
        raise InvalidArgumentError(f"beta must be positive and finite, got {beta}")
    H_matrix = ops.hamiltonian(H)
    moments = fock_moments_and_entropy(rho, ops)
    delta = non_gaussian_work_potential(rho, H_matrix, H, ops)

    gauss = gaussianification(moments)
    delta_rho = gaussian_state_fock(gauss, ops.cutoff)
    s_gauss = von_neumann_entropy(delta_rho)
    mu = s_gauss - moments.entropy

    gauss_passive = gaussian_state_fock(gaussian_passive_state(H, gauss), ops.cutoff)
    d_gp = relative_entropy_to_gibbs(gauss_passive, H_matrix, beta)

    passive = fock_passive_state(rho, H_matrix)
    d_p = relative_entropy_to_gibbs(passive, H_matrix, beta)
    passive_moments = fock_moments_and_entropy(passive, ops)
    s_gauss_passive = von_neumann_entropy(gaussian_state_fock(gaussianification(passive_moments), ops.cutoff))

    lhs = beta * delta
    return EntropicBoundReport(
        beta=beta,
        delta=delta,
        mu=mu,
        d_gaussian_passive=d_gp,
        d_passive=d_p,
        s_gaussianified=s_gauss,
        s_gaussianified_passive=s_gauss_passive,
        identity_residual=lhs - (mu + d_gp - d_p),
        lower_margin=lhs - (mu - d_p),
        upper_margin=(s_gauss - s_gauss_passive + d_gp) - lhs,
    )
