"""Bosonic Gaussian channels acting on moments, and their minimum output energy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, InvalidChannelError, UnsupportedInputError
from .states import GaussianState, QuadraticHamiltonian, State, energy
from .symplectic import random_symplectic, symplectic_eigenvalues, symplectic_form, williamson

TOL_SYM = 1e-9
X_COND_CAP = 1e12


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """Channel acting as ``m -> X m + x`` and ``V -> X V Xᵀ + Y``.

    Build instances with :func:`validate_channel` (or the named constructors),
    which enforce ``Y + iΩ - iXΩXᵀ ≥ 0``.
    """

    X: np.ndarray
    Y: np.ndarray
    x: np.ndarray

    @property
    def n(self) -> int:
        return self.X.shape[0] // 2


def cp_condition_min_eigenvalue(X, Y) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``Y + iΩ - iXΩXᵀ``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    omega = symplectic_form(X.shape[0] // 2)
    M = Y + 1j * (omega - X @ omega @ X.T)
    M = 0.5 * (M + M.conj().T)
    return float(np.linalg.eigvalsh(M)[0])


def validate_channel(X, Y, x=None, tol: float | None = None) -> GaussianChannel:
    """Construct a channel after checking dimensions, symmetry of Y and complete positivity.

    Args:
        X: 2n×2n real matrix.
        Y: 2n×2n real symmetric matrix.
        x: displacement vector (zeros if omitted).
        tol: PSD tolerance; defaults to ``1e-9 (1 + ‖Y‖_F)``.

    Raises:
        InvalidArgumentError: inconsistent shapes or non-symmetric Y.
        InvalidChannelError: the complete-positivity condition fails.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 2 or X.shape[0] == 0:
        raise InvalidArgumentError(f"X must be square with even dimension, got {X.shape}")
    if Y.shape != X.shape:
        raise InvalidArgumentError(f"Y must have shape {X.shape}, got {Y.shape}")
    x = np.zeros(X.shape[0]) if x is None else np.asarray(x, dtype=float)
    if x.shape != (X.shape[0],):
        raise InvalidArgumentError(f"x must have shape ({X.shape[0]},), got {x.shape}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y)) and np.all(np.isfinite(x))):
        raise InvalidArgumentError("channel has non-finite entries")
    if np.linalg.norm(Y - Y.T) > TOL_SYM * (1.0 + np.linalg.norm(Y)):
        raise InvalidArgumentError("Y is not symmetric")
    Y = 0.5 * (Y + Y.T)
    if tol is None:
        tol = 1e-9 * (1.0 + np.linalg.norm(Y))
    lam = cp_condition_min_eigenvalue(X, Y)
    if lam < -tol:
        raise InvalidChannelError(
            f"not a valid Gaussian channel: Y + iΩ - iXΩXᵀ has eigenvalue {lam:.6g} < 0", lam
        )
    return GaussianChannel(_frozen(X), _frozen(Y), _frozen(x))


def identity_channel(n: int) -> GaussianChannel:
    return validate_channel(np.eye(2 * n), np.zeros((2 * n, 2 * n)))


def attenuator(n: int, eta: float) -> GaussianChannel:
    """Pure-loss channel of transmissivity ``eta``: X = √η I, Y = (1 - η) I."""
    if not 0 <= eta <= 1:
        raise InvalidArgumentError(f"transmissivity must lie in [0, 1], got {eta}")
    return validate_channel(np.sqrt(eta) * np.eye(2 * n), (1 - eta) * np.eye(2 * n))


def amplifier(n: int, gain: float) -> GaussianChannel:
    """Quantum-limited amplifier: X = √G I, Y = (G - 1) I."""
    if gain < 1:
        raise InvalidArgumentError(f"gain must be at least 1, got {gain}")
    return validate_channel(np.sqrt(gain) * np.eye(2 * n), (gain - 1) * np.eye(2 * n))


def additive_noise(n: int, sigma: float) -> GaussianChannel:
    """Classical additive Gaussian noise: X = I, Y = σ I."""
    if sigma < 0:
        raise InvalidArgumentError(f"noise variance must be nonnegative, got {sigma}")
    return validate_channel(np.eye(2 * n), sigma * np.eye(2 * n))


def compose(second: GaussianChannel, first: GaussianChannel) -> GaussianChannel:
    """The channel ``second ∘ first``."""
    X = second.X @ first.X
    Y = second.X @ first.Y @ second.X.T + second.Y
    return validate_channel(X, 0.5 * (Y + Y.T), second.X @ first.x + second.x)


def apply(channel: GaussianChannel, state: State) -> GaussianState:
    """Output moments ``(X m + x, X V Xᵀ + Y)`` as a Gaussian state."""
    if channel.n != state.n:
        raise InvalidArgumentError(f"mode mismatch: channel has {channel.n}, state has {state.n}")
    V = channel.X @ state.V @ channel.X.T + channel.Y
    return GaussianState(channel.X @ state.m + channel.x, 0.5 * (V + V.T))


def _pulled_back_hamiltonian(channel: GaussianChannel, H: QuadraticHamiltonian) -> np.ndarray:
    if channel.n != H.n:
        raise InvalidArgumentError(f"mode mismatch: channel has {channel.n}, Hamiltonian has {H.n}")
    sv = np.linalg.svd(channel.X, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > X_COND_CAP:
        raise UnsupportedInputError(
            f"X must be invertible (smallest singular value {sv[-1]:.3e}, largest {sv[0]:.3e})"
        )
    M = channel.X.T @ H.h @ channel.X
    return 0.5 * (M + M.T)


def min_output_energy(channel: GaussianChannel, H: QuadraticHamiltonian) -> float:
    """``½ Σ d_i(Xᵀ h X) + ¼ Tr[h Y]``, the least output energy over all inputs."""
    M = _pulled_back_hamiltonian(channel, H)
    return 0.5 * float(np.sum(symplectic_eigenvalues(M))) + 0.25 * float(np.trace(H.h @ channel.Y))


def optimal_input_state(channel: GaussianChannel, H: QuadraticHamiltonian) -> GaussianState:
    """Pure Gaussian input attaining :func:`min_output_energy`.

    ``m = X⁻¹ (r - x)`` and ``V = S^{-T} S^{-1}`` where ``Xᵀ h X = S D Sᵀ``.
    """
    M = _pulled_back_hamiltonian(channel, H)
    S_inv = np.linalg.inv(williamson(M).s)
    V = S_inv.T @ S_inv
    m = np.linalg.solve(channel.X, H.r - channel.x)
    return GaussianState(m, 0.5 * (V + V.T))


def output_energy(channel: GaussianChannel, H: QuadraticHamiltonian, state: State) -> float:
    return energy(H, apply(channel, state))


def random_channel(n: int, seed: int, noise: float = 0.5, scale: float = 0.5) -> GaussianChannel:
    """Random valid channel with invertible X.

    ``X = c S`` with S a random symplectic matrix and ``c`` a random gain; Y is
    the minimal isotropic noise ``‖Ω - XΩXᵀ‖_2 I`` plus a random PSD excess.
    """
    rng = np.random.default_rng(seed)
    X = rng.uniform(0.5, 1.5) * random_symplectic(n, int(rng.integers(2**31)), scale)
    X = X + 0.1 * rng.normal(size=X.shape)
    omega = symplectic_form(n)
    floor = np.linalg.norm(omega - X @ omega @ X.T, 2)
    G = rng.normal(size=(2 * n, 2 * n))
    Y = floor * np.eye(2 * n) + noise * G @ G.T / (2 * n)
    return validate_channel(X, Y, rng.normal(size=2 * n))
