"""Moment-level description of bosonic states and quadratic Hamiltonians.

Conventions: ħ = 1, quadratures ordered xpxp, covariance matrix
``V = Tr[{R - m, (R - m)ᵀ} ρ]`` so that the vacuum has ``V = I``.
Entropies are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import InvalidArgumentError, NumericalFailureError
from .symplectic import (
    check_positive_definite,
    direct_sum,
    random_symplectic,
    symplectic_eigenvalues,
    williamson,
)

TOL_UNC = 1e-8
TOL_ENTROPY = 1e-10
TOL_MAX_ENTROPY = 1e-9
BISECTION_MAX_ITER = 200

# +infinity stands for the pure-state limit of the intrinsic inverse temperature
PURE_STATE_BETA = math.inf


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _check_vector(v: np.ndarray, dim: int, name: str) -> None:
    if v.shape != (dim,):
        raise InvalidArgumentError(f"{name} must have shape ({dim},), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError(f"{name} has non-finite entries")


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """``H = ½ (R - r)ᵀ h (R - r)`` with ``h`` symmetric strictly positive."""

    h: np.ndarray
    r: np.ndarray | None = None

    def __post_init__(self):
        h = check_positive_definite(self.h, "h")
        r = np.zeros(h.shape[0]) if self.r is None else np.asarray(self.r, dtype=float)
        _check_vector(r, h.shape[0], "r")
        object.__setattr__(self, "h", _frozen(h))
        object.__setattr__(self, "r", _frozen(r))

    @classmethod
    def standard(cls, n: int) -> "QuadraticHamiltonian":
        """The free Hamiltonian ``H0 = ½ RᵀR`` (h = I, r = 0)."""
        return cls(np.eye(2 * n))

    @property
    def n(self) -> int:
        return self.h.shape[0] // 2

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Symplectic eigenvalues of ``h``, ascending."""
        return symplectic_eigenvalues(self.h)

    @property
    def ground_energy(self) -> float:
        return 0.5 * float(np.sum(self.spectrum))


class _Moments:
    m: np.ndarray
    V: np.ndarray

    def _validate_moments(self):
        V = np.asarray(self.V, dtype=float)
        try:
            V = check_positive_definite(V, "V")
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"invalid covariance matrix: {exc}") from None
        m = np.asarray(self.m, dtype=float)
        _check_vector(m, V.shape[0], "m")
        nu = symplectic_eigenvalues(V)
        if nu[0] < 1.0 - TOL_UNC:
            raise InvalidArgumentError(
                f"covariance matrix violates the uncertainty relation: "
                f"smallest symplectic eigenvalue {nu[0]:.12g} < 1"
            )
        object.__setattr__(self, "V", _frozen(V))
        object.__setattr__(self, "m", _frozen(m))
        object.__setattr__(self, "_nu", _frozen(nu))

    @property
    def n(self) -> int:
        return self.V.shape[0] // 2

    @property
    def symplectic_spectrum(self) -> np.ndarray:
        """Symplectic eigenvalues of ``V``, ascending."""
        return self._nu


@dataclass(frozen=True, eq=False)
class GaussianState(_Moments):
    """A Gaussian state, fully determined by its first moment and covariance."""

    m: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        self._validate_moments()

    @classmethod
    def vacuum(cls, n: int) -> "GaussianState":
        return cls(np.zeros(2 * n), np.eye(2 * n))

    @property
    def entropy(self) -> float:
        return _entropy_from_spectrum(self._nu)


@dataclass(frozen=True, eq=False)
class StateMoments(_Moments):
    """First and second moments of an arbitrary state, plus its entropy if known.

    A supplied entropy may not exceed the entropy of the Gaussian state with the
    same moments (Gaussian states maximise entropy at fixed moments).
    """

    m: np.ndarray
    V: np.ndarray
    entropy: float | None = None

    def __post_init__(self):
        self._validate_moments()
        if self.entropy is not None:
            s = float(self.entropy)
            if not math.isfinite(s) or s < 0:
                raise InvalidArgumentError(f"entropy must be finite and nonnegative, got {s}")
            s_gauss = _entropy_from_spectrum(self._nu)
            if s > s_gauss + TOL_MAX_ENTROPY:
                raise InvalidArgumentError(
                    f"entropy {s:.12g} exceeds the Gaussian entropy {s_gauss:.12g} of the same moments"
                )
            object.__setattr__(self, "entropy", s)


State = Union[GaussianState, StateMoments]


def energy(H: QuadraticHamiltonian, state: State) -> float:
    """Mean energy ``¼ Tr[hV] + ½ (m - r)ᵀ h (m - r)``."""
    if state.n != H.n:
        raise InvalidArgumentError(f"mode mismatch: Hamiltonian has {H.n}, state has {state.n}")
    dm = state.m - H.r
    return 0.25 * float(np.trace(H.h @ state.V)) + 0.5 * float(dm @ H.h @ dm)


def coth_half(beta: float, d) -> np.ndarray:
    """``coth(β d / 2)``, equal to 1 exactly at the pure-state sentinel β = +inf."""
    d = np.asarray(d, dtype=float)
    if math.isinf(beta):
        return np.ones_like(d)
    return 1.0 / np.tanh(0.5 * beta * d)


def thermal_state(H: QuadraticHamiltonian, beta: float) -> GaussianState:
    """Gibbs state of ``H`` at inverse temperature ``beta`` (``inf`` gives the ground state).

    With ``h = W D Wᵀ`` (Williamson), ``V = W^{-T} diag(coth(β d / 2)) W^{-1}`` and ``m = r``.
    """
    if not beta > 0:
        raise InvalidArgumentError(f"beta must be positive, got {beta}")
    wil = williamson(H.h)
    W_inv = np.linalg.inv(wil.s)
    nu = np.repeat(coth_half(beta, wil.d), 2)
    V = (W_inv.T * nu) @ W_inv
    return GaussianState(H.r, 0.5 * (V + V.T))


def thermal_energy(H: QuadraticHamiltonian, beta: float) -> float:
    """Closed form ``½ Σ d_j coth(β d_j / 2)``."""
    return 0.5 * float(np.sum(H.spectrum * coth_half(beta, H.spectrum)))


def _binary_entropy_term(nu: np.ndarray) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    plus = 0.5 * (nu + 1.0)
    minus = 0.5 * (nu - 1.0)
    out = plus * np.log(plus)
    mixed = nu - 1.0 >= 1e-12
    out[mixed] -= minus[mixed] * np.log(minus[mixed])
    return out


def _entropy_from_spectrum(nu) -> float:
    nu = np.maximum(np.asarray(nu, dtype=float), 1.0)
    return float(np.sum(_binary_entropy_term(nu)))


def gaussian_entropy(V) -> float:
    """Von Neumann entropy (nats) of the Gaussian state with covariance ``V``."""
    nu = symplectic_eigenvalues(V)
    if nu[0] < 1.0 - TOL_UNC:
        raise InvalidArgumentError(
            f"not a covariance matrix: smallest symplectic eigenvalue {nu[0]:.12g} < 1"
        )
    return _entropy_from_spectrum(nu)


def thermal_entropy(H: QuadraticHamiltonian, beta: float) -> float:
    """Entropy of the Gibbs state of ``H`` from its symplectic spectrum."""
    return _entropy_from_spectrum(coth_half(beta, H.spectrum))


def intrinsic_beta(H: QuadraticHamiltonian, target_entropy: float) -> float:
    """Inverse temperature whose Gibbs state of ``H`` has entropy ``target_entropy``.

    Returns ``PURE_STATE_BETA`` (+inf) when the target is below 1e-10 nats.
    Solved by bisection; entropy is strictly decreasing in beta.
    """
    if not target_entropy >= 0 or not math.isfinite(target_entropy):
        raise InvalidArgumentError(f"target entropy must be finite and nonnegative, got {target_entropy}")
    if target_entropy <= TOL_ENTROPY:
        return PURE_STATE_BETA

    def f(beta):
        return thermal_entropy(H, beta) - target_entropy

    lo = hi = 1.0
    for _ in range(BISECTION_MAX_ITER):
        if f(lo) > 0:
            break
        lo *= 0.5
    else:
        raise NumericalFailureError("could not bracket intrinsic beta from below", residual=f(lo))
    for _ in range(BISECTION_MAX_ITER):
        if f(hi) < 0:
            break
        hi *= 2.0
    else:
        raise NumericalFailureError("could not bracket intrinsic beta from above", residual=f(hi))

    mid = 0.5 * (lo + hi)
    for _ in range(BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        if abs(val) <= TOL_ENTROPY or hi - lo <= 4 * np.finfo(float).eps * mid:
            break
        if val > 0:
            lo = mid
        else:
            hi = mid
    return mid


def gaussianification(state: State) -> GaussianState:
    """The Gaussian state with the same first and second moments."""
    return GaussianState(state.m, state.V)


def tensor(states: Sequence[State]) -> State:
    """Tensor product at the moment level: concatenated means, direct-summed covariances.

    Returns a GaussianState if every factor is Gaussian, otherwise StateMoments
    whose entropy is the sum of the factors' entropies (``None`` if any is unknown).
    """
    states = list(states)
    if not states:
        raise InvalidArgumentError("tensor needs at least one state")
    m = np.concatenate([s.m for s in states])
    V = direct_sum(*[s.V for s in states])
    if all(isinstance(s, GaussianState) for s in states):
        return GaussianState(m, V)
    entropies = [s.entropy for s in states]
    total = None if any(e is None for e in entropies) else float(sum(entropies))
    return StateMoments(m, V, total)


def random_hamiltonian(n: int, seed: int, spread: float = 1.0, center_scale: float = 1.0) -> QuadraticHamiltonian:
    """Random strictly positive ``h`` (Wishart plus a floor) and a random center."""
    rng = np.random.default_rng(seed)
    G = rng.normal(size=(2 * n, 2 * n)) * spread
    h = G @ G.T / (2 * n) + 0.2 * np.eye(2 * n)
    return QuadraticHamiltonian(h, rng.normal(scale=center_scale, size=2 * n))


def random_gaussian_state(
    n: int, seed: int, max_nu: float = 4.0, squeeze: float = 0.6, mean_scale: float = 1.0
) -> GaussianState:
    """Random valid Gaussian state: ``V = S diag(ν) Sᵀ`` with ``ν ∈ [1, max_nu]``."""
    rng = np.random.default_rng(seed)
    nu = np.repeat(rng.uniform(1.0, max_nu, size=n), 2)
    S = random_symplectic(n, int(rng.integers(2**31)), squeeze)
    V = (S * nu) @ S.T
    return GaussianState(rng.normal(scale=mean_scale, size=2 * n), 0.5 * (V + V.T))
