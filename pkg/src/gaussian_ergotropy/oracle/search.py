"""Brute-force minimisation of ``¼ Tr[h S V Sᵀ]`` over the symplectic group.

This never uses symplectic eigenvalues, so it is an independent check of the
closed-form Gaussian-passive energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm, expm_frechet
from scipy.optimize import minimize

from ..errors import InvalidArgumentError
from ..symplectic import check_positive_definite, random_symplectic, symplectic_form

_CHART_ITERATIONS = 25


@dataclass(frozen=True)
class SymplecticSearchConfig:
    """Settings for :func:`minimize_passive_energy_numerical`.

    ``method`` is ``"gradient"`` (L-BFGS on an exponential chart with exact
    gradients) or ``"coordinate"`` (derivative-free adaptive coordinate descent).
    ``step_scale`` is the spread of the random symplectic starting points and,
    for coordinate descent, the initial step.
    """

    restarts: int = 32
    max_iterations: int = 400
    seed: int = 0
    step_scale: float = 0.5
    convergence_tol: float = 1e-10
    method: str = "gradient"

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidArgumentError("restarts must be at least 1")
        if not self.convergence_tol > 0:
            raise InvalidArgumentError("convergence_tol must be positive")
        if self.method not in ("gradient", "coordinate"):
            raise InvalidArgumentError(f"unknown search method {self.method!r}")


class SearchResult(NamedTuple):
    value: float
    s_best: np.ndarray
    converged: bool
    restarts_used: int
    seed: int


def passive_energy_objective(h, V, S) -> float:
    """``¼ Tr[h S V Sᵀ]``."""
    return 0.25 * float(np.trace(h @ S @ V @ S.T))


def restart_seeds(seed: int, restarts: int) -> list[int]:
    """Per-restart seeds derived from the master seed, independent of execution order."""
    children = np.random.SeedSequence(seed).spawn(restarts)
    return [int(c.generate_state(1)[0]) for c in children]


def _sym_from_vec(a: np.ndarray, dim: int, iu) -> np.ndarray:
    A = np.zeros((dim, dim))
    A[iu] = a
    return A + np.triu(A, 1).T


def _chart_descent(h, V, S, omega, max_iterations, tol):
    """Minimise over ``exp(ΩA) S`` with L-BFGS, re-centring the chart until stalled.

    Charts far from their centre are badly conditioned, so each chart gets a
    short L-BFGS run before re-centring.
    """
    dim = S.shape[0]
    iu = np.triu_indices(dim)
    off = iu[0] != iu[1]
    f_cur = passive_energy_objective(h, V, S)
    converged = False
    for _ in range(max(1, max_iterations // _CHART_ITERATIONS)):
        W = S @ V @ S.T

        def fun(a):
            B = omega @ _sym_from_vec(a, dim, iu)
            E_t, L = expm_frechet(B.T, 0.5 * h @ expm(B) @ W)
            E = E_t.T
            val = 0.25 * np.trace(h @ E @ W @ E.T)
            G = omega.T @ L
            g = G[iu]
            g[off] += G.T[iu][off]
            return val, g

        res = minimize(
            fun, np.zeros(len(iu[0])), jac=True, method="L-BFGS-B",
            options={"maxiter": _CHART_ITERATIONS, "ftol": 1e-13, "gtol": 1e-9},
        )
        S_new = expm(omega @ _sym_from_vec(res.x, dim, iu)) @ S
        f_new = passive_energy_objective(h, V, S_new)
        if f_new < f_cur:
            improvement = f_cur - f_new
            S, f_cur = S_new, f_new
        else:
            improvement = 0.0
        if improvement <= tol * max(1.0, abs(f_cur)):
            converged = True
            break
    return S, f_cur, converged


def _coordinate_descent(h, V, S, omega, max_iterations, tol, step):
    """Derivative-free descent over elementary generators ``exp(±t Ω E_ij)``."""
    dim = S.shape[0]
    gens = []
    for i in range(dim):
        for j in range(i, dim):
            E = np.zeros((dim, dim))
            E[i, j] = E[j, i] = 1.0
            gens.append(omega @ E)
    steps = np.full(len(gens), step)
    f_cur = passive_energy_objective(h, V, S)
    converged = False
    for _ in range(max_iterations):
        f_start = f_cur
        for k, gen in enumerate(gens):
            improved = False
            for sign in (1.0, -1.0):
                S_try = expm(sign * steps[k] * gen) @ S
                f_try = passive_energy_objective(h, V, S_try)
                if f_try < f_cur:
                    S, f_cur, improved = S_try, f_try, True
                    break
            steps[k] *= 2.0 if improved else 0.5
        if f_start - f_cur <= tol * max(1.0, abs(f_cur)) and steps.max() < 1e-7:
            converged = True
            break
    return S, f_cur, converged


def minimize_passive_energy_numerical(h, V, config: SymplecticSearchConfig = SymplecticSearchConfig()) -> SearchResult:
    """Numerically minimise ``¼ Tr[h S V Sᵀ]`` over symplectic S with random restarts.

    The first restart starts at the identity; the rest start at random
    symplectic matrices. Results merge by minimum, so the output depends only
    on ``config.seed``.

    Returns:
        SearchResult; ``converged`` is False if no restart met the stopping rule.
    """
    h = check_positive_definite(h, "h")
    V = check_positive_definite(V, "V")
    if h.shape != V.shape:
        raise InvalidArgumentError("h and V must have the same shape")
    n = h.shape[0] // 2
    omega = symplectic_form(n)
    best_val, best_S, any_converged = np.inf, np.eye(2 * n), False
    for k, s in enumerate(restart_seeds(config.seed, config.restarts)):
        S0 = np.eye(2 * n) if k == 0 else random_symplectic(n, s, config.step_scale)
        if config.method == "gradient":
            S, val, conv = _chart_descent(h, V, S0, omega, config.max_iterations, config.convergence_tol)
        else:
            S, val, conv = _coordinate_descent(
                h, V, S0, omega, config.max_iterations, config.convergence_tol, config.step_scale
            )
        any_converged |= conv
        if val < best_val:
            best_val, best_S = val, S
    return SearchResult(float(best_val), best_S, any_converged, config.restarts, config.seed)


class RearrangementCheck(NamedTuple):
    worst_margin: float
    all_hold: bool


def check_rearrangement_lemma(
    d_h_ascending, d_V_descending, trials: int, seed: int, scale: float = 1.0, tol: float = 1e-9
) -> RearrangementCheck:
    """Sample ``Tr[D1 S D2 Sᵀ] - Tr[D1 D2]`` over random symplectic S.

    ``D1`` and ``D2`` repeat each entry of ``d_h_ascending`` and ``d_V_descending``
    on the two quadratures of a mode.
    """
    alpha = np.asarray(d_h_ascending, dtype=float)
    beta = np.asarray(d_V_descending, dtype=float)
    if alpha.shape != beta.shape or alpha.ndim != 1 or alpha.size == 0:
        raise InvalidArgumentError("spectra must be nonempty 1-D sequences of equal length")
    if np.any(np.diff(alpha) < 0) or np.any(np.diff(beta) > 0):
        raise InvalidArgumentError("first spectrum must be ascending and second descending")
    if np.any(alpha < 0) or np.any(beta < 0):
        raise InvalidArgumentError("spectra must be nonnegative")
    n = alpha.size
    D1 = np.repeat(alpha, 2)
    D2 = np.repeat(beta, 2)
    baseline = float(np.sum(D1 * D2))
    worst = 0.0 if trials == 0 else np.inf
    for s in restart_seeds(seed, trials):
        S = random_symplectic(n, s, scale)
        margin = float(np.trace((D1[:, None] * S) @ (D2[:, None] * S.T))) - baseline
        worst = min(worst, margin)
    return RearrangementCheck(float(worst), bool(worst >= -tol))
