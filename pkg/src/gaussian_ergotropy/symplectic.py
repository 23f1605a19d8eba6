"""Symplectic linear algebra in the xpxp quadrature ordering.

Every matrix in this package uses the ordering ``(x1, p1, x2, p2, ...)``.
The block ordering ``(x1, ..., xn, p1, ..., pn)`` is only reachable through
:func:`xpxp_to_xxpp_permutation`.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag, expm, schur

from .errors import InvalidArgumentError, NumericalFailureError

TOL_SYMP = 1e-8
TOL_RECON = 1e-8
TOL_SYM = 1e-9
EPS_PD = 1e-12
COND_CAP = 1e12

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


class WilliamsonResult(NamedTuple):
    """Williamson normal form ``M = s @ diag(d ⊗ (1, 1)) @ s.T``."""

    s: np.ndarray
    d: np.ndarray

    @property
    def D(self) -> np.ndarray:
        return np.diag(np.repeat(self.d, 2))


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n×2n symplectic form Ω = ⊕ [[0, 1], [-1, 0]]."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {n!r}")
    return np.kron(np.eye(int(n)), _J2)


def _mode_count(M: np.ndarray, name: str = "matrix") -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgumentError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] % 2 or M.shape[0] == 0:
        raise InvalidArgumentError(f"{name} must have even positive dimension, got {M.shape[0]}")
    return M.shape[0] // 2


def symplectic_residual(S) -> float:
    """Frobenius norm of ``S Ω Sᵀ - Ω``."""
    S = np.asarray(S, dtype=float)
    omega = symplectic_form(_mode_count(S, "S"))
    return float(np.linalg.norm(S @ omega @ S.T - omega))


def is_symplectic(S, tol: float = TOL_SYMP) -> bool:
    """Check ``‖S Ω Sᵀ - Ω‖_F <= tol``.

    Raises:
        InvalidArgumentError: if ``S`` is not square with even dimension.
    """
    return symplectic_residual(S) <= tol


def check_positive_definite(M, name: str = "matrix") -> np.ndarray:
    """Validate a real symmetric strictly positive matrix and return it symmetrised.

    The symmetry test is relative, ``‖M - Mᵀ‖_F <= 1e-9 (1 + ‖M‖_F)``; positivity
    requires the smallest eigenvalue to exceed ``1e-12 ‖M‖_2``.
    """
    M = np.asarray(M, dtype=float)
    _mode_count(M, name)
    if not np.all(np.isfinite(M)):
        raise InvalidArgumentError(f"{name} has non-finite entries")
    asym = np.linalg.norm(M - M.T)
    if asym > TOL_SYM * (1.0 + np.linalg.norm(M)):
        raise InvalidArgumentError(f"{name} is not symmetric: ‖M - Mᵀ‖_F = {asym:.3e}")
    M = 0.5 * (M + M.T)
    eigs = np.linalg.eigvalsh(M)
    if eigs[0] <= EPS_PD * abs(eigs[-1]) or eigs[-1] <= 0:
        raise InvalidArgumentError(
            f"{name} is not strictly positive definite: eigenvalues span "
            f"[{eigs[0]:.3e}, {eigs[-1]:.3e}], relative floor {EPS_PD:.0e}"
        )
    return M


def _sqrt_spd(M: np.ndarray) -> tuple[np.ndarray, float]:
    w, U = np.linalg.eigh(M)
    B = (U * np.sqrt(w)) @ U.T
    return 0.5 * (B + B.T), w[-1] / w[0]


def symplectic_eigenvalues(M) -> np.ndarray:
    """Symplectic eigenvalues of a strictly positive matrix, ascending.

    They are the moduli of the eigenvalues of ``iΩM``, computed here from the
    Hermitian matrix ``i M^{1/2} Ω M^{1/2}`` whose spectrum is the same ``±d_j``.
    """
    M = check_positive_definite(M)
    n = M.shape[0] // 2
    B, _ = _sqrt_spd(M)
    K = B @ symplectic_form(n) @ B
    K = 0.5 * (K - K.T)
    eigs = np.linalg.eigvalsh(1j * K)
    return np.sort(eigs[n:])


def williamson(M, order: str = "ascending", tol: float = TOL_RECON) -> WilliamsonResult:
    """Williamson decomposition ``M = S D Sᵀ`` with S symplectic.

    The antisymmetric matrix ``K = M^{1/2} Ω M^{1/2}`` is brought to the form
    ``Oᵀ K O = ⊕ d_j [[0, 1], [-1, 0]]`` by a real Schur decomposition, and
    ``S = M^{1/2} O D^{-1/2}``. Then ``S D Sᵀ = M`` and ``Sᵀ Ω S = Ω``.

    Args:
        M: real symmetric strictly positive 2n×2n matrix.
        order: ``"ascending"`` or ``"descending"`` ordering of ``d``.
        tol: relative tolerance on the reconstruction and symplectic residuals.

    Returns:
        WilliamsonResult with ``s`` (2n×2n) and ``d`` (length n).

    Raises:
        InvalidArgumentError: non-symmetric or non-positive input, unknown order.
        NumericalFailureError: condition number above 1e12, or residuals above ``tol``.
    """
    if order not in ("ascending", "descending"):
        raise InvalidArgumentError(f"order must be 'ascending' or 'descending', got {order!r}")
    M = check_positive_definite(M)
    n = M.shape[0] // 2
    B, cond = _sqrt_spd(M)
    if cond > COND_CAP:
        raise NumericalFailureError(
            f"matrix too ill-conditioned for Williamson decomposition (cond={cond:.3e})",
            residual=cond,
        )
    omega = symplectic_form(n)
    K = B @ omega @ B
    K = 0.5 * (K - K.T)
    T, O = schur(K, output="real")

    # each 2x2 block is [[0, b], [c, 0]] with bc < 0; swap columns so that b > 0
    perm = np.arange(2 * n)
    d = np.empty(n)
    for j in range(n):
        b, c = T[2 * j, 2 * j + 1], T[2 * j + 1, 2 * j]
        if b < 0:
            perm[2 * j], perm[2 * j + 1] = 2 * j + 1, 2 * j
        d[j] = 0.5 * abs(b - c)
    idx = np.argsort(d, kind="stable")
    if order == "descending":
        idx = idx[::-1]
    cols = np.concatenate([perm[2 * j : 2 * j + 2] for j in idx])
    d = d[idx]
    O = O[:, cols]

    S = B @ O / np.sqrt(np.repeat(d, 2))
    recon = np.linalg.norm(S @ np.diag(np.repeat(d, 2)) @ S.T - M)
    symp = np.linalg.norm(S @ omega @ S.T - omega)
    norm_s2 = np.linalg.norm(S) ** 2
    if recon > tol * np.linalg.norm(M) or symp > tol * (1.0 + norm_s2):
        raise NumericalFailureError(
            f"Williamson residuals too large (reconstruction {recon:.3e}, symplectic {symp:.3e})",
            residual=max(recon / np.linalg.norm(M), symp / (1.0 + norm_s2)),
        )
    return WilliamsonResult(S, d)


def random_symplectic(n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Sample ``exp(Ω A)`` with A symmetric, entries i.i.d. normal of std ``scale``.

    Deterministic in ``(n, seed, scale)``.
    """
    if scale <= 0:
        raise InvalidArgumentError(f"scale must be positive, got {scale}")
    omega = symplectic_form(n)
    rng = np.random.default_rng(seed)
    G = rng.normal(0.0, scale, size=(2 * n, 2 * n))
    A = np.triu(G) + np.triu(G, 1).T
    return expm(omega @ A)


def xpxp_to_xxpp_permutation(n: int) -> np.ndarray:
    """Permutation P with ``P R_xpxp = R_xxpp``, so ``P Ω Pᵀ = [[0, I], [-I, 0]]``."""
    symplectic_form(n)
    order = np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])
    return np.eye(2 * n)[order]


def direct_sum(*blocks) -> np.ndarray:
    """Block-diagonal concatenation of square matrices."""
    if not blocks:
        raise InvalidArgumentError("direct_sum needs at least one block")
    arrs = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks]
    for a in arrs:
        if a.shape[0] != a.shape[1]:
            raise InvalidArgumentError(f"direct_sum blocks must be square, got {a.shape}")
    return block_diag(*arrs)
