"""Group-level factorizations induced by a Cartan involution."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    BranchCutError,
    Tolerance,
    as_matrix,
    dagger,
    exp_skew,
    get_tolerance,
    is_hermitian,
    is_unitary,
    principal_log_unitary,
    spectral_normal,
)
from .symmetries import (
    CartanInvolution,
    NotCartanError,
    Symmetry,
    induced_map,
    induced_observable_map,
    is_cartan_symmetry,
    symmetry_from_involution,
)

__all__ = [
    "KPResult",
    "KAKResult",
    "MembershipError",
    "kp_decompose",
    "kak_decompose_ai",
    "split_hamiltonian",
    "split_propagator",
    "as_symmetry",
]

MEMBERSHIP_TOL = 1e-9
CLUSTER_TOL = 1e-8


class MembershipError(ArithmeticError):
    """A computed factor's logarithm is not in the expected eigenspace."""


def as_symmetry(inv: CartanInvolution | Symmetry) -> Symmetry:
    """The Cartan symmetry realising ``inv`` (a symmetry is returned unchanged)."""
    if isinstance(inv, Symmetry):
        if not is_cartan_symmetry(inv).is_cartan:
            raise NotCartanError("symmetry is not a Cartan symmetry")
        return inv
    return symmetry_from_involution(inv)


@dataclass(frozen=True, eq=False)
class KPResult:
    K: np.ndarray
    P: np.ndarray
    logK: np.ndarray
    logP: np.ndarray
    residual: float
    membership_residuals: tuple[float, float] = (0.0, 0.0)


def kp_decompose(
    u,
    inv: CartanInvolution | Symmetry,
    branch_guard: float = 1e-6,
    membership_tol: float = MEMBERSHIP_TOL,
    tol: Tolerance | None = None,
) -> KPResult:
    """Factor ``U = K P`` with ``log K`` fixed and ``log P`` negated by the involution.

    With ``Theta`` the group lift of ``inv``, ``M = Theta(U)^{-1} U`` equals ``P^2``;
    ``P`` is its principal square root and ``K = U P^{-1}``.

    Raises:
        BranchCutError: ``M`` (or ``K``) has an eigenvalue too close to -1.
        MembershipError: the logarithms miss their eigenspaces by more than
            ``membership_tol``.
    """
    tol = get_tolerance(tol)
    u = as_matrix(u)
    if not is_unitary(u, 10 * tol.atol):
        raise ValueError("input is not unitary")
    s = as_symmetry(inv)
    if s.n != u.shape[0]:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs involution on u({s.n})")
    m = dagger(induced_map(s, u)) @ u
    log_p = principal_log_unitary(m, branch_guard, tol=tol) / 2
    p = exp_skew(log_p, tol=tol)
    k = u @ dagger(p)
    log_k = principal_log_unitary(k, branch_guard, tol=tol)

    mem_k = float(np.linalg.norm(induced_map(s, log_k) - log_k))
    mem_p = float(np.linalg.norm(induced_map(s, log_p) + log_p))
    if max(mem_k, mem_p) > membership_tol:
        raise MembershipError(
            f"eigenspace membership failed: |theta(logK) - logK| = {mem_k:.3g}, "
            f"|theta(logP) + logP| = {mem_p:.3g}"
        )
    res = float(np.linalg.norm(k @ p - u))
    return KPResult(k, p, log_k, log_p, res, (mem_k, mem_p))


@dataclass(frozen=True, eq=False)
class KAKResult:
    K1: np.ndarray
    A: np.ndarray
    K2: np.ndarray
    residual: float


def _real_eigenbasis(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real orthogonal ``Q`` and eigenvalues with ``M = Q diag(d) Q^T`` for symmetric unitary ``M``.

    Each eigenspace of such an ``M`` is closed under complex conjugation, so the
    real and imaginary parts of its eigenvectors span it over the reals.
    """
    lam, v = spectral_normal(m)
    n = len(lam)
    cols, vals = [], []
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and abs(lam[stop] - lam[start]) <= CLUSTER_TOL:
            stop += 1
        block = v[:, start:stop]
        k = stop - start
        w, sv, _ = np.linalg.svd(np.hstack([block.real, block.imag]))
        if k < n and sv[k] > 1e-6:
            raise ArithmeticError("eigenspace is not conjugation invariant; no real eigenbasis")
        q = w[:, :k]
        # deterministic signs: largest entry of each column positive
        piv = np.argmax(np.abs(q), axis=0)
        q = q * np.sign(q[piv, np.arange(k)])
        cols.append(q)
        vals.extend([np.mean(lam[start:stop])] * k)
        start = stop
    return np.hstack(cols), np.array(vals)


def kak_decompose_ai(u, branch_guard: float = 1e-6, tol: Tolerance | None = None) -> KAKResult:
    """``U = K1 A K2`` for the canonical AI involution.

    ``K1``, ``K2`` are real special orthogonal, ``A`` diagonal unitary. ``K1``
    diagonalises the symmetric unitary ``U U^T = K1 A^2 K1^T``, ``A`` is the
    principal square root of the diagonal, and ``K2 = A^{-1} K1^T U``.

    Raises:
        BranchCutError: ``U U^T`` has an eigenvalue too close to -1.
    """
    tol = get_tolerance(tol)
    u = as_matrix(u)
    if not is_unitary(u, 10 * tol.atol):
        raise ValueError("input is not unitary")
    q, d2 = _real_eigenbasis(u @ u.T)
    phases = np.angle(d2)
    near = np.pi - np.abs(phases)
    if np.any(near < branch_guard):
        raise BranchCutError(phases[np.argmin(near)], branch_guard)
    if np.linalg.det(q) < 0:
        q[:, -1] *= -1
    a = np.exp(0.5j * phases)
    k2 = (np.conj(a)[:, None] * q.T) @ u
    if np.real(np.linalg.det(k2)) < 0:
        # -a_0 also squares to d2_0; moves the sign out of K2
        a[0] *= -1
        k2[0] *= -1
    k2 = np.real(k2).astype(complex) if np.max(np.abs(k2.imag)) <= 1e-8 else k2
    k1 = q.astype(complex)
    amat = np.diag(a)
    res = float(np.linalg.norm(k1 @ amat @ k2 - u))
    return KAKResult(k1, amat, k2, res)


def split_hamiltonian(h, s: Symmetry) -> tuple[np.ndarray, np.ndarray]:
    """Split ``H = H_a + H_s`` into parts antisymmetric and symmetric under ``s``.

    Returns ``(H_a, H_s)``.

    Raises:
        NotCartanError: ``s`` is not a Cartan symmetry.
    """
    h = as_matrix(h)
    if not is_hermitian(h, 1e-9 * max(1.0, np.linalg.norm(h))):
        raise ValueError("H is not Hermitian")
    if not is_cartan_symmetry(s).is_cartan:
        raise NotCartanError("symmetry is not a Cartan symmetry")
    th = induced_observable_map(s, h)
    h_s = (h + th) / 2
    return h - h_s, h_s


def split_propagator(
    u,
    inv: CartanInvolution | Symmetry,
    branch_guard: float = 1e-6,
    tol: Tolerance | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Write ``U = U_a U_s = exp(i H_a) exp(i H_s)`` with ``H_a``/``H_s`` anti/symmetric.

    For antiunitary symmetries (AI, AII) the symmetric factor lives in ``exp(P)`` and
    is the right-hand factor of ``U = K P``. For unitary ones (AIII) it lives in
    ``exp(K)``; there ``U = P' K'`` is obtained from the K P split of ``U^dagger``.

    Returns ``(U_a, U_s, H_a, H_s)``.
    """
    u = as_matrix(u)
    s = as_symmetry(inv)
    if s.antiunitary:
        r = kp_decompose(u, s, branch_guard, tol=tol)
        u_a, u_s, log_a, log_s = r.K, r.P, r.logK, r.logP
    else:
        r = kp_decompose(dagger(u), s, branch_guard, tol=tol)
        # U = P^dagger K^dagger
        u_a, u_s, log_a, log_s = dagger(r.P), dagger(r.K), -r.logP, -r.logK
    return u_a, u_s, -1j * log_a, -1j * log_s
