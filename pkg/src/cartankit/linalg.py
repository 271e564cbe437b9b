"""Dense complex matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is a
pure function; inputs are never modified.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Tolerance",
    "get_tolerance",
    "BranchCutError",
    "as_matrix",
    "hs_inner",
    "hs_norm",
    "dagger",
    "commutator",
    "anticommutator",
    "is_unitary",
    "is_hermitian",
    "is_skew_hermitian",
    "is_real",
    "is_symplectic",
    "symplectic_form",
    "ipq",
    "spectral_normal",
    "principal_log_unitary",
    "sqrt_unitary",
    "exp_skew",
    "gram_schmidt",
    "random_unitary",
    "random_skew_hermitian",
    "random_hermitian",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerances used by the predicates and rank decisions.

    ``atol`` governs entrywise and residual comparisons, ``rank_tol`` decides
    when a Gram-Schmidt residual counts as zero.
    """

    atol: float = 1e-10
    rank_tol: float = 1e-8

    def __post_init__(self):
        if not (self.atol > 0 and self.rank_tol > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.rank_tol < self.atol:
            raise ValueError("rank_tol must be >= atol")


def get_tolerance(tol: Tolerance | None = None) -> Tolerance:
    """Return ``tol`` or the default, honouring ``CARTANKIT_TOL`` for atol."""
    if tol is not None:
        return tol
    env = os.environ.get("CARTANKIT_TOL")
    if env:
        atol = float(env)
        return Tolerance(atol=atol, rank_tol=max(1e-8, atol))
    return Tolerance()


class BranchCutError(ValueError):
    """A unitary has an eigenvalue too close to -1 for the principal branch."""

    def __init__(self, phase: float, guard: float):
        self.phase = float(phase)
        self.guard = float(guard)
        super().__init__(
            f"eigenphase {self.phase:.12g} lies within {guard:g} rad of the branch cut at -1"
        )


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A B^dagger)``."""
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    # Tr(A B^dagger) = sum_ij A_ij conj(B_ij)
    return complex(np.vdot(b, a))


def hs_norm(a) -> float:
    return float(np.linalg.norm(a))


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def is_unitary(a, atol: float | None = None) -> bool:
    atol = get_tolerance().atol if atol is None else atol
    a = as_matrix(a)
    return bool(np.max(np.abs(a @ dagger(a) - np.eye(a.shape[0]))) <= atol)


def is_hermitian(a, atol: float | None = None) -> bool:
    atol = get_tolerance().atol if atol is None else atol
    a = as_matrix(a)
    return bool(np.max(np.abs(a - dagger(a))) <= atol)


def is_skew_hermitian(a, atol: float | None = None) -> bool:
    atol = get_tolerance().atol if atol is None else atol
    a = as_matrix(a)
    return bool(np.max(np.abs(a + dagger(a))) <= atol)


def is_real(a, atol: float | None = None) -> bool:
    atol = get_tolerance().atol if atol is None else atol
    return bool(np.max(np.abs(np.imag(as_matrix(a)))) <= atol)


def symplectic_form(n: int) -> np.ndarray:
    """The matrix ``J = [[0, I], [-I, 0]]`` of even size ``n``."""
    if n < 2 or n % 2:
        raise ValueError(f"symplectic form needs an even dimension, got {n}")
    h = n // 2
    j = np.zeros((n, n), dtype=complex)
    j[:h, h:] = np.eye(h)
    j[h:, :h] = -np.eye(h)
    return j


def ipq(p: int, q: int) -> np.ndarray:
    """``diag(1,...,1,-1,...,-1)`` with ``p`` plus signs and ``q`` minus signs."""
    if p < 1 or q < 1:
        raise ValueError(f"I_pq needs p, q > 0, got ({p}, {q})")
    return np.diag(np.r_[np.ones(p), -np.ones(q)]).astype(complex)


def is_symplectic(a, atol: float | None = None) -> bool:
    """True iff ``A J + J A^T`` vanishes (membership test for sp(n/2))."""
    atol = get_tolerance().atol if atol is None else atol
    a = as_matrix(a)
    j = symplectic_form(a.shape[0])
    return bool(np.linalg.norm(a @ j + j @ a.T) <= atol)


def spectral_normal(m, atol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Unitary diagonalisation ``M = V diag(lam) V^dagger`` of a normal matrix.

    Eigenvalues come sorted by descending phase angle, then descending magnitude.

    Raises:
        ValueError: if ``M`` is not normal within ``atol`` (scaled by ``||M||``).
        np.linalg.LinAlgError: if the underlying LAPACK routine fails.
    """
    atol = get_tolerance().atol if atol is None else atol
    m = as_matrix(m)
    scale = max(1.0, float(np.linalg.norm(m)))
    if np.linalg.norm(m @ dagger(m) - dagger(m) @ m) > atol * scale**2:
        raise ValueError("matrix is not normal")

    if np.allclose(m, dagger(m), rtol=0, atol=atol * scale):
        w, v = np.linalg.eigh((m + dagger(m)) / 2)
        lam = w.astype(complex)
    elif np.allclose(m, -dagger(m), rtol=0, atol=atol * scale):
        # -iM is Hermitian
        w, v = np.linalg.eigh((m - dagger(m)) / 2j)
        lam = 1j * w
    else:
        from scipy.linalg import schur

        t, v = schur(m, output="complex")
        lam = np.diag(t).copy()
        # diagonal Schur form is the spectral decomposition; snap V back onto U(n)
        u, _, vh = np.linalg.svd(v)
        v = u @ vh

    order = np.lexsort((-np.abs(lam), -np.angle(lam)))
    return lam[order], v[:, order]


def _eigenphases(u, tol: Tolerance) -> tuple[np.ndarray, np.ndarray]:
    u = as_matrix(u)
    if not is_unitary(u, 10 * tol.atol):
        raise ValueError("matrix is not unitary")
    lam, v = spectral_normal(u, atol=10 * tol.atol)
    return np.angle(lam), v


def principal_log_unitary(
    u,
    branch_guard: float = 1e-6,
    allow_branch_edge: bool = False,
    tol: Tolerance | None = None,
) -> np.ndarray:
    """Principal logarithm of a unitary, a skew-Hermitian matrix with phases in (-pi, pi].

    Raises:
        BranchCutError: an eigenvalue sits within ``branch_guard`` radians of -1
            and ``allow_branch_edge`` is not set.
    """
    tol = get_tolerance(tol)
    phases, v = _eigenphases(u, tol)
    near = np.pi - np.abs(phases)
    if not allow_branch_edge and np.any(near < branch_guard):
        raise BranchCutError(phases[np.argmin(near)], branch_guard)
    # fold -pi onto +pi so every phase is in (-pi, pi]
    phases = np.where(phases <= -np.pi + 1e-15, np.pi, phases)
    log = (v * (1j * phases)) @ dagger(v)
    return (log - dagger(log)) / 2


def sqrt_unitary(
    u,
    branch_guard: float = 1e-6,
    allow_branch_edge: bool = False,
    tol: Tolerance | None = None,
) -> np.ndarray:
    """Principal square root ``exp(log(U) / 2)`` of a unitary."""
    tol = get_tolerance(tol)
    log = principal_log_unitary(u, branch_guard, allow_branch_edge, tol)
    return exp_skew(log / 2, tol=tol)


def exp_skew(l, tol: Tolerance | None = None) -> np.ndarray:
    """Unitary exponential of a skew-Hermitian matrix."""
    tol = get_tolerance(tol)
    l = as_matrix(l)
    scale = max(1.0, float(np.linalg.norm(l)))
    if not is_skew_hermitian(l, tol.atol * scale):
        raise ValueError("matrix is not skew-Hermitian")
    w, v = np.linalg.eigh((l - dagger(l)) / 2j)
    return (v * np.exp(1j * w)) @ dagger(v)


def _real_inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.vdot(b, a)))


def gram_schmidt(matrices: Sequence, tol: Tolerance | None = None) -> list[np.ndarray]:
    """Orthonormalise matrices over the reals in the Hilbert-Schmidt metric.

    Modified Gram-Schmidt with one reorthogonalisation pass. Inputs whose residual
    norm falls below ``rank_tol`` are dropped; output order follows input order.
    """
    tol = get_tolerance(tol)
    out: list[np.ndarray] = []
    shape = None
    for m in matrices:
        m = as_matrix(m)
        if shape is None:
            shape = m.shape
        elif m.shape != shape:
            raise ValueError(f"dimension mismatch: {shape} vs {m.shape}")
        r = m.copy()
        for _ in range(2):
            for q in out:
                r = r - _real_inner(r, q) * q
        nr = np.linalg.norm(r)
        if nr > tol.rank_tol:
            out.append(r / nr)
    return out


def random_skew_hermitian(n: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    """Gaussian skew-Hermitian matrix, optionally rescaled to a given Frobenius norm."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = (g - dagger(g)) / 2
    if norm is not None:
        a *= norm / np.linalg.norm(a)
    return a


def random_hermitian(n: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    return -1j * random_skew_hermitian(n, rng, norm)


def random_unitary(n: int, rng: np.random.Generator, log_norm: float | None = None) -> np.ndarray:
    """Random unitary.

    With ``log_norm`` set, returns ``exp(S)`` for a skew-Hermitian ``S`` of that
    Frobenius norm, which keeps the spectrum away from -1. Otherwise Haar-distributed.
    """
    if log_norm is not None:
        return exp_skew(random_skew_hermitian(n, rng, log_norm))
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
