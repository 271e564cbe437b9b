"""Quantum symmetries, Cartan involutions and the correspondence between them.

A symmetry acts on state vectors as ``v -> X v`` (unitary) or ``v -> X conj(v)``
(antiunitary). Conjugating an operator by it gives a map on u(n) (the induced
involution) and on iu(n) (the action on observables).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, NamedTuple, Sequence

import numpy as np

from .linalg import (
    Tolerance,
    as_matrix,
    dagger,
    exp_skew,
    get_tolerance,
    ipq,
    is_unitary,
    symplectic_form,
)
from .subspaces import MatrixSubspace, canonical_basis, span

__all__ = [
    "Symmetry",
    "CartanInvolution",
    "CartanCheckResult",
    "CartanType",
    "InducedInvolution",
    "InvolutionSplit",
    "NotCartanError",
    "ClassificationError",
    "is_cartan_symmetry",
    "induced_map",
    "induced_observable_map",
    "apply_involution",
    "symmetry_from_involution",
    "involution_from_symmetry",
    "eigenspace_split",
    "classify_involution",
    "spin_operators",
    "spin_y",
    "embed",
    "time_reversal_symmetry",
]


class NotCartanError(ValueError):
    """The symmetry does not square to a phase, so its induced map is not involutive."""


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Symmetry:
    """``Theta = X K``: ``kind`` says whether ``K`` is the identity or complex conjugation."""

    kind: Literal["unitary", "antiunitary"]
    X: np.ndarray

    def __post_init__(self):
        if self.kind not in ("unitary", "antiunitary"):
            raise ValueError(f"kind must be 'unitary' or 'antiunitary', got {self.kind!r}")
        x = as_matrix(self.X).copy()
        if not is_unitary(x, 10 * get_tolerance().atol):
            raise ValueError("X is not unitary")
        x.setflags(write=False)
        object.__setattr__(self, "X", x)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def antiunitary(self) -> bool:
        return self.kind == "antiunitary"

    def act(self, v) -> np.ndarray:
        """Apply the symmetry to a state vector."""
        v = np.asarray(v, dtype=complex)
        return self.X @ (np.conj(v) if self.antiunitary else v)

    def group_map(self, u) -> np.ndarray:
        """``Theta U Theta^{-1}`` for a group element (same formula as on the algebra)."""
        return induced_map(self, u)


class CartanType(NamedTuple):
    name: Literal["AI", "AII", "AIII"]
    p: int | None = None
    q: int | None = None

    def __str__(self):
        if self.name == "AIII":
            return f"AIII({self.p},{self.q})"
        return self.name


@dataclass(frozen=True, eq=False)
class CartanInvolution:
    """Canonical involution AI, AII or AIII(p, q), optionally conjugated by a unitary ``T``."""

    canonical_type: Literal["AI", "AII", "AIII"]
    n: int
    p: int | None = None
    q: int | None = None
    T: np.ndarray | None = None

    def __post_init__(self):
        t, n = self.canonical_type, self.n
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")
        if t == "AII" and n % 2:
            raise ValueError(f"AII requires even dimension, got {n}")
        if t == "AIII":
            if self.p is None or self.q is None or self.p < 1 or self.q < 1 or self.p + self.q != n:
                raise ValueError(f"AIII requires p, q > 0 with p + q = n, got ({self.p}, {self.q}) for n = {n}")
        elif t != "AI" and t != "AII":
            raise ValueError(f"unknown canonical type {t!r}")
        if self.T is not None:
            tm = as_matrix(self.T).copy()
            if tm.shape[0] != n or not is_unitary(tm, 10 * get_tolerance().atol):
                raise ValueError("T must be a unitary matrix of the ambient dimension")
            tm.setflags(write=False)
            object.__setattr__(self, "T", tm)

    @classmethod
    def aiii(cls, p: int, q: int, T=None) -> CartanInvolution:
        return cls("AIII", p + q, p, q, T)

    @property
    def type(self) -> CartanType:
        return CartanType(self.canonical_type, self.p, self.q)

    @property
    def t_matrix(self) -> np.ndarray:
        return np.eye(self.n, dtype=complex) if self.T is None else self.T

    def __call__(self, b) -> np.ndarray:
        return apply_involution(self, b)


@dataclass(frozen=True)
class CartanCheckResult:
    is_cartan: bool
    residual: float
    phi: float | None = None


def _wrap_phase(phi: float) -> float:
    # map into (-pi, pi]
    phi = float(np.angle(np.exp(1j * phi)))
    return np.pi if phi <= -np.pi + 1e-12 else phi


def _square(s: Symmetry) -> np.ndarray:
    return s.X @ np.conj(s.X) if s.antiunitary else s.X @ s.X


def is_cartan_symmetry(s: Symmetry, tol: float | None = None) -> CartanCheckResult:
    """Decide whether ``Theta^2`` is a phase times the identity."""
    tol = 10 * get_tolerance().atol if tol is None else tol
    m = _square(s)
    c = np.trace(m) / s.n
    res = float(np.linalg.norm(m - c * np.eye(s.n)))
    if res <= tol and abs(abs(c) - 1) <= tol:
        return CartanCheckResult(True, res, _wrap_phase(np.angle(c)))
    return CartanCheckResult(False, res)


def _check_dim(s: Symmetry, a: np.ndarray):
    if a.shape[-1] != s.n:
        raise ValueError(f"dimension mismatch: operator {a.shape[-1]} vs symmetry {s.n}")


def induced_map(s: Symmetry, a) -> np.ndarray:
    """``theta(A) = X conj(A) X^dagger`` (antiunitary) or ``X A X^dagger`` (unitary).

    Works on a single matrix or a stack of shape ``(k, n, n)``.
    """
    a = np.asarray(a, dtype=complex)
    _check_dim(s, a)
    if s.antiunitary:
        a = np.conj(a)
    return s.X @ a @ dagger(s.X)


def induced_observable_map(s: Symmetry, h) -> np.ndarray:
    """Action ``Theta H Theta^{-1}`` of the symmetry on an observable.

    Same matrix formula as :func:`induced_map`; since ``Theta`` is conjugate-linear
    in the antiunitary case, ``obs(iA) = -i theta(A)`` there and ``+i theta(A)``
    otherwise.
    """
    return induced_map(s, h)


def _xmatrix(inv: CartanInvolution) -> np.ndarray:
    t = inv.t_matrix
    if inv.canonical_type == "AI":
        return t @ t.T
    if inv.canonical_type == "AII":
        return t @ symplectic_form(inv.n) @ t.T
    return t @ ipq(inv.p, inv.q) @ dagger(t)


def symmetry_from_involution(inv: CartanInvolution) -> Symmetry:
    """The Cartan symmetry whose induced map is ``inv``.

    AI gives ``T conj(T)^dagger K``, AII gives ``T J conj(T)^dagger K`` and AIII the
    unitary ``T I_pq T^dagger``.
    """
    kind = "unitary" if inv.canonical_type == "AIII" else "antiunitary"
    return Symmetry(kind, _xmatrix(inv))


def apply_involution(inv: CartanInvolution, b) -> np.ndarray:
    b = np.asarray(b, dtype=complex)
    if b.shape[-1] != inv.n:
        raise ValueError(f"dimension mismatch: {b.shape[-1]} vs involution on u({inv.n})")
    x = _xmatrix(inv)
    if inv.canonical_type != "AIII":
        b = np.conj(b)
    return x @ b @ dagger(x)


@dataclass(frozen=True, eq=False)
class InducedInvolution:
    """The map ``A -> Theta A Theta^{-1}`` on u(n), for a Cartan symmetry."""

    symmetry: Symmetry

    @property
    def n(self) -> int:
        return self.symmetry.n

    def __call__(self, a) -> np.ndarray:
        return induced_map(self.symmetry, a)


class InvolutionSplit(NamedTuple):
    involution: InducedInvolution
    k: MatrixSubspace
    p: MatrixSubspace


def _map_dim(theta) -> int:
    n = getattr(theta, "n", None)
    if n is None:
        raise ValueError("cannot infer the dimension of the involution; pass n")
    return n


def eigenspace_split(
    theta: Callable,
    ambient: Literal["u", "su"] = "u",
    n: int | None = None,
    tol: Tolerance | None = None,
) -> tuple[MatrixSubspace, MatrixSubspace]:
    """Split u(n) or su(n) into the +1 and -1 eigenspaces of an involution.

    Raises:
        NotCartanError: if ``theta`` is not involutive on the ambient basis.
    """
    tol = get_tolerance(tol)
    n = _map_dim(theta) if n is None else n
    basis = canonical_basis(ambient, n).basis
    images = np.array([theta(b) for b in basis]).reshape(basis.shape)
    twice = np.array([theta(b) for b in images]).reshape(basis.shape)
    err = float(np.max(np.abs(twice - basis))) if len(basis) else 0.0
    if err > 100 * tol.atol:
        raise NotCartanError(f"map is not involutive: |theta^2(B) - B| = {err:.3g}")
    k = span((basis + images) / 2, n, "skew", "K", tol)
    p = span((basis - images) / 2, n, "skew", "P", tol)
    if len(k) + len(p) != len(basis):
        raise NotCartanError(f"eigenspace dimensions {len(k)} + {len(p)} do not add up to {len(basis)}")
    return k, p


def involution_from_symmetry(s: Symmetry, tol: Tolerance | None = None) -> InvolutionSplit:
    """Induced involution of a Cartan symmetry with its eigenspace split over u(n).

    Raises:
        NotCartanError: if ``s`` is not a Cartan symmetry.
    """
    check = is_cartan_symmetry(s)
    if not check.is_cartan:
        raise NotCartanError(f"Theta^2 is not a phase times identity (residual {check.residual:.3g})")
    inv = InducedInvolution(s)
    k, p = eigenspace_split(inv, "u", tol=tol)
    return InvolutionSplit(inv, k, p)


def classify_involution(theta: Callable, n: int | None = None, tol: Tolerance | None = None) -> CartanType:
    """Identify the type of a Cartan involution from its u(n) eigenspace dimensions.

    Whether ``i*I`` is fixed or negated separates the unitary case (AIII, ``i*I`` in
    K) from the antiunitary ones (AI/AII, ``i*I`` in P); the dimension of K then
    pins the type and, for AIII, the block sizes ``p >= q``.
    """
    n = _map_dim(theta) if n is None else n
    k, _ = eigenspace_split(theta, "u", n=n, tol=tol)
    dk = len(k)
    ii = 1j * np.eye(n)
    if np.allclose(theta(ii), -ii, atol=1e-8):
        if dk == n * (n - 1) // 2:
            return CartanType("AI")
        if n % 2 == 0 and dk == n * (n + 1) // 2:
            return CartanType("AII")
    elif np.allclose(theta(ii), ii, atol=1e-8):
        for p in range((n + 1) // 2, n):
            q = n - p
            if p * p + q * q == dk:
                return CartanType("AIII", p, q)
    raise ClassificationError(f"dim K = {dk} matches no Cartan type at n = {n}")


def _spin_dim(j) -> int:
    two_j = Fraction(j) * 2
    if two_j.denominator != 1 or two_j < 0:
        raise ValueError(f"invalid spin {j!r}: 2j must be a nonnegative integer")
    return int(two_j) + 1


def spin_operators(j) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin matrices ``(S_x, S_y, S_z)`` for spin ``j`` (hbar = 1).

    Basis ordered ``m = j, j-1, ..., -j``; Condon-Shortley phases, so the raising
    operator has nonnegative real entries.
    """
    d = _spin_dim(j)
    jj = (d - 1) / 2
    m = jj - np.arange(d)
    # <m+1| S+ |m> sits just above the diagonal
    sp = np.diag(np.sqrt(jj * (jj + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    sm = dagger(sp)
    return (sp + sm) / 2, (sp - sm) / 2j, np.diag(m).astype(complex)


def spin_y(j) -> np.ndarray:
    return spin_operators(j)[1]


def embed(op, k: int, dims: Sequence[int]) -> np.ndarray:
    """``I ⊗ ... ⊗ op ⊗ ... ⊗ I`` with ``op`` in slot ``k``."""
    out = np.ones((1, 1), dtype=complex)
    for i, d in enumerate(dims):
        out = np.kron(out, op if i == k else np.eye(d))
    return out


def time_reversal_symmetry(spins: Sequence) -> Symmetry:
    """Time reversal ``exp(-i pi sum_k S_y^(k)) K`` on a tensor product of spins."""
    if len(spins) == 0:
        raise ValueError("need at least one spin")
    x = np.ones((1, 1), dtype=complex)
    for j in spins:
        # the summands commute, so the exponential factorises over sites
        x = np.kron(x, exp_skew(-1j * np.pi * spin_y(j)))
    x = np.real(x).astype(complex)
    return Symmetry("antiunitary", x)
