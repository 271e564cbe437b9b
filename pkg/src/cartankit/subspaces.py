"""Real-linear subspaces of u(n) and iu(n) and their closure relations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .linalg import (
    Tolerance,
    anticommutator,
    as_matrix,
    commutator,
    dagger,
    get_tolerance,
    gram_schmidt,
    symplectic_form,
)

__all__ = [
    "MatrixSubspace",
    "ClosureReport",
    "canonical_basis",
    "project",
    "contains",
    "closure_check",
    "tensor_bracket_expand",
    "span",
    "DEFAULT_CLOSURE_TOL",
]

Flag = Literal["skew", "hermitian"]
BracketKind = Literal["commutator", "anticommutator"]

DEFAULT_CLOSURE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MatrixSubspace:
    """Orthonormal (Hilbert-Schmidt) basis of a real subspace of u(n) or iu(n).

    ``basis`` is stored as a read-only array of shape ``(dim, n, n)``.
    """

    ambient_dim: int
    basis: np.ndarray
    flag: Flag = "skew"
    name: str = ""

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex).reshape(-1, self.ambient_dim, self.ambient_dim)
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)
        if self.flag not in ("skew", "hermitian"):
            raise ValueError(f"unknown hermiticity flag {self.flag!r}")

    def dimension(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dimension()

    def __iter__(self):
        return iter(self.basis)

    def times_i(self) -> MatrixSubspace:
        """Multiply every basis element by i, switching between u(n) and iu(n)."""
        flag = "hermitian" if self.flag == "skew" else "skew"
        name = f"i*{self.name}" if self.name else ""
        return MatrixSubspace(self.ambient_dim, 1j * self.basis, flag, name)

    def conjugated(self, t: np.ndarray) -> MatrixSubspace:
        """The subspace ``T S T^dagger`` for a unitary ``T``."""
        t = as_matrix(t)
        return MatrixSubspace(self.ambient_dim, t @ self.basis @ dagger(t), self.flag, self.name)

    def complement(self, tol: Tolerance | None = None) -> MatrixSubspace:
        """Orthogonal complement inside u(n) (or iu(n) for Hermitian spaces)."""
        full = canonical_basis("u", self.ambient_dim)
        if self.flag == "hermitian":
            full = full.times_i()
        vecs = [m - project(self, m)[0] for m in full.basis]
        return span(vecs, self.ambient_dim, self.flag, tol=tol)

    def check(self, tol: Tolerance | None = None) -> None:
        """Raise if the basis is not orthonormal or violates the hermiticity flag."""
        tol = get_tolerance(tol)
        flat = self.basis.reshape(len(self), self.ambient_dim**2)
        gram = np.real(flat.conj() @ flat.T)
        if len(self) and np.max(np.abs(gram - np.eye(len(self)))) > tol.rank_tol:
            raise ValueError("basis is not orthonormal")
        sign = -1 if self.flag == "skew" else 1
        if len(self) and np.max(np.abs(self.basis - sign * dagger(self.basis))) > tol.atol:
            raise ValueError(f"basis elements are not {self.flag}")


def span(matrices: Sequence, n: int, flag: Flag = "skew", name: str = "", tol: Tolerance | None = None) -> MatrixSubspace:
    """Orthonormal basis of the real span of ``matrices``."""
    ortho = gram_schmidt(list(matrices), tol)
    return MatrixSubspace(n, np.array(ortho).reshape(-1, n, n), flag, name)


def _unit(n, j, k):
    e = np.zeros((n, n), dtype=complex)
    e[j, k] = 1
    return e


def _diag_generators(n):
    return [1j * _unit(n, k, k) for k in range(n)]


def _traceless_diag_generators(n):
    out = []
    for k in range(1, n):
        d = np.zeros(n)
        d[:k] = 1
        d[k] = -k
        out.append(1j * np.diag(d / np.sqrt(k * (k + 1))).astype(complex))
    return out


def _pair_generators(n, real=True, imag=True, select=lambda j, k: True):
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            if not select(j, k):
                continue
            if real:
                out.append((_unit(n, j, k) - _unit(n, k, j)) / np.sqrt(2))
            if imag:
                out.append(1j * (_unit(n, j, k) + _unit(n, k, j)) / np.sqrt(2))
    return out


def _theta_ii(b, j):
    return j @ np.conj(b) @ np.linalg.inv(j)


def canonical_basis(algebra: str, n: int, q: int | None = None, tol: Tolerance | None = None) -> MatrixSubspace:
    """Orthonormal basis of a standard subspace of u(n).

    ``algebra`` is one of ``u``, ``su``, ``so``, ``so_perp``, ``sp``, ``sp_perp``,
    ``aiii_k``, ``aiii_p``. ``n`` is the matrix size, except for the AIII blocks
    where the call is ``canonical_basis("aiii_k", p, q)``. All complements are
    taken inside u(n), so ``so_perp`` and ``sp_perp`` contain ``i*I``.

    Diagonal generators come first, then off-diagonal pairs in row-major order.
    """
    if algebra in ("aiii_k", "aiii_p"):
        p = n
        if q is None or p < 1 or q < 1:
            raise ValueError(f"{algebra} needs p, q > 0, got ({p}, {q})")
        size = p + q
        same = lambda j, k: (j < p) == (k < p)  # noqa: E731
        if algebra == "aiii_k":
            gens = _diag_generators(size) + _pair_generators(size, select=same)
        else:
            gens = _pair_generators(size, select=lambda j, k: not same(j, k))
        return MatrixSubspace(size, np.array(gens).reshape(-1, size, size), "skew", f"{algebra}({p},{q})")

    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if algebra == "u":
        gens = _diag_generators(n) + _pair_generators(n)
    elif algebra == "su":
        gens = _traceless_diag_generators(n) + _pair_generators(n)
    elif algebra == "so":
        gens = _pair_generators(n, imag=False)
    elif algebra == "so_perp":
        gens = _diag_generators(n) + _pair_generators(n, real=False)
    elif algebra in ("sp", "sp_perp"):
        if n % 2:
            raise ValueError(f"{algebra} requires even n, got {n}")
        j = symplectic_form(n)
        sign = 1 if algebra == "sp" else -1
        full = _diag_generators(n) + _pair_generators(n)
        return span([(b + sign * _theta_ii(b, j)) / 2 for b in full], n, "skew", f"{algebra}({n // 2})", tol)
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    return MatrixSubspace(n, np.array(gens).reshape(-1, n, n), "skew", f"{algebra}({n})")


def _coefficients(s: MatrixSubspace, flat: np.ndarray) -> np.ndarray:
    # real parts of HS inner products against each basis element
    return np.real(flat @ s.basis.reshape(len(s), -1).conj().T)


def project(s: MatrixSubspace, m) -> tuple[np.ndarray, float]:
    """Real-linear orthogonal projection of ``m`` onto ``s``.

    Returns ``(component, residual_norm)``; imaginary parts of the HS
    coefficients are not representable in a real span and end up in the residual.
    """
    m = as_matrix(m)
    if m.shape[0] != s.ambient_dim:
        raise ValueError(f"dimension mismatch: {m.shape[0]} vs {s.ambient_dim}")
    if len(s) == 0:
        return np.zeros_like(m), float(np.linalg.norm(m))
    c = _coefficients(s, m.reshape(1, -1))[0]
    comp = np.tensordot(c, s.basis, axes=1)
    return comp, float(np.linalg.norm(m - comp))


def contains(s: MatrixSubspace, m, tol: float | None = None) -> bool:
    tol = get_tolerance().atol * 10 if tol is None else tol
    m = as_matrix(m)
    _, res = project(s, m)
    return res <= tol * max(1.0, float(np.linalg.norm(m)))


def _residuals(target: MatrixSubspace, mats: np.ndarray) -> np.ndarray:
    """Projection residual norms of a stack of matrices against ``target``."""
    flat = mats.reshape(mats.shape[0], -1)
    if len(target) == 0:
        return np.linalg.norm(flat, axis=1)
    tb = target.basis.reshape(len(target), -1)
    comp = _coefficients(target, flat) @ tb
    return np.linalg.norm(flat - comp, axis=1)


@dataclass(frozen=True)
class ClosureReport:
    bracket_kind: str
    pairs_checked: int
    max_residual: float
    worst_pair: tuple[int, int] | None
    passed: bool
    tolerance: float = DEFAULT_CLOSURE_TOL

    def as_dict(self) -> dict:
        return {
            "kind": self.bracket_kind,
            "pairs_checked": self.pairs_checked,
            "max_residual": self.max_residual,
            "worst_pair": list(self.worst_pair) if self.worst_pair is not None else None,
            "passed": self.passed,
            "tolerance": self.tolerance,
        }


def _bracket(kind: BracketKind) -> Callable:
    if kind == "commutator":
        return commutator
    if kind == "anticommutator":
        return anticommutator
    raise ValueError(f"unknown bracket kind {kind!r}")


def closure_check(
    s1: MatrixSubspace,
    s2: MatrixSubspace,
    target: MatrixSubspace,
    kind: BracketKind = "commutator",
    closure_tol: float = DEFAULT_CLOSURE_TOL,
) -> ClosureReport:
    """Check ``[s1, s2]`` (or ``{s1, s2}``) lies in ``target`` on every basis pair.

    The worst pair is the first maximiser in row-major order.
    """
    if not (s1.ambient_dim == s2.ambient_dim == target.ambient_dim):
        raise ValueError("dimension mismatch between subspaces")
    _bracket(kind)
    worst, worst_pair = 0.0, None
    sign = -1 if kind == "commutator" else 1
    for i, a in enumerate(s1.basis):
        if not len(s2):
            break
        prods = a @ s2.basis + sign * (s2.basis @ a)
        res = _residuals(target, prods)
        k = int(np.argmax(res))
        if worst_pair is None or res[k] > worst:
            worst, worst_pair = float(res[k]), (i, k)
    pairs = len(s1) * len(s2)
    return ClosureReport(kind, pairs, worst, worst_pair, worst <= closure_tol, closure_tol)


def tensor_bracket_expand(a, b, c, d, kind: BracketKind = "commutator") -> np.ndarray:
    """Expand a bracket of tensor products through brackets of the factors.

    ``[A⊗B, C⊗D] = ([A,C]⊗{B,D} + {A,C}⊗[B,D]) / 2``
    ``{A⊗B, C⊗D} = ([A,C]⊗[B,D] + {A,C}⊗{B,D}) / 2``
    """
    a, b, c, d = (as_matrix(x) for x in (a, b, c, d))
    if a.shape != c.shape or b.shape != d.shape:
        raise ValueError("dimension mismatch between tensor factors")
    ac_c, ac_a = commutator(a, c), anticommutator(a, c)
    bd_c, bd_a = commutator(b, d), anticommutator(b, d)
    if kind == "commutator":
        return (np.kron(ac_c, bd_a) + np.kron(ac_a, bd_c)) / 2
    if kind == "anticommutator":
        return (np.kron(ac_c, bd_c) + np.kron(ac_a, bd_a)) / 2
    raise ValueError(f"unknown bracket kind {kind!r}")
