"""Odd-even Cartan decompositions of multipartite systems.

Each subsystem ``j`` carries an AI or AII decomposition ``u(n_j) = K_j + P_j``.
Write ``sigma`` for an orthonormal Hermitian basis of ``i K_j`` and ``S`` for one
of ``i P_j``. Tensor words with an odd number of ``sigma`` factors span ``I_o``,
words with an even number span ``I_e``; ``i I_o`` is the compact subalgebra of
the total decomposition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .linalg import as_matrix, gram_schmidt, is_unitary
from .subspaces import (
    DEFAULT_CLOSURE_TOL,
    ClosureReport,
    MatrixSubspace,
    _residuals,
    canonical_basis,
    closure_check,
)
from .symmetries import (
    CartanInvolution,
    InducedInvolution,
    Symmetry,
    symmetry_from_involution,
)

__all__ = [
    "SubsystemChoice",
    "OddEvenDecomposition",
    "OddEvenReport",
    "build_odd_even",
    "classify_odd_even",
    "total_involution",
    "verify_odd_even",
    "ccd",
    "expected_dim_k",
]


@dataclass(frozen=True, eq=False)
class SubsystemChoice:
    dim: int
    decomposition_type: Literal["AI", "AII"]
    T: np.ndarray | None = None

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ValueError(f"subsystem dimension must be a positive integer, got {self.dim!r}")
        if self.decomposition_type not in ("AI", "AII"):
            raise ValueError(f"subsystem type must be 'AI' or 'AII', got {self.decomposition_type!r}")
        if self.decomposition_type == "AII" and self.dim % 2:
            raise ValueError(f"AII requires even dimension, got {self.dim}")
        if self.T is not None:
            t = as_matrix(self.T)
            if t.shape[0] != self.dim or not is_unitary(t, 1e-9):
                raise ValueError(f"T must be a {self.dim}x{self.dim} unitary")

    @property
    def involution(self) -> CartanInvolution:
        return CartanInvolution(self.decomposition_type, self.dim, T=self.T)


def _as_choice(c) -> SubsystemChoice:
    if isinstance(c, SubsystemChoice):
        return c
    return SubsystemChoice(*c)


def expected_dim_k(n: int, cartan_type: str) -> int:
    """Dimension of K inside u(n): ``n(n-1)/2`` for AI, ``n(n+1)/2`` for AII."""
    return n * (n - 1) // 2 if cartan_type == "AI" else n * (n + 1) // 2


@dataclass(frozen=True, eq=False)
class OddEvenDecomposition:
    choices: tuple[SubsystemChoice, ...]
    total_dim: int
    sigma_bases: tuple[MatrixSubspace, ...]
    s_bases: tuple[MatrixSubspace, ...]
    I_o: MatrixSubspace
    I_e: MatrixSubspace
    r: int
    predicted_type: Literal["AI", "AII"]
    # per basis element of I_o / I_e: the local basis index in each slot
    words_o: tuple[tuple[int, ...], ...] = field(default=())
    words_e: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.choices)


def _local_bases(choice: SubsystemChoice) -> tuple[MatrixSubspace, MatrixSubspace]:
    n = choice.dim
    k = canonical_basis("so" if choice.decomposition_type == "AI" else "sp", n)
    if choice.T is not None:
        k = k.conjugated(choice.T)
    sigma = k.times_i()
    # i P_j contains the identity; put I/sqrt(n) first
    p_herm = k.complement().times_i()
    s = gram_schmidt([np.eye(n) / np.sqrt(n)] + list(p_herm.basis))
    return sigma, MatrixSubspace(n, np.array(s), "hermitian", f"S_{n}")


def build_odd_even(choices: Sequence) -> OddEvenDecomposition:
    """Assemble ``I_o`` and ``I_e`` from per-subsystem AI/AII choices.

    ``choices`` holds :class:`SubsystemChoice` objects or ``(dim, type[, T])`` tuples.
    Words are enumerated by a mixed-radix counter (first subsystem most
    significant), with each slot running over its sigma elements before its S
    elements.
    """
    choices = tuple(_as_choice(c) for c in choices)
    if not choices:
        raise ValueError("need at least one subsystem")
    sig, ess = zip(*(_local_bases(c) for c in choices))
    local = [np.concatenate([s.basis, e.basis]) for s, e in zip(sig, ess)]
    n_sigma = [len(s) for s in sig]
    n = int(np.prod([c.dim for c in choices]))

    odd, even, w_o, w_e = [], [], [], []
    for word in itertools.product(*(range(len(b)) for b in local)):
        m = np.ones((1, 1), dtype=complex)
        for j, idx in enumerate(word):
            m = np.kron(m, local[j][idx])
        parity = sum(idx < n_sigma[j] for j, idx in enumerate(word)) % 2
        (odd if parity else even).append(m)
        (w_o if parity else w_e).append(word)

    r = sum(c.decomposition_type == "AII" for c in choices)
    return OddEvenDecomposition(
        choices=choices,
        total_dim=n,
        sigma_bases=tuple(sig),
        s_bases=tuple(ess),
        I_o=MatrixSubspace(n, np.array(odd).reshape(-1, n, n), "hermitian", "I_o"),
        I_e=MatrixSubspace(n, np.array(even).reshape(-1, n, n), "hermitian", "I_e"),
        r=r,
        predicted_type="AII" if r % 2 else "AI",
        words_o=tuple(w_o),
        words_e=tuple(w_e),
    )


def classify_odd_even(choices: Sequence) -> Literal["AI", "AII"]:
    """AII when an odd number of subsystems use AII, AI otherwise."""
    choices = [_as_choice(c) for c in choices]
    if not choices:
        raise ValueError("need at least one subsystem")
    r = sum(c.decomposition_type == "AII" for c in choices)
    return "AII" if r % 2 else "AI"


def total_involution(d: OddEvenDecomposition) -> tuple[InducedInvolution, Symmetry]:
    """Involution on u(n) whose +1 eigenspace is ``i I_o``, with its symmetry.

    The symmetry is ``(X_1 ⊗ ... ⊗ X_N) K``; every factor is antiunitary so the
    conjugations merge into a single global one.
    """
    x = np.ones((1, 1), dtype=complex)
    for c in d.choices:
        x = np.kron(x, symmetry_from_involution(c.involution).X)
    s = Symmetry("antiunitary", x)
    return InducedInvolution(s), s


@dataclass(frozen=True)
class OddEvenReport:
    relations: dict[str, ClosureReport]
    dim_io: int
    dim_ie: int
    expected_dim_io: int
    dims_ok: bool
    mode: str
    seed: int | None
    passed: bool

    def as_dict(self) -> dict:
        return {
            "relations": {k: v.as_dict() for k, v in self.relations.items()},
            "dim_io": self.dim_io,
            "dim_ie": self.dim_ie,
            "expected_dim_io": self.expected_dim_io,
            "dims_ok": self.dims_ok,
            "mode": self.mode,
            "seed": self.seed,
            "passed": self.passed,
        }


# (name, kind, left, right, target); "o"/"e" refer to I_o/I_e, multiplied by i for commutators
RELATIONS = (
    ("[iIo,iIo]<=iIo", "commutator", "o", "o", "o"),
    ("[iIo,iIe]<=iIe", "commutator", "o", "e", "e"),
    ("[iIe,iIe]<=iIo", "commutator", "e", "e", "o"),
    ("{Io,Io}<=Ie", "anticommutator", "o", "o", "e"),
    ("{Io,Ie}<=Io", "anticommutator", "o", "e", "o"),
    ("{Ie,Ie}<=Ie", "anticommutator", "e", "e", "e"),
)


def _sampled_check(s1, s2, target, kind, samples, rng, closure_tol) -> ClosureReport:
    def draw(s):
        c = rng.normal(size=(samples, len(s)))
        c /= np.linalg.norm(c, axis=1, keepdims=True)
        return np.tensordot(c, s.basis, axes=1)

    a, b = draw(s1), draw(s2)
    sign = -1 if kind == "commutator" else 1
    res = _residuals(target, a @ b + sign * (b @ a))
    k = int(np.argmax(res))
    worst = float(res[k])
    return ClosureReport(kind, samples, worst, (k, k), worst <= closure_tol, closure_tol)


def verify_odd_even(
    d: OddEvenDecomposition,
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    exhaustive_cap: int = 16,
    samples: int = 2000,
    seed: int | None = None,
    closure_tol: float = DEFAULT_CLOSURE_TOL,
) -> OddEvenReport:
    """Check the six closure relations and the dimension count of a decomposition.

    Exhaustive mode brackets every pair of basis elements and is limited to
    ``n <= exhaustive_cap``. Sampled mode brackets ``samples`` pairs of random
    unit-norm elements drawn with ``seed`` (chosen and recorded if not given).
    """
    n = d.total_dim
    if mode == "exhaustive":
        if n > exhaustive_cap:
            raise ValueError(f"n = {n} exceeds the exhaustive cap {exhaustive_cap}; use mode='sampled'")
        seed = None
    elif mode == "sampled":
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % 2**32)
        rng = np.random.default_rng(seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    spaces = {"o": d.I_o, "e": d.I_e}
    skew = {"o": d.I_o.times_i(), "e": d.I_e.times_i()}
    relations = {}
    for name, kind, left, right, target in RELATIONS:
        pool = skew if kind == "commutator" else spaces
        if mode == "exhaustive":
            rep = closure_check(pool[left], pool[right], pool[target], kind, closure_tol)
        else:
            rep = _sampled_check(pool[left], pool[right], pool[target], kind, samples, rng, closure_tol)
        relations[name] = rep

    expected = expected_dim_k(n, d.predicted_type)
    dims_ok = len(d.I_o) == expected and len(d.I_o) + len(d.I_e) == n * n
    passed = dims_ok and all(r.passed for r in relations.values())
    return OddEvenReport(relations, len(d.I_o), len(d.I_e), expected, dims_ok, mode, seed, passed)


def ccd(N: int) -> OddEvenDecomposition:
    """Concurrence canonical decomposition: ``N`` qubits, each with the AII split."""
    if N < 1:
        raise ValueError(f"need at least one qubit, got {N}")
    return build_odd_even([SubsystemChoice(2, "AII")] * N)
