"""Cartan decompositions of u(n), Cartan symmetries and odd-even decompositions."""
from .factorize import (
    KAKResult,
    KPResult,
    MembershipError,
    kak_decompose_ai,
    kp_decompose,
    split_hamiltonian,
    split_propagator,
)
from .linalg import (
    BranchCutError,
    Tolerance,
    exp_skew,
    gram_schmidt,
    hs_inner,
    principal_log_unitary,
    spectral_normal,
    sqrt_unitary,
)
from .oddeven import (
    OddEvenDecomposition,
    SubsystemChoice,
    build_odd_even,
    ccd,
    classify_odd_even,
    total_involution,
    verify_odd_even,
)
from .subspaces import (
    ClosureReport,
    MatrixSubspace,
    canonical_basis,
    closure_check,
    contains,
    project,
    tensor_bracket_expand,
)
from .symmetries import (
    CartanInvolution,
    CartanType,
    NotCartanError,
    Symmetry,
    apply_involution,
    classify_involution,
    eigenspace_split,
    induced_map,
    induced_observable_map,
    involution_from_symmetry,
    is_cartan_symmetry,
    spin_y,
    symmetry_from_involution,
    time_reversal_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "KAKResult",
    "KPResult",
    "MembershipError",
    "kak_decompose_ai",
    "kp_decompose",
    "split_hamiltonian",
    "split_propagator",
    "BranchCutError",
    "Tolerance",
    "exp_skew",
    "gram_schmidt",
    "hs_inner",
    "principal_log_unitary",
    "spectral_normal",
    "sqrt_unitary",
    "OddEvenDecomposition",
    "SubsystemChoice",
    "build_odd_even",
    "ccd",
    "classify_odd_even",
    "total_involution",
    "verify_odd_even",
    "ClosureReport",
    "MatrixSubspace",
    "canonical_basis",
    "closure_check",
    "contains",
    "project",
    "tensor_bracket_expand",
    "CartanInvolution",
    "CartanType",
    "NotCartanError",
    "Symmetry",
    "apply_involution",
    "classify_involution",
    "eigenspace_split",
    "induced_map",
    "induced_observable_map",
    "involution_from_symmetry",
    "is_cartan_symmetry",
    "spin_y",
    "symmetry_from_involution",
    "time_reversal_symmetry",
]
