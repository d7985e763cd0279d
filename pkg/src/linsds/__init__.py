"""Exact linear sequential dynamical systems over finite and rational fields."""

from .config import Settings
from .cut import (
    ChainPartition,
    Cut,
    constructive_check,
    cut_identity_check,
    random_cut_instance,
)
from .exceptions import (
    LinearSDSError,
    NotAPermutationError,
    NotInvertibleError,
    SingularMatrixError,
    StateSpaceTooLargeError,
    SupportViolationError,
    ValidationError,
    VerificationError,
)
from .field import FieldSpec, Scalar
from .graph import Graph, circ, expand_graph
from .linalg import LUFactors, Matrix, NoLU, lu_decompose, lup_decompose, mat_inv, restrict_after
from .phase import PhaseSpace, enumerate_phase_space, fixed_points_algebraic
from .poset import IncidenceElement, Poset, moebius, poset_from_acyclic_orientation, zeta
from .sds import (
    LinearSDS,
    Schedule,
    compose_oracle,
    invert_sds,
    lu_synthesize,
    lup_synthesize,
    moebius_via_sds,
    par_matrix,
    system_matrix_perm,
)
from .wordsds import block_compress, block_expand, lift_word, system_matrix, system_matrix_word

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Settings",
    # Arithmetic
    "FieldSpec",
    "Scalar",
    "Matrix",
    "LUFactors",
    "NoLU",
    "lu_decompose",
    "lup_decompose",
    "mat_inv",
    "restrict_after",
    # Structures
    "Graph",
    "circ",
    "expand_graph",
    "Poset",
    "IncidenceElement",
    "zeta",
    "moebius",
    "poset_from_acyclic_orientation",
    # Systems
    "LinearSDS",
    "Schedule",
    "par_matrix",
    "compose_oracle",
    "system_matrix",
    "system_matrix_perm",
    "system_matrix_word",
    "block_expand",
    "block_compress",
    "lift_word",
    "invert_sds",
    "lu_synthesize",
    "lup_synthesize",
    "moebius_via_sds",
    # Cuts
    "ChainPartition",
    "Cut",
    "cut_identity_check",
    "constructive_check",
    "random_cut_instance",
    # Phase space
    "PhaseSpace",
    "enumerate_phase_space",
    "fixed_points_algebraic",
    # Exceptions
    "LinearSDSError",
    "ValidationError",
    "VerificationError",
    "SingularMatrixError",
    "NotAPermutationError",
    "NotInvertibleError",
    "SupportViolationError",
    "StateSpaceTooLargeError",
]
