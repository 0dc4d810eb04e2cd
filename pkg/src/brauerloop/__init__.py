"""Exact integer ground states of the periodic Brauer loop model on chord diagrams."""

from .checks import (
    REFERENCE,
    CheckResult,
    MonteCarloReport,
    ReferenceOracles,
    concatenate_labels,
    long_permutation_sequence,
    monte_carlo_crosscheck,
    permutation_weight_table,
    verify_degrees,
    verify_factorization,
    verify_integrality,
    verify_maximality,
    verify_sum_rule,
)
from .counting import (
    NonIntegerError,
    OddProductError,
    class_count,
    double_factorial,
    euler_totient,
    involution_term,
    pairings_fixed_by_rotation,
)
from .diagrams import (
    DEFECT,
    UNDEFINED,
    ChordDiagram,
    DiagramBasis,
    PartialPermutation,
    Permutation,
    SymmetryOrbit,
    canonical_representative,
    compute_orbits,
    diagram_of_label,
    enumerate_diagrams,
    partial_permutation_label,
    permutation_label,
    reflect,
    rotate,
)
from .generators import RelationReport, apply_braid, apply_monoid, check_relations
from .hamiltonian import (
    IntensityMatrix,
    annihilates,
    build_full,
    build_reduced,
    connectivity_check,
)
from .kernel import (
    CacheCorruptError,
    DisconnectedMatrixError,
    GroundState,
    KernelDimensionError,
    MixedSignsError,
    OrbitWeight,
    groundstate,
    kernel_vector,
    normalize_integer,
)

__version__ = "0.1.0"

__all__ = [
    "REFERENCE",
    "CheckResult",
    "MonteCarloReport",
    "ReferenceOracles",
    "concatenate_labels",
    "long_permutation_sequence",
    "monte_carlo_crosscheck",
    "permutation_weight_table",
    "verify_degrees",
    "verify_factorization",
    "verify_integrality",
    "verify_maximality",
    "verify_sum_rule",
    "NonIntegerError",
    "OddProductError",
    "class_count",
    "double_factorial",
    "euler_totient",
    "involution_term",
    "pairings_fixed_by_rotation",
    "DEFECT",
    "UNDEFINED",
    "ChordDiagram",
    "DiagramBasis",
    "PartialPermutation",
    "Permutation",
    "SymmetryOrbit",
    "canonical_representative",
    "compute_orbits",
    "diagram_of_label",
    "enumerate_diagrams",
    "partial_permutation_label",
    "permutation_label",
    "reflect",
    "rotate",
    "RelationReport",
    "apply_braid",
    "apply_monoid",
    "check_relations",
    "IntensityMatrix",
    "annihilates",
    "build_full",
    "build_reduced",
    "connectivity_check",
    "CacheCorruptError",
    "DisconnectedMatrixError",
    "GroundState",
    "KernelDimensionError",
    "MixedSignsError",
    "OrbitWeight",
    "groundstate",
    "kernel_vector",
    "normalize_integer",
    "__version__",
]
