"""Unique-maximum, conflict-free and odd colorings of hypergraphs and trees."""

from cfum.critical import (
    CriticalRecipe,
    ExtractionError,
    ExtractionResult,
    build_critical,
    central_edge,
    check_extraction,
    critical_tree_classes,
    find_path_or_binary,
    gap_tree,
    is_um_critical,
    odd_vs_um_consistency,
    structure_tree,
)
from cfum.hypergraph import (
    ALL_KINDS,
    CF,
    NM,
    ODD,
    RB,
    UM,
    Certificate,
    Coloring,
    ColoringKind,
    Hypergraph,
    InstanceError,
    colors_used,
    is_valid,
    parity_vector,
)
from cfum.psf import (
    PSFFamily,
    binary_odd_refuter,
    cf_b7_explicit,
    cf_b7_iterated,
    cf_color_from_psf,
    is_prefix_set_free,
    mono_subdivision_vector,
    optimize_ratio,
    psf_capacity_bound,
    psf_from_ksubsets,
)
from cfum.solvers import SolveBudget, SolveResult, chromatic_number_exact, um_tree_exact, verify_optimality_gap
from cfum.transfer import (
    PartitionedHypergraph,
    PreconditionError,
    extremal_nonuniform,
    extremal_uniform,
    um_from_cf,
    um_from_cf_uniform,
)
from cfum.trees import (
    SubdivisionWitness,
    Tree,
    complete_binary,
    odd_lower_bound_path,
    path_hypergraph,
    tree_path,
    um_color_complete_binary,
    um_color_path,
    validate_subdivision,
    verify_tree_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "CF",
    "Certificate",
    "Coloring",
    "ColoringKind",
    "CriticalRecipe",
    "ExtractionError",
    "ExtractionResult",
    "Hypergraph",
    "InstanceError",
    "NM",
    "ODD",
    "PSFFamily",
    "PartitionedHypergraph",
    "PreconditionError",
    "RB",
    "SolveBudget",
    "SolveResult",
    "SubdivisionWitness",
    "Tree",
    "UM",
    "binary_odd_refuter",
    "build_critical",
    "central_edge",
    "cf_b7_explicit",
    "cf_b7_iterated",
    "cf_color_from_psf",
    "check_extraction",
    "chromatic_number_exact",
    "colors_used",
    "complete_binary",
    "critical_tree_classes",
    "extremal_nonuniform",
    "extremal_uniform",
    "find_path_or_binary",
    "gap_tree",
    "is_prefix_set_free",
    "is_um_critical",
    "is_valid",
    "mono_subdivision_vector",
    "odd_lower_bound_path",
    "odd_vs_um_consistency",
    "optimize_ratio",
    "parity_vector",
    "path_hypergraph",
    "psf_capacity_bound",
    "psf_from_ksubsets",
    "structure_tree",
    "tree_path",
    "um_color_complete_binary",
    "um_color_path",
    "um_from_cf",
    "um_from_cf_uniform",
    "um_tree_exact",
    "validate_subdivision",
    "verify_optimality_gap",
    "verify_tree_coloring",
]
