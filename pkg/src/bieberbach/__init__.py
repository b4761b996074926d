"""Exact-arithmetic toolkit for deciding diffuseness of Bieberbach groups."""

from .affine import (
    AffineElement,
    GroupSpec,
    HolonomyGroup,
    ValidationReport,
    compose,
    conjugate,
    fixed_space_rank,
    holonomy_closure,
    inverse,
    is_torsion_free,
    validate,
)
from .calabi import Reduction, calabi_map, kernel_group, splitting_basis
from .catalog import (
    Catalog,
    ClassificationTable,
    classify_catalog,
    load_catalog,
    parse_group,
    serialize_group,
)
from .decider import Outcome, Verdict, decide, shortcut_verdict
from .finite_groups import is_solvable, sylow_all_cyclic
from .hw import HWReport, hw_search, hw_standard, verify_embedding
from .linalg import DioSolution, Infeasible, hnf, snf, solve_diophantine
from .witness import ElementSet, ball, extremal_points, peel, verify_no_extremal_certificate

__all__ = [
    "AffineElement",
    "GroupSpec",
    "HolonomyGroup",
    "ValidationReport",
    "Catalog",
    "ClassificationTable",
    "Reduction",
    "Outcome",
    "Verdict",
    "HWReport",
    "ElementSet",
    "DioSolution",
    "Infeasible",
    "compose",
    "conjugate",
    "inverse",
    "holonomy_closure",
    "fixed_space_rank",
    "is_torsion_free",
    "validate",
    "calabi_map",
    "kernel_group",
    "splitting_basis",
    "classify_catalog",
    "load_catalog",
    "parse_group",
    "serialize_group",
    "decide",
    "shortcut_verdict",
    "is_solvable",
    "sylow_all_cyclic",
    "hw_search",
    "hw_standard",
    "verify_embedding",
    "hnf",
    "snf",
    "solve_diophantine",
    "ball",
    "extremal_points",
    "peel",
    "verify_no_extremal_certificate",
]

__version__ = "0.1.0"
