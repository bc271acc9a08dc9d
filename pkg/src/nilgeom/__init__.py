"""Exact classification of left-invariant geometric vector fields on metric Lie algebras."""
from .algebra import (
    MetricLieAlgebra,
    StructureConstants,
    bracket,
    center,
    is_unimodular,
    new_metric_lie_algebra,
    nilpotency_step,
)
from .catalog import abelian, build_family, family_center1, family_center2, family_center3, heisenberg3
from .connection import christoffel, divergence, lie_derivative_connection, nabla_invariant
from .exact_linalg import RationalMatrix, SolutionSpace, nullspace, rref, solve_affine
from .fields import FieldClass, classify

__all__ = [
    "FieldClass",
    "MetricLieAlgebra",
    "RationalMatrix",
    "SolutionSpace",
    "StructureConstants",
    "abelian",
    "bracket",
    "build_family",
    "center",
    "christoffel",
    "classify",
    "divergence",
    "family_center1",
    "family_center2",
    "family_center3",
    "heisenberg3",
    "is_unimodular",
    "lie_derivative_connection",
    "nabla_invariant",
    "new_metric_lie_algebra",
    "nilpotency_step",
    "nullspace",
    "rref",
    "solve_affine",
]
