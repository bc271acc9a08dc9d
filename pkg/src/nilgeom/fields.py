"""Left-invariant geometric vector fields as solution spaces of exact linear systems.

Each classifier assembles a homogeneous (or, for concurrent fields, affine)
system in the coordinates ``a_1..a_n`` of ``X = sum a_k e_k`` and solves it
through :mod:`nilgeom.exact_linalg`. Symmetric conditions are imposed once
per unordered pair ``i <= j``.
"""
from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .algebra import MetricLieAlgebra, bracket
from .catalog import NILMANIFOLD_FAMILIES
from .connection import ChristoffelTensor, divergence, lie_derivative_connection
from .errors import NotUnimodular
from .exact_linalg import (
    Feasibility,
    RationalMatrix,
    SolutionSpace,
    Vector,
    dot,
    format_rational,
    nullspace,
    solve_affine,
    unit_vector,
)
from .forms import InvariantForm, laplacian_matrix


class FieldClass(enum.Enum):
    KILLING = "Killing"
    CONFORMAL = "Conformal"
    AFFINE = "Affine"
    PROJECTIVE = "Projective"
    CONCURRENT = "Concurrent"
    HARMONIC = "Harmonic"


def _pairs(n: int):
    return combinations_with_replacement(range(n), 2)


def killing_system(g: ChristoffelTensor) -> RationalMatrix:
    """Rows (i <= j): sum_k a_k (Gamma^j_ik + Gamma^i_jk)."""
    n, gam = g.dim, g.gamma
    return RationalMatrix.from_rows(
        [[gam[i][k][j] + gam[j][k][i] for k in range(n)] for i, j in _pairs(n)], cols=n
    )


def killing_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> SolutionSpace:
    return nullspace(killing_system(g))


def ad_skew_system(alg: MetricLieAlgebra) -> RationalMatrix:
    """Rows (u <= v): <[X, e_u], e_v> + <e_u, [X, e_v]>, with no connection involved."""
    n, c = alg.dim, alg.constants.c
    return RationalMatrix.from_rows(
        [[c[k][u][v] + c[k][v][u] for k in range(n)] for u, v in _pairs(n)], cols=n
    )


def ad_skew_space(alg: MetricLieAlgebra) -> SolutionSpace:
    return nullspace(ad_skew_system(alg))


def divergence_row(g: ChristoffelTensor) -> Vector:
    n = g.dim
    return tuple(divergence(g, unit_vector(n, k)) for k in range(n))


def conformal_system(g: ChristoffelTensor) -> RationalMatrix:
    """Killing rows shifted by (2/n) div(X) on the diagonal pairs."""
    n = g.dim
    div = divergence_row(g)
    killing = killing_system(g)
    rows = []
    for r, (i, j) in enumerate(_pairs(n)):
        row = list(killing.row(r))
        if i == j:
            row = [x - Fraction(2, n) * d for x, d in zip(row, div)]
        rows.append(row)
    return RationalMatrix.from_rows(rows, cols=n)


def conformal_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> SolutionSpace:
    return nullspace(conformal_system(g))


def _lie_derivative_columns(alg: MetricLieAlgebra, g: ChristoffelTensor):
    # L_X nabla is linear in X, so one tensor per basis field suffices
    n = alg.dim
    return [lie_derivative_connection(alg, g, unit_vector(n, k)) for k in range(n)]


def affine_system(alg: MetricLieAlgebra, g: ChristoffelTensor) -> RationalMatrix:
    """Rows (i <= j, l): component l of (L_X nabla)(e_i, e_j)."""
    n = alg.dim
    tensors = _lie_derivative_columns(alg, g)
    return RationalMatrix.from_rows(
        [[t.t[i][j][l] for t in tensors] for i, j in _pairs(n) for l in range(n)], cols=n
    )


def affine_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> SolutionSpace:
    return nullspace(affine_system(alg, g))


@dataclass(frozen=True)
class ProjectiveSolution:
    """Joint solutions (a, alpha) of (L_X nabla)(U, V) = alpha(U) V + alpha(V) U."""

    field_space: SolutionSpace
    x_projection: SolutionSpace
    alpha_forced_zero: bool

    @property
    def dimension(self) -> int:
        return self.x_projection.dimension

    def to_json(self) -> dict:
        out = self.x_projection.to_json()
        out["alpha_forced_zero"] = self.alpha_forced_zero
        out["joint_dimension"] = self.field_space.dimension
        return out


def projective_system(alg: MetricLieAlgebra, g: ChristoffelTensor) -> RationalMatrix:
    """Unknowns (a_1..a_n, alpha_1..alpha_n); rows (i <= j, l)."""
    n = alg.dim
    tensors = _lie_derivative_columns(alg, g)
    rows = []
    for i, j in _pairs(n):
        for l in range(n):
            alpha = [Fraction(0)] * n
            if l == j:
                alpha[i] -= 1
            if l == i:
                alpha[j] -= 1
            rows.append([t.t[i][j][l] for t in tensors] + alpha)
    return RationalMatrix.from_rows(rows, cols=2 * n)


def projective_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> ProjectiveSolution:
    n = alg.dim
    joint = nullspace(projective_system(alg, g))
    x_part = SolutionSpace.span([v[:n] for v in joint.basis], n)
    forced = all(x == 0 for v in joint.basis for x in v[n:])
    return ProjectiveSolution(joint, x_part, forced)


def concurrent_system(g: ChristoffelTensor) -> tuple[RationalMatrix, Vector]:
    """Rows (i, l): sum_k a_k Gamma^l_ik = delta_il, i.e. nabla_{e_i} X = e_i."""
    n, gam = g.dim, g.gamma
    m = RationalMatrix.from_rows(
        [[gam[i][k][l] for k in range(n)] for i in range(n) for l in range(n)], cols=n
    )
    rhs = tuple(Fraction(int(i == l)) for i in range(n) for l in range(n))
    return m, rhs


def concurrent_solve(alg: MetricLieAlgebra, g: ChristoffelTensor) -> Feasibility:
    return solve_affine(*concurrent_system(g))


def harmonic_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> SolutionSpace:
    """Fields whose metric dual lies in the kernel of the degree-1 Hodge Laplacian."""
    # flat is the identity on coordinates, so the kernel is already in field coordinates
    return nullspace(laplacian_matrix(alg, 1))


def delta_d_flat_expansion(
    alg: MetricLieAlgebra, g: ChristoffelTensor, x: Sequence
) -> InvariantForm:
    """delta(d X^flat)(e_j) = -sum_{i,k} (Gamma^k_ii <X,[e_k,e_j]> + Gamma^k_ij <X,[e_i,e_k]>).

    The connection-based expansion, evaluated term by term. Only meaningful
    alongside ``div X = 0``; compare with :func:`harmonic_space`.
    """
    n, gam = alg.dim, g.gamma
    x = [Fraction(v) for v in x]
    basis = [unit_vector(n, i) for i in range(n)]
    pair = [[dot(x, bracket(alg, basis[a], basis[b])) for b in range(n)] for a in range(n)]
    coords = []
    for j in range(n):
        total = Fraction(0)
        for i in range(n):
            for k in range(n):
                total += gam[i][i][k] * pair[k][j] + gam[i][j][k] * pair[i][k]
        coords.append(-total)
    return InvariantForm(1, tuple(coords))


def expansion_harmonic_space(alg: MetricLieAlgebra, g: ChristoffelTensor) -> SolutionSpace:
    """{X : delta_d_flat_expansion(X) = 0 and div X = 0}, the connection-side route."""
    n = alg.dim
    columns = [delta_d_flat_expansion(alg, g, unit_vector(n, k)).coords for k in range(n)]
    m = RationalMatrix.from_columns(columns, rows=n)
    return nullspace(m.vstack(RationalMatrix.from_rows([divergence_row(g)], cols=n)))


# --- reporting ---------------------------------------------------------------

def describe_space(space: SolutionSpace) -> str:
    """``span{e1, e3}`` when the canonical basis is made of unit vectors, else explicit vectors."""
    if space.dimension == 0:
        return "{0}"
    parts = []
    for v in space.basis:
        nonzero = [k for k, x in enumerate(v) if x != 0]
        if len(nonzero) == 1 and v[nonzero[0]] == 1:
            parts.append(f"e{nonzero[0] + 1}")
        else:
            parts.append("(" + ", ".join(format_rational(x) for x in v) + ")")
    return "span{" + ", ".join(parts) + "}"


def units(n: int, indices: Sequence[int]) -> SolutionSpace:
    """Span of the 1-based unit vectors ``e_i``."""
    return SolutionSpace.span([unit_vector(n, i - 1) for i in indices], n)


# claimed center and harmonic fields per family, 1-based basis indices
CLAIMED_CENTER = {"center1": (5,), "center2": (4, 5), "center3": (3, 4, 5)}
CLAIMED_HARMONIC = {"center1": (1, 2, 3, 4), "center2": (1, 2, 3), "center3": (1, 2, 4, 5)}
CLAIMED_KILLING_DIM = 4


@dataclass(frozen=True)
class Expectation:
    source: str
    claim: str
    expected: str
    computed: str

    @property
    def verdict(self) -> str:
        return "matches" if self.expected == self.computed else "differs"

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "claim": self.claim,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class NotComputed:
    reason: str

    def to_json(self) -> dict:
        return {"not_computed": self.reason}


@dataclass(frozen=True)
class ClassificationReport:
    algebra_id: str
    parameters: Mapping[str, Fraction]
    per_class: Mapping[FieldClass, object]
    expectations: tuple[Expectation, ...] = field(default_factory=tuple)

    def dimension(self, cls: FieldClass) -> int | None:
        entry = self.per_class[cls]
        return getattr(entry, "dimension", None)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra_id,
            "parameters": {k: format_rational(v) for k, v in sorted(self.parameters.items())},
            "classes": {cls.value: self.per_class[cls].to_json() for cls in FieldClass},
            "expectations": [e.to_json() for e in self.expectations],
        }


def expectations_for(alg: MetricLieAlgebra, per_class: Mapping[FieldClass, object],
                     conformal_equals_killing: bool) -> tuple[Expectation, ...]:
    family = alg.label
    if family not in NILMANIFOLD_FAMILIES:
        return ()
    n = alg.dim
    concurrent = per_class[FieldClass.CONCURRENT]
    projective = per_class[FieldClass.PROJECTIVE]
    harmonic = per_class[FieldClass.HARMONIC]
    center_text = describe_space(units(n, CLAIMED_CENTER[family]))
    return (
        Expectation(
            "Theorem 1", "no invariant concurrent field", "infeasible",
            "feasible" if concurrent.feasible else "infeasible",
        ),
        Expectation(
            "Theorem 2", "every invariant projective field is affine", "alpha = 0",
            "alpha = 0" if projective.alpha_forced_zero else "alpha not forced to 0",
        ),
        Expectation(
            "Theorem 2", "projective fields = center", center_text,
            describe_space(projective.x_projection),
        ),
        Expectation(
            "Theorem 2", "affine fields = center", center_text,
            describe_space(per_class[FieldClass.AFFINE]),
        ),
        Expectation(
            "Theorem 3", "conformal fields = Killing fields", "conformal = Killing",
            "conformal = Killing" if conformal_equals_killing else "conformal != Killing",
        ),
        Expectation(
            "Theorem 4", "Killing algebra is four-dimensional", f"dim {CLAIMED_KILLING_DIM}",
            f"dim {per_class[FieldClass.KILLING].dimension}",
        ),
        Expectation(
            "Theorem 5", "harmonic fields",
            describe_space(units(n, CLAIMED_HARMONIC[family])),
            describe_space(harmonic) if isinstance(harmonic, SolutionSpace) else "not computed",
        ),
    )


def classify(alg: MetricLieAlgebra, g: ChristoffelTensor) -> ClassificationReport:
    per_class: dict[FieldClass, object] = {
        FieldClass.KILLING: killing_space(alg, g),
        FieldClass.CONFORMAL: conformal_space(alg, g),
        FieldClass.AFFINE: affine_space(alg, g),
        FieldClass.PROJECTIVE: projective_space(alg, g),
        FieldClass.CONCURRENT: concurrent_solve(alg, g),
    }
    try:
        per_class[FieldClass.HARMONIC] = harmonic_space(alg, g)
    except NotUnimodular:
        per_class[FieldClass.HARMONIC] = NotComputed("NotUnimodular")
    same = per_class[FieldClass.CONFORMAL] == per_class[FieldClass.KILLING]
    return ClassificationReport(
        algebra_id=alg.label,
        parameters=dict(alg.parameters),
        per_class=per_class,
        expectations=expectations_for(alg, per_class, same),
    )
