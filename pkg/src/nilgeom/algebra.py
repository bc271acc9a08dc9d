"""Metric Lie algebras given by structure constants in an orthonormal basis.

Internally indices are 0-based: ``c[i][j][k]`` is the coefficient of
``e_k`` in ``[e_i, e_j]``. The JSON form and all user-facing messages use
1-based indices.
"""
from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    InputFormatError,
    JacobiViolation,
    ZeroDimension,
)
from .exact_linalg import (
    RationalMatrix,
    SolutionSpace,
    Vector,
    format_rational,
    nullspace,
    parse_rational,
    unit_vector,
)

Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class StructureConstants:
    dim: int
    c: Tensor3

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise ZeroDimension("algebra dimension must be at least 1")
        if len(self.c) != n or any(
            len(row) != n or any(len(col) != n for col in row) for row in self.c
        ):
            raise DimensionMismatch(f"structure tensor is not {n}x{n}x{n}")

    @classmethod
    def zeros(cls, dim: int) -> StructureConstants:
        z = Fraction(0)
        return cls(dim, tuple(tuple((z,) * dim for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_tensor(cls, dim: int, values: Mapping[tuple[int, int, int], object]) -> StructureConstants:
        """Raw tensor from 1-based ``{(i, j, k): c^k_ij}``; no antisymmetric completion."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in values.items():
            c[i - 1][j - 1][k - 1] = parse_rational(value)
        return cls(dim, tuple(tuple(tuple(col) for col in row) for row in c))

    @classmethod
    def from_brackets(
        cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]]
    ) -> StructureConstants:
        """Build from 1-based ``{(i, j): {k: coeff}}`` with i < j, completing antisymmetrically."""
        values: dict[tuple[int, int, int], Fraction] = {}
        for (i, j), coeffs in brackets.items():
            if not (1 <= i < j <= dim):
                raise InputFormatError(f"bracket pair ({i}, {j}) must satisfy 1 <= i < j <= {dim}")
            for k, value in coeffs.items():
                if not 1 <= k <= dim:
                    raise InputFormatError(f"bracket target index {k} out of range 1..{dim}")
                q = parse_rational(value)
                values[(i, j, k)] = q
                values[(j, i, k)] = -q
        return cls.from_tensor(dim, values)

    def scaled(self, t) -> StructureConstants:
        t = Fraction(t)
        return StructureConstants(
            self.dim, tuple(tuple(tuple(t * x for x in col) for col in row) for row in self.c)
        )

    def permuted(self, perm: Sequence[int]) -> StructureConstants:
        """Relabel basis vectors: old ``e_i`` becomes new ``e_{perm[i]}`` (0-based)."""
        n = self.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c[perm[i]][perm[j]][perm[k]] = self.c[i][j][k]
        return StructureConstants(n, tuple(tuple(tuple(col) for col in row) for row in c))

    def nonzero_brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """1-based ``{(i, j): {k: coeff}}`` for i < j, nonzero entries only."""
        out = {}
        for i, j in combinations(range(self.dim), 2):
            coeffs = {k + 1: v for k, v in enumerate(self.c[i][j]) if v != 0}
            if coeffs:
                out[(i + 1, j + 1)] = coeffs
        return out


def check_antisymmetry(sc: StructureConstants) -> None:
    n, c = sc.dim, sc.c
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise AntisymmetryViolation(i + 1, j + 1, k + 1)


def check_jacobi(sc: StructureConstants) -> None:
    # with antisymmetry in place the cyclic sum is alternating in (i, j, k)
    n, c = sc.dim, sc.c
    for i, j, k in combinations(range(n), 3):
        for l in range(n):
            total = sum(
                c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                for m in range(n)
            )
            if total != 0:
                raise JacobiViolation(i + 1, j + 1, k + 1, l + 1)


def _bracket(sc: StructureConstants, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    n, c = sc.dim, sc.c
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            w = x[i] * y[j]
            row = c[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += w * row[k]
    return tuple(out)


def _lower_central_step(sc: StructureConstants) -> int | None:
    n = sc.dim
    basis = [unit_vector(n, i) for i in range(n)]
    term = SolutionSpace.full(n)
    for s in range(1, n + 1):
        term = SolutionSpace.span(
            [_bracket(sc, x, y) for x in basis for y in term.basis], n
        )
        if term.dimension == 0:
            return s
    return None


@dataclass(frozen=True)
class MetricLieAlgebra:
    """A validated Lie algebra with the identity metric in its given basis.

    ``step`` is the nilpotency step, or ``None`` when the algebra is not nilpotent.
    ``label`` and ``parameters`` identify catalog members; custom input uses
    ``"custom"`` and an empty mapping.
    """

    constants: StructureConstants
    center_basis: SolutionSpace
    derived_basis: SolutionSpace
    step: int | None
    unimodular: bool
    label: str = "custom"
    parameters: Mapping[str, Fraction] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.constants.dim

    def ad_matrix(self, x: Sequence[Fraction]) -> RationalMatrix:
        """Matrix of ``ad_x`` acting on column vectors."""
        n = self.dim
        return RationalMatrix.from_columns(
            [bracket(self, x, unit_vector(n, j)) for j in range(n)], rows=n
        )


def new_metric_lie_algebra(
    sc: StructureConstants,
    label: str = "custom",
    parameters: Mapping[str, Fraction] | None = None,
) -> MetricLieAlgebra:
    check_antisymmetry(sc)
    check_jacobi(sc)
    n, c = sc.dim, sc.c
    # x central iff sum_i x_i c^k_ij = 0 for every (j, k)
    center_system = RationalMatrix.from_rows(
        [[c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)], cols=n
    )
    derived = SolutionSpace.span([c[i][j] for i, j in combinations(range(n), 2)], n)
    unimodular = all(sum(c[i][k][k] for k in range(n)) == 0 for i in range(n))
    return MetricLieAlgebra(
        constants=sc,
        center_basis=nullspace(center_system),
        derived_basis=derived,
        step=_lower_central_step(sc),
        unimodular=unimodular,
        label=label,
        parameters=dict(parameters or {}),
    )


def bracket(alg: MetricLieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionMismatch(
            f"bracket of vectors with lengths {len(x)}, {len(y)} in dimension {alg.dim}"
        )
    return _bracket(alg.constants, [Fraction(v) for v in x], [Fraction(v) for v in y])


def center(alg: MetricLieAlgebra) -> SolutionSpace:
    return alg.center_basis


def derived_algebra(alg: MetricLieAlgebra) -> SolutionSpace:
    return alg.derived_basis


def nilpotency_step(alg: MetricLieAlgebra) -> int | None:
    return alg.step


def is_unimodular(alg: MetricLieAlgebra) -> bool:
    return alg.unimodular


def trace_ad(alg: MetricLieAlgebra, x: Sequence) -> Fraction:
    m = alg.ad_matrix([Fraction(v) for v in x])
    return sum((m[i, i] for i in range(alg.dim)), Fraction(0))


# JSON: {"dim": n, "brackets": [{"i": 1, "j": 2, "coeffs": {"5": "1/2"}}, ...]}

def algebra_from_json(payload: Mapping) -> MetricLieAlgebra:
    if not isinstance(payload, Mapping) or "dim" not in payload:
        raise InputFormatError("algebra JSON must be an object with a 'dim' field")
    dim = payload["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputFormatError("'dim' must be an integer")
    if dim < 1:
        raise ZeroDimension("algebra dimension must be at least 1")
    brackets: dict[tuple[int, int], dict[int, object]] = {}
    for entry in payload.get("brackets", []):
        try:
            i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"malformed bracket entry: {entry!r}") from exc
        if (i, j) in brackets:
            raise InputFormatError(f"duplicate bracket pair ({i}, {j})")
        try:
            brackets[(i, j)] = {int(k): parse_rational(v) for k, v in coeffs.items()}
        except (ValueError, AttributeError) as exc:
            raise InputFormatError(f"bad coefficients in bracket ({i}, {j}): {exc}") from exc
    return new_metric_lie_algebra(StructureConstants.from_brackets(dim, brackets))


def algebra_to_json(alg: MetricLieAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "brackets": [
            {
                "i": i,
                "j": j,
                "coeffs": {str(k): format_rational(v) for k, v in sorted(coeffs.items())},
            }
            for (i, j), coeffs in sorted(alg.constants.nonzero_brackets().items())
        ],
    }


def load_algebra(path) -> MetricLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path}: invalid JSON ({exc})") from exc
    return algebra_from_json(payload)
