"""Exact rational linear algebra.

Everything downstream computes through this module: dense matrices of
``Fraction`` entries, reduced row-echelon form, kernels and affine solves.
Subspaces are stored by the RREF of their row span, so two subspaces are
equal exactly when their canonical bases are equal.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or ``"-p/q"`` into a reduced ``Fraction``."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    value = text.strip()
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def unit_vector(n: int, index: int) -> Vector:
    return tuple(Fraction(int(k == index)) for k in range(n))


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add_scaled(u: Sequence[Fraction], v: Sequence[Fraction], t: Fraction) -> Vector:
    return tuple(a + t * b for a, b in zip(u, v))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        """Build from a list of rows; ``cols`` is needed only when there are no rows."""
        if cols is None:
            if not rows:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(rows[0])
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in row)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.from_rows([unit_vector(n, i) for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RationalMatrix:
        return cls.from_rows(
            [[col[r] for col in columns] for r in range(rows)], cols=len(columns)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, c = key
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> Vector:
        return self.entries[c::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix.from_rows(
            [self.column(c) for c in range(self.cols)], cols=self.rows
        )

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RationalMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, t) -> RationalMatrix:
        t = Fraction(t)
        return RationalMatrix(self.rows, self.cols, tuple(t * a for a in self.entries))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out_cols = [other.column(c) for c in range(other.cols)]
        return RationalMatrix.from_rows(
            [[dot(self.row(r), col) for col in out_cols] for r in range(self.rows)],
            cols=other.cols,
        )

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(self.row(r), v) for r in range(self.rows))

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix.from_rows(
            [self.row(r) + other.row(r) for r in range(self.rows)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return RationalMatrix(
            self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # in-place Gauss-Jordan; leftmost nonzero column, topmost nonzero row
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns (0-based). ``m`` is untouched."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return RationalMatrix.from_rows(rows, cols=m.cols), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class SolutionSpace:
    """A linear subspace of Q^n held by its canonical (RREF) basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector length differs from ambient dimension")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> SolutionSpace:
        rows = [list(as_vector(v)) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(reduced[i]) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim: int) -> SolutionSpace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> SolutionSpace:
        return cls.span([unit_vector(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)

    def contains(self, v: Sequence) -> bool:
        return SolutionSpace.span(self.basis + (as_vector(v),), self.ambient_dim) == self

    def issubspace(self, other: SolutionSpace) -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: SolutionSpace) -> SolutionSpace:
        return SolutionSpace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: SolutionSpace) -> SolutionSpace:
        return nullspace(
            annihilator_matrix(self).vstack(annihilator_matrix(other))
        )

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "basis": [[format_rational(x) for x in v] for v in self.basis],
        }


def annihilator_matrix(space: SolutionSpace) -> RationalMatrix:
    """Matrix whose kernel is exactly ``space``."""
    n = space.ambient_dim
    if space.dimension == 0:
        return RationalMatrix.identity(n)
    complement = nullspace(RationalMatrix.from_rows(space.basis, cols=n))
    if complement.dimension == 0:
        return RationalMatrix.zeros(0, n)
    return RationalMatrix.from_rows(complement.basis, cols=n)


def nullspace(m: RationalMatrix) -> SolutionSpace:
    """Kernel of ``m`` as a canonical ``SolutionSpace``; dimension is cols - rank."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, free]
        vectors.append(v)
    return SolutionSpace.span(vectors, m.cols)


@dataclass(frozen=True)
class Feasibility:
    """Outcome of an affine solve.

    When infeasible, ``witness_row`` is the (0-based) row of the RREF of the
    augmented matrix whose pivot lands in the right-hand-side column.
    """

    feasible: bool
    particular: Vector | None = None
    homogeneous: SolutionSpace | None = None
    witness_row: int | None = None

    def to_json(self) -> dict:
        if not self.feasible:
            return {"infeasible": True, "witness_row": self.witness_row}
        out = {"infeasible": False, "particular": [format_rational(x) for x in self.particular]}
        out.update(self.homogeneous.to_json())
        return out


def solve_affine(m: RationalMatrix, b: Sequence) -> Feasibility:
    b = as_vector(b)
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.rows} rows")
    augmented = m.hstack(RationalMatrix.from_rows([[x] for x in b], cols=1))
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return Feasibility(False, witness_row=len(pivots) - 1)
    particular = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        particular[pc] = reduced[r, m.cols]
    return Feasibility(True, particular=tuple(particular), homogeneous=nullspace(m))
