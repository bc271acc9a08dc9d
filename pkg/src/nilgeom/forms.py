"""Invariant differential forms: Chevalley-Eilenberg differential, codifferential, Laplacian.

Forms of degree p are coordinate vectors over the lexicographically ordered
basis ``e^I`` (I strictly increasing). With the orthonormal frame this basis is
orthonormal, so the codifferential of a unimodular algebra is the transpose of d.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .algebra import MetricLieAlgebra
from .errors import DegreeOutOfRange, NotUnimodular
from .exact_linalg import RationalMatrix, Vector, as_vector


@dataclass(frozen=True)
class FormBasis:
    dim: int
    degree: int

    @property
    def multi_indices(self) -> tuple[tuple[int, ...], ...]:
        """1-based increasing tuples in lexicographic order."""
        return _multi_indices(self.dim, self.degree)

    def __len__(self) -> int:
        return comb(self.dim, self.degree)

    def position(self, index: Sequence[int]) -> int:
        return _positions(self.dim, self.degree)[tuple(index)]


@lru_cache(maxsize=None)
def _multi_indices(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(1, n + 1), p))


@lru_cache(maxsize=None)
def _positions(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {idx: pos for pos, idx in enumerate(_multi_indices(n, p))}


@dataclass(frozen=True)
class InvariantForm:
    degree: int
    coords: Vector


def flat(x: Sequence) -> InvariantForm:
    """Metric dual 1-form; the identity on coordinates in an orthonormal frame."""
    return InvariantForm(1, as_vector(x))


def sharp(form: InvariantForm) -> Vector:
    if form.degree != 1:
        raise DegreeOutOfRange("only 1-forms have a metric dual vector")
    return form.coords


def _check_degree(alg: MetricLieAlgebra, p: int, low: int) -> None:
    if not low <= p <= alg.dim:
        raise DegreeOutOfRange(f"degree {p} outside {low}..{alg.dim}")


def _require_unimodular(alg: MetricLieAlgebra) -> None:
    if not alg.unimodular:
        raise NotUnimodular(
            "codifferential as the transpose of d needs a unimodular algebra"
        )


def d_matrix(alg: MetricLieAlgebra, p: int) -> RationalMatrix:
    """Matrix of d from degree p to degree p+1.

    (d w)(x_0..x_p) = sum_{r<s} (-1)^{r+s} w([x_r, x_s], x_0..^r..^s..x_p),
    so in degree one (d w)(x, y) = -w([x, y]).
    """
    _check_degree(alg, p, 0)
    n, c = alg.dim, alg.constants.c
    source = _positions(n, p)
    targets = _multi_indices(n, p + 1) if p < n else ()
    rows = []
    for J in targets:
        row = [Fraction(0)] * len(source)
        idx = [j - 1 for j in J]
        for r in range(p + 1):
            for s in range(r + 1, p + 1):
                sign = -1 if (r + s) % 2 else 1
                rest = idx[:r] + idx[r + 1:s] + idx[s + 1:]
                rest_set = set(rest)
                for m, coeff in enumerate(c[idx[r]][idx[s]]):
                    if coeff == 0 or m in rest_set:
                        continue
                    # sort (m, rest) into an increasing tuple; sign of that shuffle
                    before = sum(1 for q in rest if q < m)
                    key = tuple(sorted(rest + [m]))
                    shuffle = -1 if before % 2 else 1
                    row[source[tuple(q + 1 for q in key)]] += sign * shuffle * coeff
        rows.append(row)
    return RationalMatrix.from_rows(rows, cols=len(source))


def codifferential_matrix(alg: MetricLieAlgebra, p: int) -> RationalMatrix:
    """Matrix of the codifferential from degree p to degree p-1."""
    _require_unimodular(alg)
    _check_degree(alg, p, 1)
    return d_matrix(alg, p - 1).transpose()


def laplacian_matrix(alg: MetricLieAlgebra, p: int) -> RationalMatrix:
    """d delta + delta d on invariant p-forms."""
    _require_unimodular(alg)
    _check_degree(alg, p, 0)
    d_up = d_matrix(alg, p)
    lap = d_up.transpose() @ d_up
    if p >= 1:
        delta = codifferential_matrix(alg, p)
        lap = lap + delta.transpose() @ delta
    return lap


def apply(m: RationalMatrix, form: InvariantForm, degree_shift: int) -> InvariantForm:
    return InvariantForm(form.degree + degree_shift, m.apply(form.coords))
