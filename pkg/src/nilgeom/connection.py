"""Levi-Civita connection of a left-invariant metric, and tensors built on it."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MetricLieAlgebra, Tensor3, bracket
from .errors import DimensionMismatch, IndexOutOfRange
from .exact_linalg import Vector, format_rational, unit_vector


def _freeze(t: list) -> Tensor3:
    return tuple(tuple(tuple(col) for col in row) for row in t)


@dataclass(frozen=True)
class ChristoffelTensor:
    """``gamma[i][j][k]`` is the coefficient of ``e_k`` in ``nabla_{e_i} e_j`` (0-based)."""

    dim: int
    gamma: Tensor3

    def entry(self, k: int, i: int, j: int) -> Fraction:
        """Gamma^k_ij with 1-based indices."""
        return self.gamma[i - 1][j - 1][k - 1]

    def nonzero_entries(self) -> list[tuple[int, int, int, Fraction]]:
        """Sorted ``(k, i, j, value)`` tuples, 1-based, nonzero only."""
        n = self.dim
        return [
            (k + 1, i + 1, j + 1, self.gamma[i][j][k])
            for k in range(n)
            for i in range(n)
            for j in range(n)
            if self.gamma[i][j][k] != 0
        ]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                {"k": k, "i": i, "j": j, "value": format_rational(v)}
                for k, i, j, v in self.nonzero_entries()
            ],
        }


@dataclass(frozen=True)
class ConnectionLieDerivative:
    """``t[i][j][k]``: coefficient of ``e_k`` in ``(L_X nabla)(e_i, e_j)`` for a fixed X."""

    dim: int
    t: Tensor3

    def value(self, i: int, j: int) -> Vector:
        """(L_X nabla)(e_i, e_j) with 1-based i, j."""
        return self.t[i - 1][j - 1]

    def flat(self) -> Vector:
        return tuple(x for row in self.t for col in row for x in col)


def christoffel(alg: MetricLieAlgebra) -> ChristoffelTensor:
    """Koszul formula in an orthonormal frame.

    Gamma^k_ij = (c^k_ij - c^i_jk + c^j_ki) / 2
    """
    n, c = alg.dim, alg.constants.c
    half = Fraction(1, 2)
    gamma = [
        [[half * (c[i][j][k] - c[j][k][i] + c[k][i][j]) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return ChristoffelTensor(n, _freeze(gamma))


def _check_vector(g: ChristoffelTensor, x: Sequence) -> list[Fraction]:
    if len(x) != g.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in dimension {g.dim}")
    return [Fraction(v) for v in x]


def covariant_derivative(g: ChristoffelTensor, u: Sequence, x: Sequence) -> Vector:
    """nabla_U X for invariant U and X given by coordinates."""
    u = _check_vector(g, u)
    x = _check_vector(g, x)
    n = g.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for k in range(n):
            if x[k] == 0:
                continue
            w = u[i] * x[k]
            row = g.gamma[i][k]
            for l in range(n):
                if row[l]:
                    out[l] += w * row[l]
    return tuple(out)


def nabla_invariant(g: ChristoffelTensor, i: int, x: Sequence) -> Vector:
    """nabla_{e_i} X, with ``i`` a 1-based basis index."""
    if not 1 <= i <= g.dim:
        raise IndexOutOfRange(f"basis index {i} outside 1..{g.dim}")
    return covariant_derivative(g, unit_vector(g.dim, i - 1), x)


def divergence(g: ChristoffelTensor, x: Sequence) -> Fraction:
    x = _check_vector(g, x)
    n = g.dim
    return sum(
        (x[k] * g.gamma[i][k][i] for i in range(n) for k in range(n) if x[k]),
        Fraction(0),
    )


def lie_derivative_connection(
    alg: MetricLieAlgebra, g: ChristoffelTensor, x: Sequence
) -> ConnectionLieDerivative:
    """(L_X nabla)(U, V) = [X, nabla_U V] - nabla_{[X,U]} V - nabla_U [X, V]."""
    x = _check_vector(g, x)
    n = g.dim
    basis = [unit_vector(n, i) for i in range(n)]
    ad_x = [bracket(alg, x, e) for e in basis]
    t = []
    for i in range(n):
        row = []
        for j in range(n):
            first = bracket(alg, x, g.gamma[i][j])
            second = covariant_derivative(g, ad_x[i], basis[j])
            third = covariant_derivative(g, basis[i], ad_x[j])
            row.append([a - b - c for a, b, c in zip(first, second, third)])
        t.append(row)
    return ConnectionLieDerivative(n, _freeze(t))


def bracket_shortcut_lie_derivative(
    alg: MetricLieAlgebra, g: ChristoffelTensor, x: Sequence
) -> ConnectionLieDerivative:
    """The one-term expression sum_{k,l} a_k Gamma^l_ij [e_k, e_l].

    Kept only for comparison against ``lie_derivative_connection``; it drops the
    two terms involving ``[X, e_i]`` and ``[X, e_j]`` and is not a substitute.
    """
    x = _check_vector(g, x)
    n = g.dim
    t = [[list(bracket(alg, x, g.gamma[i][j])) for j in range(n)] for i in range(n)]
    return ConnectionLieDerivative(n, _freeze(t))
