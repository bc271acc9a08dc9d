"""The three families of 5-dimensional two-step metric nilpotent Lie algebras, plus fixtures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MetricLieAlgebra, StructureConstants, new_metric_lie_algebra
from .errors import InputFormatError, NonPositiveParameter, ParameterOrderViolation, ZeroDimension
from .exact_linalg import parse_rational

FAMILY_NAMES = ("center1", "center2", "center3", "heisenberg3", "abelian")
NILMANIFOLD_FAMILIES = ("center1", "center2", "center3")

GRID_VALUES = tuple(Fraction(v) for v in ("1/2", "1", "3/2", "2", "3"))

FAMILY_DESCRIPTIONS = {
    "center1": "dim 5, [e1,e2] = lambda e5, [e3,e4] = mu e5; lambda >= mu > 0",
    "center2": "dim 5, [e1,e2] = lambda e4, [e1,e3] = mu e5; lambda >= mu > 0",
    "center3": "dim 5, [e1,e2] = lambda e3; lambda > 0",
    "heisenberg3": "dim 3, [e1,e2] = lambda e3; lambda > 0",
    "abelian": "dim n, all brackets zero; n >= 1",
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    lam: Fraction | None = None
    mu: Fraction | None = None
    dim: int | None = None

    def build(self) -> MetricLieAlgebra:
        return build_family(self.family, lam=self.lam, mu=self.mu, dim=self.dim)


def _positive(name: str, value) -> Fraction:
    q = parse_rational(value)
    if q <= 0:
        raise NonPositiveParameter(f"{name} must be positive, got {q}")
    return q


def _ordered(lam, mu) -> tuple[Fraction, Fraction]:
    lam, mu = _positive("lambda", lam), _positive("mu", mu)
    if lam < mu:
        raise ParameterOrderViolation(f"need lambda >= mu, got lambda={lam}, mu={mu}")
    return lam, mu


def family_center1(lam, mu) -> MetricLieAlgebra:
    lam, mu = _ordered(lam, mu)
    sc = StructureConstants.from_brackets(5, {(1, 2): {5: lam}, (3, 4): {5: mu}})
    return new_metric_lie_algebra(sc, "center1", {"lambda": lam, "mu": mu})


def family_center2(lam, mu) -> MetricLieAlgebra:
    lam, mu = _ordered(lam, mu)
    sc = StructureConstants.from_brackets(5, {(1, 2): {4: lam}, (1, 3): {5: mu}})
    return new_metric_lie_algebra(sc, "center2", {"lambda": lam, "mu": mu})


def family_center3(lam) -> MetricLieAlgebra:
    lam = _positive("lambda", lam)
    sc = StructureConstants.from_brackets(5, {(1, 2): {3: lam}})
    return new_metric_lie_algebra(sc, "center3", {"lambda": lam})


def heisenberg3(lam=1) -> MetricLieAlgebra:
    lam = _positive("lambda", lam)
    sc = StructureConstants.from_brackets(3, {(1, 2): {3: lam}})
    return new_metric_lie_algebra(sc, "heisenberg3", {"lambda": lam})


def abelian(n: int = 5) -> MetricLieAlgebra:
    if n < 1:
        raise ZeroDimension("abelian algebra needs n >= 1")
    return new_metric_lie_algebra(StructureConstants.zeros(n), "abelian", {})


def build_family(family: str, lam=None, mu=None, dim: int | None = None) -> MetricLieAlgebra:
    """Construct a catalog algebra by name; missing parameters default to 1 (dim to 5)."""
    lam = 1 if lam is None else lam
    mu = 1 if mu is None else mu
    if family == "center1":
        return family_center1(lam, mu)
    if family == "center2":
        return family_center2(lam, mu)
    if family == "center3":
        return family_center3(lam)
    if family == "heisenberg3":
        return heisenberg3(lam)
    if family == "abelian":
        return abelian(5 if dim is None else dim)
    raise InputFormatError(f"unknown family {family!r}; choose from {', '.join(FAMILY_NAMES)}")


def default_grid(family: str) -> list[dict[str, Fraction]]:
    """lambda, mu over {1/2, 1, 3/2, 2, 3} with lambda >= mu; center3 uses lambda only."""
    if family == "center3":
        return [{"lambda": lam} for lam in GRID_VALUES]
    return [
        {"lambda": lam, "mu": mu}
        for lam in GRID_VALUES
        for mu in GRID_VALUES
        if lam >= mu
    ]


def grid_algebras(family: str, points=None) -> list[MetricLieAlgebra]:
    points = default_grid(family) if points is None else points
    if family == "center3":
        return [family_center3(p["lambda"]) for p in points]
    builder = family_center1 if family == "center1" else family_center2
    return [builder(p["lambda"], p["mu"]) for p in points]
