"""Grid sweep over the three families comparing computed classifications with the published claims."""
from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .catalog import NILMANIFOLD_FAMILIES, default_grid, grid_algebras
from .connection import (
    ChristoffelTensor,
    bracket_shortcut_lie_derivative,
    christoffel,
    lie_derivative_connection,
)
from .errors import InputFormatError
from .exact_linalg import format_rational, parse_rational, unit_vector
from .fields import (
    Expectation,
    classify,
    delta_d_flat_expansion,
    expansion_harmonic_space,
    harmonic_space,
)
from .forms import laplacian_matrix
from .reference_tables import (
    PRINTED_CODIFFERENTIAL_SCALARS,
    PRINTED_TABLES,
    corrected_table,
    evaluate_table,
)

Point = Mapping[str, Fraction]


@dataclass(frozen=True)
class VerificationRow:
    family: str
    parameters: Point
    expectation: Expectation

    @property
    def verdict(self) -> str:
        return self.expectation.verdict

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "parameters": {k: format_rational(v) for k, v in sorted(self.parameters.items())},
        }
        out.update(self.expectation.to_json())
        return out


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple[VerificationRow, ...]
    notes: tuple[dict, ...]

    @property
    def differs(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "differs")

    @property
    def exit_code(self) -> int:
        return 2 if self.differs else 0

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "notes": list(self.notes),
            "summary": {"rows": len(self.rows), "differs": self.differs},
        }


def load_grid(path) -> list[dict[str, Fraction]]:
    """Read a JSON list of ``{"lambda": "p/q", "mu": "p/q"}`` points."""
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(payload, list):
        raise InputFormatError("grid file must hold a JSON list")
    points = []
    for entry in payload:
        if not isinstance(entry, Mapping) or "lambda" not in entry:
            raise InputFormatError(f"grid point needs a 'lambda' field: {entry!r}")
        try:
            point = {"lambda": parse_rational(entry["lambda"])}
            if "mu" in entry:
                point["mu"] = parse_rational(entry["mu"])
        except ValueError as exc:
            raise InputFormatError(str(exc)) from exc
        points.append(point)
    return points


def _family_points(family: str, grid: Sequence[Point] | None) -> list[dict[str, Fraction]]:
    if grid is None:
        points = default_grid(family)
    elif family == "center3":
        # mu is ignored; drop duplicate lambdas so rows stay one per point
        points = [{"lambda": lam} for lam in sorted({p["lambda"] for p in grid})]
    else:
        points = []
        for p in grid:
            if "mu" not in p:
                raise InputFormatError(f"{family} needs mu at every grid point")
            points.append({"lambda": p["lambda"], "mu": p["mu"]})
    return sorted(points, key=lambda p: (p["lambda"], p.get("mu", Fraction(0))))


def _key(k: int, i: int, j: int) -> str:
    return f"Gamma^{k}_{i}{j}"


def _christoffel_note(family, algebras, gammas) -> dict:
    printed_only, computed_only, value_mismatch = set(), set(), set()
    corrected_ok = True
    for alg, g in zip(algebras, gammas):
        computed = {(k, i, j): v for k, i, j, v in g.nonzero_entries()}
        printed = evaluate_table(PRINTED_TABLES[family], alg.parameters)
        printed_only |= printed.keys() - computed.keys()
        computed_only |= computed.keys() - printed.keys()
        value_mismatch |= {
            key for key in printed.keys() & computed.keys() if printed[key] != computed[key]
        }
        corrected_ok &= evaluate_table(corrected_table(family), alg.parameters) == computed
    return {
        "family": family,
        "kind": "christoffel_table",
        "printed_only": [_key(*k) for k in sorted(printed_only)],
        "computed_only": [_key(*k) for k in sorted(computed_only)],
        "value_mismatch": [_key(*k) for k in sorted(value_mismatch)],
        "corrected_table_matches": corrected_ok,
        "grid_points": len(algebras),
    }


def _ratio_text(ratios: set[Fraction]) -> str:
    if len(ratios) == 1:
        return format_rational(next(iter(ratios)))
    return "varies"


def _codifferential_notes(family, algebras, gammas) -> list[dict]:
    notes = []
    kernels_agree = all(
        harmonic_space(a, g) == expansion_harmonic_space(a, g) for a, g in zip(algebras, gammas)
    )
    laplacians = [laplacian_matrix(a, 1) for a in algebras]
    for j, (text, value) in sorted(PRINTED_CODIFFERENTIAL_SCALARS[family].items()):
        lap_ratios, exp_ratios = set(), set()
        for alg, g, lap in zip(algebras, gammas, laplacians):
            lam = alg.parameters["lambda"]
            mu = alg.parameters.get("mu", Fraction(0))
            printed = value(lam, mu)
            e_j = unit_vector(alg.dim, j - 1)
            lap_ratios.add(lap.apply(e_j)[j - 1] / printed)
            exp_ratios.add(delta_d_flat_expansion(alg, g, e_j).coords[j - 1] / printed)
        notes.append({
            "family": family,
            "kind": "codifferential_scalar",
            "component": f"e{j}",
            "published": f"a{j} * {text}",
            "laplacian_over_published": _ratio_text(lap_ratios),
            "expansion_over_published": _ratio_text(exp_ratios),
            "kernels_agree": kernels_agree,
        })
    return notes


def _shortcut_note(family, algebras, gammas) -> dict:
    mismatches = 0
    first = None
    for alg, g in zip(algebras, gammas):
        n = alg.dim
        for k in range(n):
            x = unit_vector(n, k)
            full = lie_derivative_connection(alg, g, x)
            short = bracket_shortcut_lie_derivative(alg, g, x)
            for i in range(n):
                for j in range(n):
                    if full.t[i][j] != short.t[i][j]:
                        mismatches += 1
                        if first is None:
                            first = {
                                "parameters": {
                                    p: format_rational(v) for p, v in sorted(alg.parameters.items())
                                },
                                "field": f"e{k + 1}",
                                "pair": [f"e{i + 1}", f"e{j + 1}"],
                                "full": [format_rational(v) for v in full.t[i][j]],
                                "shortcut": [format_rational(v) for v in short.t[i][j]],
                            }
    return {
        "family": family,
        "kind": "lie_derivative_shortcut",
        "disagreeing_entries": mismatches,
        "first_disagreement": first,
    }


def run_verification(grid: Sequence[Point] | None = None) -> VerificationReport:
    """Classify every family at every grid point; ``grid=None`` uses the default grid."""
    rows: list[VerificationRow] = []
    notes: list[dict] = []
    for family in NILMANIFOLD_FAMILIES:
        points = _family_points(family, grid)
        if not points:
            continue
        algebras = grid_algebras(family, points)
        gammas: list[ChristoffelTensor] = [christoffel(a) for a in algebras]
        for alg, g in zip(algebras, gammas):
            report = classify(alg, g)
            rows.extend(
                VerificationRow(family, dict(alg.parameters), e) for e in report.expectations
            )
        notes.append(_christoffel_note(family, algebras, gammas))
        notes.extend(_codifferential_notes(family, algebras, gammas))
        notes.append(_shortcut_note(family, algebras, gammas))
    return VerificationReport(tuple(rows), tuple(notes))
