"""Published connection tables and codifferential scalars for the three families.

Entries are stored as printed, including the one misprinted superscript in the
center2 table, so that the verification harness can report it. Use
:func:`corrected_table` for the version that agrees with the Koszul formula.
"""
from __future__ import annotations

from fractions import Fraction

H = Fraction(1, 2)

# (k, i, j, parameter, coefficient): Gamma^k_ij = coefficient * parameter, 1-based
PRINTED_TABLES: dict[str, tuple[tuple[int, int, int, str, Fraction], ...]] = {
    "center1": (
        (5, 1, 2, "lambda", H), (5, 2, 1, "lambda", -H),
        (2, 1, 5, "lambda", -H), (2, 5, 1, "lambda", -H),
        (1, 2, 5, "lambda", H), (1, 5, 2, "lambda", H),
        (5, 3, 4, "mu", H), (5, 4, 3, "mu", -H),
        (4, 3, 5, "mu", -H), (4, 5, 3, "mu", -H),
        (3, 4, 5, "mu", H), (3, 5, 4, "mu", H),
    ),
    "center2": (
        (4, 1, 2, "lambda", H), (4, 2, 1, "lambda", -H),
        (5, 1, 3, "mu", H), (5, 3, 1, "mu", -H),
        (2, 1, 4, "lambda", -H), (1, 4, 1, "lambda", -H),
        (3, 1, 5, "mu", -H), (3, 5, 1, "mu", -H),
        (1, 2, 4, "lambda", H), (1, 4, 2, "lambda", H),
        (1, 3, 5, "mu", H), (1, 5, 3, "mu", H),
    ),
    "center3": (
        (3, 1, 2, "lambda", H), (3, 2, 1, "lambda", -H),
        (2, 1, 3, "lambda", -H), (2, 3, 1, "lambda", -H),
        (1, 2, 3, "lambda", H), (1, 3, 2, "lambda", H),
    ),
}

# printed Gamma^1_41 is Gamma^2_41 under the Koszul formula
MISPRINTS = {"center2": {(1, 4, 1): (2, 4, 1)}}


def corrected_table(family: str):
    fixes = MISPRINTS.get(family, {})
    return tuple(
        fixes.get((k, i, j), (k, i, j)) + (param, coeff)
        for k, i, j, param, coeff in PRINTED_TABLES[family]
    )


def evaluate_table(entries, parameters) -> dict[tuple[int, int, int], Fraction]:
    """``{(k, i, j): value}`` at the given parameter values, nonzero entries only."""
    out: dict[tuple[int, int, int], Fraction] = {}
    for k, i, j, param, coeff in entries:
        out[(k, i, j)] = out.get((k, i, j), Fraction(0)) + coeff * parameters[param]
    return {key: v for key, v in out.items() if v != 0}


# printed delta(d X^flat)(e_j) for X = e_j: {j: (text, value(lambda, mu))}
PRINTED_CODIFFERENTIAL_SCALARS = {
    "center1": {5: ("(lambda^2 + mu^2)/2", lambda lam, mu: (lam**2 + mu**2) / 2)},
    "center2": {
        4: ("-lambda^2", lambda lam, mu: -lam**2),
        5: ("mu^2", lambda lam, mu: mu**2),
    },
    "center3": {3: ("lambda^2", lambda lam, mu: lam**2)},
}
