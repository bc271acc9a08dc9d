"""Command-line entry point.

Exit codes: 0 success, 1 bad input or failed validation, 2 verification ran
and at least one expectation differs.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import MetricLieAlgebra, algebra_to_json, load_algebra
from .catalog import FAMILY_DESCRIPTIONS, FAMILY_NAMES, build_family
from .connection import christoffel
from .errors import NilgeomError
from .exact_linalg import Feasibility, SolutionSpace, format_rational, parse_rational
from .fields import FieldClass, NotComputed, ProjectiveSolution, classify, describe_space
from .verify import load_grid, run_verification


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _add_selection(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILY_NAMES)
    p.add_argument("--lambda", dest="lam", type=_rational_arg)
    p.add_argument("--mu", type=_rational_arg)
    p.add_argument("--dim", type=int)
    p.add_argument("--algebra", type=Path, help="algebra JSON file")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="validate an algebra JSON file")
    p.add_argument("path", type=Path)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("christoffel", help="print nonzero Christoffel symbols")
    _add_selection(p)

    p = sub.add_parser("classify", help="classify invariant geometric vector fields")
    _add_selection(p)

    p = sub.add_parser("verify-paper", help="sweep the three families and compare with published claims")
    p.add_argument("--grid", default="default", help="'default' or a JSON grid file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("families", help="list catalog families")
    p.add_argument("--json", action="store_true")
    return parser


def _select(args) -> MetricLieAlgebra:
    if args.algebra is not None:
        if args.family is not None:
            raise NilgeomError("use either --family or --algebra, not both")
        return load_algebra(args.algebra)
    if args.family is None:
        raise NilgeomError("one of --family or --algebra is required")
    return build_family(args.family, lam=args.lam, mu=args.mu, dim=args.dim)


def _braces(space: SolutionSpace) -> str:
    text = describe_space(space)
    return text[len("span"):] if text.startswith("span") else text


def _params_text(params) -> str:
    return ", ".join(f"{k}={format_rational(v)}" for k, v in sorted(params.items()))


def cmd_validate(args) -> int:
    alg = load_algebra(args.path)
    if args.json:
        sys.stdout.write(dumps({
            "algebra": algebra_to_json(alg),
            "center": alg.center_basis.to_json(),
            "derived": alg.derived_basis.to_json(),
            "step": alg.step,
            "unimodular": alg.unimodular,
        }))
        return 0
    step = "not nilpotent" if alg.step is None else str(alg.step)
    print(f"dim: {alg.dim}")
    print(f"step: {step}, center: {_braces(alg.center_basis)}")
    print(f"derived: {_braces(alg.derived_basis)}")
    print(f"unimodular: {'true' if alg.unimodular else 'false'}")
    return 0


def cmd_christoffel(args) -> int:
    g = christoffel(_select(args))
    if args.json:
        sys.stdout.write(dumps(g.to_json()))
        return 0
    entries = g.nonzero_entries()
    if not entries:
        print("no nonzero entries")
    for k, i, j, v in entries:
        print(f"Gamma^{k}_{i}{j} = {format_rational(v)}")
    return 0


def _class_line(entry) -> str:
    if isinstance(entry, NotComputed):
        return f"not computed: {entry.reason}"
    if isinstance(entry, Feasibility):
        if not entry.feasible:
            return f"infeasible (witness row {entry.witness_row})"
        particular = ", ".join(format_rational(x) for x in entry.particular)
        return f"feasible: ({particular}) + {describe_space(entry.homogeneous)}"
    if isinstance(entry, ProjectiveSolution):
        forced = "yes" if entry.alpha_forced_zero else "no"
        return (f"dim {entry.dimension}  {describe_space(entry.x_projection)}  "
                f"alpha forced zero: {forced}")
    return f"dim {entry.dimension}  {describe_space(entry)}"


def cmd_classify(args) -> int:
    alg = _select(args)
    report = classify(alg, christoffel(alg))
    if args.json:
        sys.stdout.write(dumps(report.to_json()))
        return 0
    params = _params_text(report.parameters)
    print(f"algebra: {report.algebra_id}" + (f" ({params})" if params else ""))
    for cls in FieldClass:
        print(f"  {cls.value:<11} {_class_line(report.per_class[cls])}")
    if report.expectations:
        print("expectations:")
        for e in report.expectations:
            print(f"  {e.source:<10} {e.claim:<45} expected {e.expected:<22} "
                  f"computed {e.computed:<22} {e.verdict}")
    return 0


def cmd_verify_paper(args) -> int:
    grid = None if args.grid == "default" else load_grid(args.grid)
    report = run_verification(grid)
    if args.json:
        sys.stdout.write(dumps(report.to_json()))
        return report.exit_code
    for row in report.rows:
        e = row.expectation
        print(f"{row.family:<8} {_params_text(row.parameters):<20} {e.source:<10} "
              f"{e.claim:<45} expected {e.expected:<22} computed {e.computed:<22} {e.verdict}")
    for note in report.notes:
        details = ", ".join(
            f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(note.items())
            if k not in ("family", "kind")
        )
        print(f"note {note['family']} {note['kind']}: {details}")
    print(f"{len(report.rows)} rows, {report.differs} differ")
    return report.exit_code


def cmd_families(args) -> int:
    if args.json:
        sys.stdout.write(dumps([{"name": n, "description": FAMILY_DESCRIPTIONS[n]}
                                for n in FAMILY_NAMES]))
        return 0
    for name in FAMILY_NAMES:
        print(f"{name:<12} {FAMILY_DESCRIPTIONS[name]}")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "christoffel": cmd_christoffel,
    "classify": cmd_classify,
    "verify-paper": cmd_verify_paper,
    "families": cmd_families,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1 and --help exits 0; hand the code back either way
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return COMMANDS[args.command](args)
    except (NilgeomError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
