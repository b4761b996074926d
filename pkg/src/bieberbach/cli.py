"""Command-line interface.

One subcommand per capability: validate, info, decide, reduce, hw-check,
witness-check, classify. Machine-readable output goes to stdout as
``key=value`` lines (or CSV/JSON for classify); diagnostics go to stderr.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog as catalog_io
from . import witness as witness_mod
from .affine import GroupSpec, fixed_space_rank, holonomy_closure, validate
from .calabi import BlockFormError, kernel_group
from .decider import ValidationFailure, decide
from .finite_groups import is_solvable, sylow_all_cyclic
from .hw import DEFAULT_EXPLORE_BOUND, hw_search

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bieberbach")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("validate", "info", "decide"):
        p = sub.add_parser(name)
        p.add_argument("file")
        if name == "decide":
            p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("reduce")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("hw-check")
    p.add_argument("file")
    p.add_argument("--explore-bound", type=int, default=DEFAULT_EXPLORE_BOUND)
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("witness-check")
    p.add_argument("group_file")
    p.add_argument("set_file", nargs="?")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--max-size", type=int, default=witness_mod.DEFAULT_BALL_CAP)

    p = sub.add_parser("classify")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _load_group(path: str) -> GroupSpec:
    return catalog_io.parse_group(Path(path).read_text())


def _require_valid(spec: GroupSpec):
    report = validate(spec)
    if not report.accepted:
        for failure in report.failures or ("holonomy closure failed",):
            print(f"validation failure: {failure}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    return report


def _cmd_validate(args) -> int:
    spec = _load_group(args.file)
    report = validate(spec)
    print(f"valid={'true' if report.accepted else 'false'}")
    print(f"holonomy_finite={'true' if report.holonomy_finite else 'false'}")
    print(f"holonomy_order={report.holonomy_order}")
    print(f"torsion_free={'true' if report.torsion_free else 'false'}")
    for failure in report.failures:
        print(f"failure: {failure}", file=sys.stderr)
    return EXIT_OK if report.accepted else EXIT_VALIDATION


def _cmd_info(args) -> int:
    spec = _load_group(args.file)
    _require_valid(spec)
    row = catalog_io.group_row(spec.name or Path(args.file).stem, spec)
    print(f"name={row.name}")
    print(f"dimension={row.dimension}")
    print(f"betti={row.betti}")
    print(f"holonomy_order={row.holonomy_order}")
    print(f"solvable={'true' if row.solvable else 'false'}")
    print(f"sylow_cyclic={'true' if row.sylow_cyclic else 'false'}")
    return EXIT_OK


def _cmd_decide(args) -> int:
    spec = _load_group(args.file)
    _require_valid(spec)
    verdict = decide(spec, check=False)
    print(f"verdict={verdict.outcome.value}")
    print(f"chain={verdict.chain_text()}")
    if args.verbose:
        for i, red in enumerate(verdict.reductions, start=1):
            print(f"reduction {i}: k={red.k} kernel_dimension={red.kernel.dimension}")
            print("conjugator:")
            print(catalog_io.serialize_affine(red.q))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    spec = _load_group(args.file)
    _require_valid(spec)
    H = holonomy_closure(spec)
    k = fixed_space_rank(H)
    if k == 0:
        print("validation failure: first Betti number is 0, nothing to reduce",
              file=sys.stderr)
        return EXIT_VALIDATION
    reduction = kernel_group(spec)
    text = catalog_io.serialize_group(reduction.kernel)
    print(f"k={reduction.k}", file=sys.stderr)
    print(f"kernel_dimension={reduction.kernel.dimension}", file=sys.stderr)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.verbose:
        print("conjugator:", file=sys.stderr)
        print(catalog_io.serialize_affine(reduction.q), file=sys.stderr)
    return EXIT_OK


def _cmd_hw_check(args) -> int:
    spec = _load_group(args.file)
    report = hw_search(spec, explore_bound=args.explore_bound)
    print(f"hw={report.outcome}")
    if report.outcome == "contained":
        print("alpha:")
        print(catalog_io.serialize_affine(report.alpha))
        print("beta:")
        print(catalog_io.serialize_affine(report.beta))
    elif report.outcome == "not-contained":
        print(f"infeasible_systems={len(report.infeasible_witnesses)}")
        if args.verbose:
            for w in report.infeasible_witnesses:
                print(f"witness: {w}", file=sys.stderr)
    else:
        print(f"feasible_unverified={report.feasible_unverified}")
    return EXIT_OK


def _cmd_witness_check(args) -> int:
    spec = _load_group(args.group_file)
    _require_valid(spec)
    if args.set_file is not None:
        elements, _ = catalog_io.parse_element_set(Path(args.set_file).read_text())
        try:
            ok = witness_mod.verify_no_extremal_certificate(spec, elements)
        except ValueError as exc:
            print(f"validation failure: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        print(f"certificate={'true' if ok else 'false'}")
        return EXIT_OK
    ball = witness_mod.ball(spec, args.radius, max_size=args.max_size)
    core = witness_mod.peel(ball)
    print(f"ball_size={len(ball)}")
    print(f"core_size={len(core)}")
    if core.elements:
        if not witness_mod.verify_no_extremal_certificate(spec, core):
            print("internal inconsistency: peel output failed re-verification",
                  file=sys.stderr)
            return EXIT_INTERNAL
        print("certificate=true")
        sys.stdout.write(catalog_io.serialize_element_set(core, spec.name))
    else:
        print("certificate=false")
    return EXIT_OK


def _cmd_classify(args) -> int:
    cat = catalog_io.load_catalog(args.directory)
    table = catalog_io.classify_catalog(cat, jobs=args.jobs)
    if args.format == "json":
        sys.stdout.write(table.json_text())
    else:
        sys.stdout.write(table.csv_text())
    print(table.summary_text(), end="", file=sys.stderr)
    if table.invalid:
        for name, failures in table.invalid:
            print(f"invalid entry {name}: {'; '.join(failures)}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "info": _cmd_info,
    "decide": _cmd_decide,
    "reduce": _cmd_reduce,
    "hw-check": _cmd_hw_check,
    "witness-check": _cmd_witness_check,
    "classify": _cmd_classify,
}


def run_cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (catalog_io.ParseError, ValidationFailure, ValueError) as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BlockFormError, RuntimeError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
