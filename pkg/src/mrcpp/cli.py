"""Command-line entry point: ``mrcpp plan | compare | render``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import report as rpt
from .darp import DarpConfig, InfeasibleStartError
from .fixtures import NAMES as FIXTURE_NAMES, fixture_text
from .grid import GridMap, MapError, load_map
from .metrics import TimeModel
from .pipeline import COVERAGES, MODE_NAMES, Plan, plan
from .render import render_svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_CONVERGED = 4
EXIT_IO = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_map(args) -> GridMap:
    try:
        if args.map_json is not None:
            text = args.map_json
        elif args.fixture is not None:
            text = fixture_text(args.fixture)
        else:
            text = Path(args.map).read_text()
    except OSError as exc:
        raise CliError(f"cannot read map: {exc}", EXIT_IO) from None
    try:
        return load_map(text)
    except MapError as exc:
        raise CliError(f"map error: {exc}", EXIT_PARSE) from None


def _configs(args) -> tuple[DarpConfig, TimeModel]:
    try:
        darp = DarpConfig(eta=args.eta, gamma=args.gamma, max_iter=args.max_iter)
        model = TimeModel(args.ts, args.tt)
    except ValueError as exc:
        raise CliError(f"bad option: {exc}", EXIT_PARSE) from None
    return darp, model


def _run(grid: GridMap, mode: str, coverage: str, darp: DarpConfig, model: TimeModel) -> Plan:
    try:
        return plan(grid, mode, coverage, darp, model)
    except InfeasibleStartError as exc:
        raise CliError(f"infeasible starts: {exc}", EXIT_INFEASIBLE) from None


def _write(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _summary(label: str, p: Plan) -> str:
    r = p.report
    ratio = "n/a" if r.ratio is None else f"{r.ratio:.4f}"
    return (f"{label}: converged={p.partition.converged} sizes={list(p.partition.region_sizes)} "
            f"max={r.max:g} min={r.min:g} ave={r.ave:.2f} ratio={ratio} "
            f"coverage={r.coverage_rate:.4f}")


def cmd_plan(args) -> int:
    grid = _read_map(args)
    darp, model = _configs(args)
    p = _run(grid, args.mode, args.coverage, darp, model)
    text = rpt.dumps(rpt.plan_to_report(p))
    if args.json:
        _write(args.json, text)
        print(_summary(f"{args.mode}+{args.coverage}", p))
    else:
        sys.stdout.write(text)
    if args.svg:
        _write(args.svg, render_svg(grid, p.partition.assignment, p.paths))
    if not p.partition.converged:
        print("partition did not converge; artifacts written", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _variant(variant: str) -> tuple[str, str]:
    mode, _, coverage = variant.partition(":")
    if mode not in MODE_NAMES or coverage not in COVERAGES:
        raise argparse.ArgumentTypeError(
            f"expected MODE:COVERAGE with MODE in {sorted(MODE_NAMES)} and COVERAGE in {list(COVERAGES)}")
    return mode, coverage


INDICATORS = ("max", "min", "ave", "ratio", "coverage_rate", "turns", "J")


def _indicators(p: Plan) -> dict:
    r = p.report
    return {
        "max": r.max, "min": r.min, "ave": r.ave, "ratio": r.ratio,
        "coverage_rate": r.coverage_rate,
        "turns": sum(m.turns for m in p.metrics),
        "J": p.partition.final_J,
    }


def cmd_compare(args) -> int:
    grid = _read_map(args)
    darp, model = _configs(args)
    plans = [_run(grid, mode, cov, darp, model) for mode, cov in (args.a, args.b)]
    va, vb = (_indicators(p) for p in plans)
    delta = {k: None if va[k] is None or vb[k] is None else vb[k] - va[k] for k in INDICATORS}
    names = [f"{m}:{c}" for m, c in (args.a, args.b)]
    fmt = lambda v: "n/a" if v is None else f"{v:.4f}" if isinstance(v, float) else str(v)
    print(f"{'indicator':<14}{names[0]:>20}{names[1]:>20}{'delta (b-a)':>14}")
    for k in INDICATORS:
        print(f"{k:<14}{fmt(va[k]):>20}{fmt(vb[k]):>20}{fmt(delta[k]):>14}")
    if args.json:
        out = {"a": rpt.plan_to_report(plans[0]), "b": rpt.plan_to_report(plans[1]), "delta": delta}
        _write(args.json, rpt.dumps(out))
    if not all(p.partition.converged for p in plans):
        print("a partition did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        text = Path(args.report).read_text()
    except OSError as exc:
        raise CliError(f"cannot read report: {exc}", EXIT_IO) from None
    try:
        data = rpt.loads(text)
        grid = rpt.report_grid(data)
        assignment = np.array(data["partition"].get("assignment") or [[-1]], dtype=int)
        paths = rpt.report_paths(data)
    except (MapError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"report error: {exc}", EXIT_PARSE) from None
    _write(args.svg, render_svg(grid, assignment, paths))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}", EXIT_PARSE)


def _map_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--map", help="map file (text grid or JSON)")
    src.add_argument("--map-json", help="inline JSON map")
    src.add_argument("--fixture", choices=FIXTURE_NAMES, help="bundled benchmark map")
    p.add_argument("--eta", type=float, default=DarpConfig.eta, help="correction step size")
    p.add_argument("--gamma", type=float, default=DarpConfig.gamma, help="connectivity multiplier range")
    p.add_argument("--max-iter", type=int, default=DarpConfig.max_iter)
    p.add_argument("--ts", type=float, default=TimeModel.t_s, help="time per straight move")
    p.add_argument("--tt", type=float, default=TimeModel.t_t, help="time per turning move")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mrcpp", description="Multi-robot coverage path planning on grid maps.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="partition a map and plan coverage paths")
    _map_args(p)
    p.add_argument("--mode", choices=sorted(MODE_NAMES), default="astar-darp")
    p.add_argument("--coverage", choices=COVERAGES, default="stc")
    p.add_argument("--json", help="write the JSON report here (default: stdout)")
    p.add_argument("--svg", help="write an SVG drawing here")
    p.set_defaults(func=cmd_plan)

    c = sub.add_parser("compare", help="run two variants on the same map")
    _map_args(c)
    c.add_argument("--a", type=_variant, required=True, metavar="MODE:COV")
    c.add_argument("--b", type=_variant, required=True, metavar="MODE:COV")
    c.add_argument("--json", help="write both reports and the deltas here")
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("render", help="draw an SVG from a JSON report")
    r.add_argument("--report", required=True)
    r.add_argument("--svg", required=True)
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
