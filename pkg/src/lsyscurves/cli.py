"""Command line front end: list, derive, render, verify.

Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import dsl
from .curves import CATALOG, extract_polyline, point_sequence, run_catalog
from .errors import LsysError
from .geometry import Point
from .svg import SvgDocument
from .verify import DEFAULT_SEED, run_all

_POINT_SWEEP_IDS = {"decasteljau_point", "decasteljau_point_left"}


def _parse_weights(text):
    try:
        weights = [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}")
    return weights


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsyscurves",
        description="Curve generation with parametric context-sensitive "
                    "L-systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list catalog entries")
    p_list.add_argument("--json", action="store_true",
                        help="machine-readable output")

    def add_run_flags(p):
        p.add_argument("source", metavar="SOURCE",
                       help="catalog id or path to a .lsys file")
        p.add_argument("--steps", type=int, default=None)
        p.add_argument("--cycles", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--t", type=float, default=None)
        p.add_argument("--weights", type=_parse_weights, default=None,
                       help="comma-separated control point weights "
                            "(rational variant)")
        p.add_argument("--seed", type=int, default=None,
                       help="use a seeded random control polygon instead of "
                            "the entry's default points")
        p.add_argument("--out", default=None, help="output file path")

    p_derive = sub.add_parser("derive", help="run a derivation and print it")
    add_run_flags(p_derive)
    p_derive.add_argument("--format", dest="fmt", default="string",
                          choices=("string", "trace"))

    p_render = sub.add_parser("render", help="run a derivation and write SVG")
    add_run_flags(p_render)
    p_render.add_argument("--grid", type=float, default=None,
                          help="t increment for the point-sweep locus "
                               "(default 0.01 for point variants)")

    p_verify = sub.add_parser("verify",
                              help="run the oracle-equivalence suite")
    p_verify.add_argument("--only", default=None,
                          help="run only properties whose name contains this")
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--catalog-dir", default=None,
                          help="override the catalog directory (testing aid)")
    return parser


def _seeded_points(entry, seed):
    rng = random.Random(seed)
    count = entry.exact_points
    if count is None:
        count = 4 if entry.closed else 5
    return [Point(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0))
            for _ in range(count)]


def _emit(text, out_path):
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_source(args, collect_trace):
    """Run either a catalog entry or a .lsys file; returns a uniform bundle."""
    source = args.source
    if source in CATALOG:
        entry = CATALOG[source]
        points = _seeded_points(entry, args.seed) if args.seed is not None else None
        result = run_catalog(
            entry, points=points, t=args.t, n=args.n, cycles=args.cycles,
            steps=args.steps, weights=args.weights,
            collect_trace=collect_trace,
        )
        return entry, result.definition, result
    defn = dsl.parse_file(source)
    for warning in defn.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    overrides = {"t": args.t, "n": args.n, "cycles": args.cycles,
                 "steps": args.steps}
    if args.weights is not None:
        raise LsysError("--weights applies to catalog entries only")
    if collect_trace:
        final, trace = defn.derive(overrides, collect_trace=True)
    else:
        final, trace = defn.derive(overrides), None
    interpreted = defn.interpret(final, overrides)

    class _FileRun:
        pass

    run = _FileRun()
    run.definition = defn
    run.final = final
    run.interpreted = interpreted
    run.polyline = extract_polyline(interpreted)
    run.trace = trace
    return None, defn, run


def cmd_list(args) -> int:
    entries = []
    for entry in CATALOG.values():
        entries.append({
            "id": entry.id,
            "summary": entry.summary,
            "closed": entry.closed,
            "parameters": list(entry.params),
            "min_points": entry.min_points,
            "exact_points": entry.exact_points,
        })
    if args.json:
        print(json.dumps(entries, indent=2))
    else:
        width = max(len(e["id"]) for e in entries)
        for e in entries:
            params = ", ".join(e["parameters"]) or "-"
            print(f"{e['id']:<{width}}  [{params}]  {e['summary']}")
    return 0


def cmd_derive(args) -> int:
    want_trace = args.fmt == "trace"
    _, _, run = _run_source(args, collect_trace=want_trace)
    if want_trace:
        lines = [f"{step} {name}: {dsl.format_word(s)}"
                 for step, name, s in run.trace]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dsl.format_word(run.final) + "\n", args.out)
    return 0


def _sweep_locus(entry, args):
    grid = args.grid if args.grid is not None else 0.01
    if not (0.0 < grid <= 1.0):
        raise LsysError(f"grid increment must be in (0, 1], got {grid}")
    count = round(1.0 / grid)
    points = _seeded_points(entry, args.seed) if args.seed is not None else None
    locus = []
    for i in range(count + 1):
        t = min(i * grid, 1.0)
        locus.append(run_catalog(entry, points=points, t=t,
                                 steps=args.steps,
                                 weights=args.weights).curve_point())
    return points, locus


def _subdivision_edge_layer(doc, word, width):
    """One polygon drawn edge by edge, coloured by edge type (E vs I)."""
    by_state = {0: [], 1: [], 2: []}
    prev_vertex = None
    pending_edge = None
    for m in word.modules:
        if m.symbol == "P" and len(m.params) == 2:
            v, s = m.params
            by_state.setdefault(int(s), []).append(v)
            if prev_vertex is not None and pending_edge is not None:
                doc.add_polyline([prev_vertex, v], f"edge_{pending_edge}",
                                 width=width)
            prev_vertex, pending_edge = v, None
        elif m.symbol in ("E", "I"):
            pending_edge = m.symbol
    return by_state


def _subdivision_layers(doc, run):
    """Colour subdivision steps by edge type and final vertices by state.

    The reinit table resets states and edge kinds for the next cycle, so the
    mixed E/I structure lives in the intermediate subdividing steps.
    """
    sub_words = [s for _, name, s in run.trace if name == "sub"]
    by_state = {}
    for i, word in enumerate(sub_words):
        width = 1.5 if i == len(sub_words) - 1 else 0.75
        by_state = _subdivision_edge_layer(doc, word, width)
    for state, pts in sorted(by_state.items()):
        doc.add_points(pts, f"state{min(state, 2)}")


def cmd_render(args) -> int:
    doc = SvgDocument()
    source = args.source
    entry = CATALOG.get(source)

    if entry is not None and entry.id in _POINT_SWEEP_IDS:
        points, locus = _sweep_locus(entry, args)
        ctrl = [Point(*c) for c in entry.default_points] if points is None else points
        doc.add_polyline(ctrl, "control", closed=entry.closed)
        doc.add_points(ctrl, "control")
        doc.add_polyline(locus, "result")
        doc.add_points(locus, "locus", radius=1.5)
        name = entry.id
    else:
        entry, defn, run = _run_source(args, collect_trace=True)
        if entry is not None:
            ctrl = point_sequence(run.trace[0][2], entry.point_params)
            closed = entry.closed
        else:
            ctrl = point_sequence(run.trace[0][2])
            closed = run.final.circular
        doc.add_polyline(ctrl, "control", closed=closed)
        doc.add_points(ctrl, "control")
        if entry is not None and entry.id == "decasteljau_subdivision":
            _subdivision_layers(doc, run)
        else:
            for _, _, s in run.trace[1:-1]:
                pts = point_sequence(
                    s, entry.point_params if entry is not None else None)
                if len(pts) >= 2:
                    doc.add_polyline(pts, "intermediate", closed=closed,
                                     width=0.75)
            verts = run.polyline.vertices()
            if verts:
                doc.add_polyline(verts, "result", closed=run.polyline.closed)
            else:
                finals = point_sequence(run.interpreted)
                if len(finals) >= 2:
                    doc.add_polyline(finals, "result", closed=closed)
                doc.add_points(finals, "result")
        name = entry.id if entry is not None else defn.name

    out = args.out or f"{name}.svg"
    Path(out).write_text(doc.render(), encoding="utf-8")
    print(out)
    return 0


def cmd_verify(args) -> int:
    results = run_all(only=args.only, seed=args.seed,
                      catalog_dir=args.catalog_dir)
    if not results:
        print(f"no properties match {args.only!r}", file=sys.stderr)
        return 1
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} properties passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "list": cmd_list,
        "derive": cmd_derive,
        "render": cmd_render,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except LsysError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
