"""Command-line front end.

    circdraw generate grid_row 3 --out out/
    circdraw analyze out/grid_row.drawing.json
    circdraw verify section3 --seeds 200 --jobs 4
    circdraw export-svg out/grid_row.drawing.json grid.svg

Exit status: 0 when everything checked passes, 1 when a check fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import solvers
from .decompositions import check_section3_bounds
from .drawing import (
    CircularDrawing,
    crossing_graph,
    export_json,
    export_svg,
    load_json,
    planarise,
)
from .errors import CircdrawError, InvalidParameter
from .extremal import (
    grid_row_drawing,
    ktt_chord_diagram,
    nested_polygon_drawing,
    product_drawing,
    star_forest_construction,
    tree_plus_dominant,
    two_degenerate_expander,
)
from .graph import random_tree
from .verify import DEFAULT_CAPS, SUITES, VerificationReport, run_suite

CAP_ENV = "CHORDAL_CAPS"


def parse_caps(text: str | None, base: dict | None = None) -> dict:
    """Parse ``"tw=18,hadwiger=14"`` style overrides on top of ``base``."""
    caps = dict(base or DEFAULT_CAPS)
    if not text:
        return caps
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULT_CAPS:
            raise InvalidParameter(f"bad cap {item!r}; known caps: {', '.join(DEFAULT_CAPS)}")
        try:
            caps[key] = int(value)
        except ValueError:
            raise InvalidParameter(f"cap {key} needs an integer, got {value!r}") from None
    return caps


def resolve_caps(args) -> dict:
    return parse_caps(getattr(args, "caps", None), parse_caps(os.environ.get(CAP_ENV)))


def _tree_from(params, seed):
    size = params[0]
    return random_tree(size, 3, seed)


CONSTRUCTIONS = {
    "grid_row": (1, lambda p, seed: grid_row_drawing(p[0]), "n"),
    "two_degenerate_expander": (1, lambda p, seed: two_degenerate_expander(p[0]), "t"),
    "ktt": (1, lambda p, seed: ktt_chord_diagram(p[0]), "t"),
    "tree_plus_dominant": (1, lambda p, seed: tree_plus_dominant(_tree_from(p, seed)),
                           "tree_size (random tree, max degree 3)"),
    "product": (2, lambda p, seed: product_drawing(_tree_from(p, seed), p[1]),
                "tree_size m (random tree, max degree 3)"),
    "star_forest": (1, lambda p, seed: star_forest_construction(p[0]), "t"),
    "nested_polygon": (2, lambda p, seed: nested_polygon_drawing(p[0], p[1]), "layers m"),
}
ALIASES = {"expander": "two_degenerate_expander", "grid": "grid_row",
           "ktt_chord_diagram": "ktt", "star_forest_construction": "star_forest",
           "product_drawing": "product", "nested_polygon_drawing": "nested_polygon"}


def cmd_generate(args) -> int:
    name = ALIASES.get(args.construction, args.construction)
    if name not in CONSTRUCTIONS:
        raise InvalidParameter(f"unknown construction {args.construction!r}; "
                               f"choose from {', '.join(CONSTRUCTIONS)}")
    arity, build, usage = CONSTRUCTIONS[name]
    if len(args.params) != arity:
        raise InvalidParameter(f"{name} takes {arity} parameter(s): {usage}")
    con = build(args.params, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = "_".join([name] + [str(p) for p in args.params])
    written = [out / f"{stem}.drawing.json", out / f"{stem}.witnesses.json"]
    export_json(con.drawing, written[0])
    witnesses = {"construction": con.name, "params": con.params, "notes": con.notes,
                 "witnesses": con.witnesses_to_dict()}
    written[1].write_text(json.dumps(witnesses, indent=1, sort_keys=True))
    if not args.no_svg:
        written.append(out / f"{stem}.svg")
        export_svg(con.drawing, written[-1])
    for path in written:
        print(path)
    return 0


def analyze_drawing(d, caps: dict, force: bool = False) -> dict:
    x = crossing_graph(d).graph
    p = planarise(d)
    bounds = check_section3_bounds(d, tw_cap=caps["tw"], hadwiger_cap=caps["hadwiger"],
                                   hajos_cap=caps["hajos"], force=force)
    failures = [{"instance": "drawing", "name": e["name"], "lhs": e["lhs"], "rhs": e["rhs"]}
                for e in bounds.failures()]
    return {
        "drawing": {"kind": "circular" if isinstance(d, CircularDrawing) else "straight-line",
                    "n": d.graph.n, "m": d.graph.m, "crossings": x.m,
                    "planarisation_vertices": p.plane_graph.n, "faces": len(p.faces)},
        "invariants": {
            "G": solvers.invariant_report(d.graph, caps["tw"], caps["hadwiger"], caps["hajos"]).to_dict(),
            "X_D": solvers.invariant_report(x, caps["tw"], caps["hadwiger"], caps["hajos"]).to_dict(),
        },
        "bounds": bounds.to_dict(),
        "failures": failures,
    }


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: (0 if k == "wall_time_ms" else _strip_timing(v))
                for k, v in obj.items() if k != "time_ms"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _emit(payload: dict, args) -> None:
    if args.stable:
        payload = _strip_timing(payload)
    text = json.dumps(payload, indent=1, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)


def cmd_analyze(args) -> int:
    d = load_json(args.drawing)
    result = analyze_drawing(d, resolve_caps(args), args.force)
    _emit(result, args)
    return 1 if result["failures"] else 0


def cmd_verify(args) -> int:
    params = {k: getattr(args, k) for k in ("seeds", "seed", "t", "k", "n", "max_division",
                                            "max_tree", "m", "max_n")
              if getattr(args, k) is not None}
    if args.force:
        params["force"] = True
    defaults = SUITES.get(args.suite, (None, {}))[1]
    params = {k: v for k, v in params.items() if k in defaults}
    report: VerificationReport = run_suite(args.suite, params, args.jobs, resolve_caps(args))
    _emit(report.to_dict(), args)
    print(f"{report.suite}: {report.instances} instances, {len(report.failures)} failures",
          file=sys.stderr)
    return 0 if report.ok else 1


def cmd_export_svg(args) -> int:
    export_svg(load_json(args.drawing), args.svg)
    print(args.svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circdraw", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a construction and write its files")
    g.add_argument("construction", help=", ".join(CONSTRUCTIONS))
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--out", default=".", help="output directory")
    g.add_argument("--seed", type=int, default=0, help="seed for random trees")
    g.add_argument("--no-svg", action="store_true")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="exact invariants and bound verdicts for a drawing")
    a.add_argument("drawing")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--seeds", type=int, help="number of random instances")
    v.add_argument("--seed", type=int, help="master seed (default 0)")
    v.add_argument("--t", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--max-division", type=int)
    v.add_argument("--max-tree", type=int)
    v.add_argument("--m", type=int, nargs="+")
    v.add_argument("--max-n", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    for p in (a, v):
        p.add_argument("--caps", help="e.g. tw=18,hadwiger=14,hajos=12,enum=10 "
                                      f"(overrides ${CAP_ENV})")
        p.add_argument("--force", action="store_true",
                       help="report over-cap exact values as skipped instead of failing")
        p.add_argument("--out", help="also write the JSON report here")
        p.add_argument("--stable", action="store_true",
                       help="drop timings so reports are byte-identical across runs")

    s = sub.add_parser("export-svg", help="render a drawing JSON file as SVG")
    s.add_argument("drawing")
    s.add_argument("svg")
    s.set_defaults(func=cmd_export_svg)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CircdrawError, OSError, ValueError, KeyError) as exc:
        print(f"circdraw: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
