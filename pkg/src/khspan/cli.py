"""Command-line front end.

Every option may also be set through an environment variable named
``KHSPAN_`` plus the option name in upper case with dashes replaced by
underscores (``KHSPAN_MAX_CROSSINGS=16``).  Flags win over the environment.

Exit codes: 0 success (and "are mutants"), 1 not mutants or a failed
verification, 2 bad input, 3 diagram larger than the crossing cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import fixtures
from .diagram import Diagram, DiagramError, medial, parse_pd
from .graph import GraphFormatError, SignedPlanarGraph, looks_like_graph, parse_graph
from .khovanov import build_complex
from .matroid import FlipError, are_mutants, compare_E2, conjecture_probe
from .tree_complex import TreeData, TreeGen, collapse_to_tree_complex, ladders, spectral_page
from .trees import bracket_by_trees, jones, tree_records

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3
ENV_PREFIX = "KHSPAN_"
DEFAULTS = {"format": "json", "seed": None, "max_crossings": 14, "kmax": 3, "page": 2,
            "reduced": True, "budget": 200000}


class InputError(ValueError):
    pass


class SizeGuard(RuntimeError):
    pass


@dataclass
class Loaded:
    name: str
    diagram: Diagram
    graph: Optional[SignedPlanarGraph] = None

    def tree_data(self) -> TreeData:
        return TreeData(self.diagram, graph=self.graph)


def _parse_order(text: str, n: int) -> list[int]:
    try:
        order = [int(x) - 1 for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"edge order {text!r} is not a comma-separated list") from None
    if sorted(order) != list(range(n)):
        raise InputError(f"edge order must be a permutation of 1..{n}")
    return order


def load_input(source: str, basepoint: Optional[int] = None, edge_order: Optional[str] = None) -> Loaded:
    """Read a PD code or signed plane graph from a path or a bundled fixture name."""
    p = Path(source)
    if p.is_file():
        text, name = p.read_text(), p.stem
    else:
        try:
            text, name = fixtures.path(source).read_text(), source
        except FileNotFoundError:
            raise InputError(f"{source}: no such file or bundled fixture") from None
    try:
        if looks_like_graph(text):
            g = parse_graph(text, name=name)
            if edge_order:
                g = g.relabel_edges(_parse_order(edge_order, g.n_edges))
            d, graph = medial(g, name=name), g
        else:
            d, graph = parse_pd(text, name=name), None
            if edge_order:
                d = d.reorder(_parse_order(edge_order, d.n_crossings))
    except (DiagramError, GraphFormatError) as exc:
        raise InputError(f"{source}: {exc}") from None
    if basepoint is not None:
        if basepoint not in d.arcs:
            raise InputError(f"{source}: basepoint {basepoint} is not an arc label")
        d = d.with_basepoint(basepoint)
    return Loaded(name, d, graph)


# -- output helpers ---------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(x) for x in r] for r in rows]
    widths = [max([len(h)] + [len(r[k]) for r in cells]) for k, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- commands -------------------------------------------------------------------

def cmd_trees(args, out) -> int:
    item = _single(args)
    recs = tree_records(item.graph or item.tree_data().graph)
    if args.format == "json":
        out.write(_dump({"input": item.name, "trees": [r.to_json() for r in recs]}))
    else:
        out.write(_table(["T", "word", "u", "v", "weight", "smoothing"],
                         [[r.index, r.word, r.u, r.v, r.monomial, r.smoothing] for r in recs]))
    return EXIT_OK


def cmd_bracket(args, out) -> int:
    item = _single(args)
    b = bracket_by_trees(item.graph or item.tree_data().graph)
    _emit_poly(args, out, item, "bracket", b, {"writhe": item.diagram.writhe})
    return EXIT_OK


def cmd_jones(args, out) -> int:
    item = _single(args)
    _emit_poly(args, out, item, "jones", jones(item.diagram), {})
    return EXIT_OK


def _emit_poly(args, out, item, key, poly, extra) -> None:
    if args.format == "json":
        out.write(_dump({"input": item.name, key: str(poly), "terms": poly.to_pairs(), **extra}))
    else:
        out.write(f"{poly}\n")


def cmd_homology(args, out) -> int:
    item = _single(args)
    h = build_complex(item.diagram, args.reduced).homology()
    if args.format == "json":
        out.write(_dump({"input": item.name, "reduced": args.reduced, "groups": h.to_json(),
                         "poincare": str(h.euler_characteristic("q"))}))
    else:
        out.write(h.table())
    return EXIT_OK


def cmd_ss(args, out) -> int:
    item = _single(args)
    td = item.tree_data()
    page = spectral_page(item.diagram, args.page, trees=td).to_json(td)
    if args.format == "json":
        out.write(_dump({"input": item.name, "page": page}))
    else:
        out.write(_table(["p", "i", "j", "u", "v", "rank", "torsion"],
                         [[g["p"], g["i"], g["j"], g.get("u", ""), g.get("v", ""), g["rank"],
                           ",".join(map(str, g["torsion"]))] for g in page["groups"]]))
    return EXIT_OK


def cmd_collapse(args, out) -> int:
    item = _single(args)
    td = item.tree_data()
    tc = collapse_to_tree_complex(item.diagram, args.reduced, td)
    gens = []
    for g in tc.generators():
        i, j = tc.complex.degree[g]
        u, v = tc.uv(g)
        gens.append({"label": g.label(), "word": str(td.words[g.tree]), "u": u, "v": v, "i": i, "j": j})
    entries = [[a.label(), b.label(), v] for a, b, v in tc.entries()]
    if args.format == "json":
        out.write(_dump({"input": item.name, "reduced": args.reduced, "generators": gens,
                         "differential": entries, "homology": tc.homology().to_json()}))
    else:
        out.write(_table(["gen", "word", "u", "v", "i", "j"],
                         [[g["label"], g["word"], g["u"], g["v"], g["i"], g["j"]] for g in gens]))
        out.write("\n" + _table(["from", "to", "coeff"], entries))
    return EXIT_OK


def cmd_ladders(args, out) -> int:
    item = _single(args)
    td = item.tree_data()
    if not args.pair:
        raise InputError("ladders needs --pair T1,T2 (1-based tree indices)")
    try:
        t1, t2 = (int(x) - 1 for x in args.pair.split(","))
    except ValueError:
        raise InputError(f"bad --pair {args.pair!r}") from None
    if not (0 <= t1 < len(td) and 0 <= t2 < len(td)):
        raise InputError(f"tree indices must lie in 1..{len(td)}")
    found = ladders(td, t1, t2, args.kmax, budget=args.budget)
    tc = collapse_to_tree_complex(item.diagram, True, td)
    report = {
        "input": item.name, "from": t1 + 1, "to": t2 + 1, "kmax": args.kmax,
        "direct": td.direct_incidence(t1, t2),
        "ladder_sum": sum(x.contribution for x in found),
        "collapsed_entry": tc.incidence(TreeGen(t1), TreeGen(t2)),
        "ladders": [x.to_json(td) for x in found],
    }
    if args.format == "json":
        out.write(_dump(report))
    else:
        out.write(_table(["k", "trees", "words", "contribution"],
                         [[len(x["trees"]) - 1, "->".join(f"T{t}" for t in x["trees"]),
                           " ".join(x["words"]), x["contribution"]] for x in report["ladders"]]))
        out.write(f"sum {report['ladder_sum']}, collapsed entry {report['collapsed_entry']}\n")
    return EXIT_OK


def cmd_mutants(args, out) -> int:
    a, b = _pair(args)
    rep = are_mutants(a.diagram, b.diagram)
    cmp = compare_E2(a.diagram, b.diagram)
    witness = None if rep.witness is None else [x + 1 for x in rep.witness]
    if args.format == "json":
        out.write(_dump({"inputs": [a.name, b.name], "mutants": rep.mutants, "witness": witness,
                         "e2_equal": cmp.equal, "e2_equal_uv": cmp.equal_uv,
                         "e2": [cmp.first, cmp.second]}))
    else:
        out.write(f"mutants: {'yes' if rep.mutants else 'no'}\n")
        if witness:
            out.write("witness: " + " ".join(map(str, witness)) + "\n")
        out.write(f"E2 equal: {'yes' if cmp.equal else 'no'}\n")
    return EXIT_OK if rep.mutants else EXIT_FALSE


def cmd_probe(args, out) -> int:
    a, b = _pair(args)
    try:
        rep = conjecture_probe(a.diagram, b.diagram, args.reduced)
    except FlipError as exc:
        raise InputError(str(exc)) from None
    data = rep.to_json()
    if args.format == "json":
        out.write(_dump({"inputs": [a.name, b.name], "reduced": args.reduced, **data}))
    else:
        kinds = data["by_kind"]
        out.write(f"direct entries agreeing: {kinds['direct']['agree']}/{kinds['direct']['total']}\n")
        out.write(f"higher entries agreeing: {kinds['higher']['agree']}/{kinds['higher']['total']}\n")
        out.write(f"equal up to generator signs: {data['equal_up_to_generator_signs']}\n")
        out.write(f"homology equal: {data['homology_equal']}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import CHECKS, DEFAULT_SEED, run_all
    only = [x for part in (args.only or []) for x in part.split(",") if x]
    unknown = [x for x in only if x not in CHECKS]
    if unknown:
        raise InputError(f"unknown check {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    seed = DEFAULT_SEED if args.seed is None else args.seed
    results = run_all(only or None, seed)
    if args.format == "json":
        out.write(_dump({"seed": seed, "passed": all(r.passed for r in results),
                         "checks": [r.to_json() for r in results]}))
    else:
        for r in results:
            out.write(r.line() + "\n")
        out.write(f"{sum(r.passed for r in results)}/{len(results)} passed\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FALSE


COMMANDS = {
    "trees": (cmd_trees, "spanning trees with activity words, gradings and weights"),
    "bracket": (cmd_bracket, "Kauffman bracket from the spanning tree expansion"),
    "jones": (cmd_jones, "Jones polynomial"),
    "homology": (cmd_homology, "Khovanov homology from enhanced states"),
    "ss": (cmd_ss, "a page of the spanning tree spectral sequence"),
    "collapse": (cmd_collapse, "the spanning tree complex and its differential"),
    "ladders": (cmd_ladders, "ladders between two trees"),
    "mutants": (cmd_mutants, "decide mutation via colored matroids (two inputs)"),
    "probe": (cmd_probe, "compare tree complex differentials of two mutants"),
    "verify": (cmd_verify, "run the acceptance checks"),
}


def _items(args) -> list[Loaded]:
    inputs = args.input or []
    items = [load_input(s, args.basepoint, args.edge_order) for s in inputs]
    for it in items:
        if it.diagram.n_crossings > args.max_crossings:
            raise SizeGuard(f"{it.name} has {it.diagram.n_crossings} crossings; "
                            f"the cap is {args.max_crossings} (raise it with --max-crossings)")
    return items


def _single(args) -> Loaded:
    items = _items(args)
    if len(items) != 1:
        raise InputError(f"{args.command} needs exactly one --input")
    return items[0]


def _pair(args) -> tuple[Loaded, Loaded]:
    items = _items(args)
    if len(items) != 2:
        raise InputError(f"{args.command} needs two --input options")
    return items[0], items[1]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khspan", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--input", action="append",
                       help="PD code or graph file, or a bundled fixture name (repeat for two inputs)")
        p.add_argument("--basepoint", type=int, help="arc label carrying the basepoint")
        p.add_argument("--edge-order", help="1-based comma list: new crossing k is old crossing order[k]")
        red = p.add_mutually_exclusive_group()
        red.add_argument("--reduced", dest="reduced", action="store_const", const=True)
        red.add_argument("--unreduced", dest="reduced", action="store_const", const=False)
        p.add_argument("--page", type=int, help="spectral sequence page (default 2)")
        p.add_argument("--kmax", type=int, help="longest ladder (default 3)")
        p.add_argument("--budget", type=int, help="ladder search node budget")
        p.add_argument("--pair", help="T1,T2 for ladders (1-based)")
        p.add_argument("--format", choices=("json", "table"))
        p.add_argument("--seed", type=int)
        p.add_argument("--max-crossings", type=int, help="size guard (default 14)")
        p.add_argument("--only", action="append", help="verify: run only these checks")
        p.add_argument("--fixtures", help="directory of fixture files")
    return ap


def _apply_env(args, environ) -> None:
    converters = {"basepoint": int, "page": int, "kmax": int, "budget": int, "seed": int,
                  "max_crossings": int, "reduced": lambda s: s.lower() not in ("0", "false", "no")}
    for key in ("input", "basepoint", "edge_order", "reduced", "page", "kmax", "budget", "pair",
                "format", "seed", "max_crossings", "only", "fixtures"):
        if getattr(args, key) is not None:
            continue
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            if key in ("input", "only"):
                value = [x for x in raw.split(os.pathsep) if x]
            else:
                value = converters.get(key, str)(raw)
            setattr(args, key, value)
        elif key in DEFAULTS:
            setattr(args, key, DEFAULTS[key])


def main(argv: Optional[list[str]] = None, out=None, environ=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        _apply_env(args, os.environ if environ is None else environ)
    except ValueError as exc:
        print(f"khspan: bad environment setting: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format not in ("json", "table"):
        print(f"khspan: unknown format {args.format!r}", file=sys.stderr)
        return EXIT_INPUT
    if args.fixtures:
        fixtures.FIXTURE_DIR = Path(args.fixtures)
    try:
        return COMMANDS[args.command][0](args, out)
    except InputError as exc:
        print(f"khspan: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeGuard as exc:
        print(f"khspan: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
