"""Command-line front end: ``grpd <subcommand> ...``.

Exit codes: 0 success or "yes", 1 "no" or oracle disagreement,
2 undecided, 64 usage error, 65 malformed graph or point, 70 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config
from .boundary import is_isolated, parse_point, point_to_json, point_to_text
from .counts import count_to_json
from .cycles import has_exit, simple_cycles
from .dot import emit_dot
from .equivalence import (NO, UNDECIDED, YES, Verdict, decide_groupoid_iso_discrete,
                          decide_oe_discrete, decide_oe_preserving_ep_discrete, invariant_refute)
from .errors import (CapExceededError, ConfigError, GraphFormatError, GrpdError,
                     InvalidPathError)
from .graph import Graph, graph_to_json, parse_graph, serialize_graph, stabilize
from .isolated import census, classify_isolated
from .oracle import cross_check, default_depth

EX_OK, EX_NO, EX_UNDECIDED = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70

_ANSWER_CODE = {YES: EX_OK, NO: EX_NO, UNDECIDED: EX_UNDECIDED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_graph(path: str) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _dump(doc, out):
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _table(rows, out):
    if not rows:
        return
    width = max(len(str(k)) for k, _ in rows)
    for k, v in rows:
        out.write(f"{str(k).ljust(width)}  {v}\n")


# ---- subcommands -----------------------------------------------------------

def _analyze(args, out):
    g = _read_graph(args.graph)
    c = census(g, sample=args.sample)
    cycles = simple_cycles(g)
    cond_l = all(has_exit(g, cy) for cy in cycles)
    if args.json:
        doc = c.to_json()
        doc["condition_L"] = cond_l
        doc["simple_cycles"] = len(cycles)
        _dump(doc, out)
    else:
        _table([
            ("condition_L", cond_l),
            ("simple_cycles", len(cycles)),
            ("discrete", c.discrete),
            ("isolated_finite", count_to_json(c.isolated_finite)),
            ("isolated_ep", count_to_json(c.isolated_ep)),
            ("isolated_wandering", count_to_json(c.isolated_wandering)),
            ("isolated_ep_orbits", count_to_json(c.isolated_ep_orbits)),
            ("no_exit_cycles", " ".join(str(x) for x in c.no_exit_cycles) or "-"),
        ], out)
    return EX_OK


def _classify(args, out):
    g = _read_graph(args.graph)
    if args.point:
        try:
            pts = [parse_point(g, t) for t in args.point]
        except ValueError as exc:
            raise InvalidPathError(str(exc)) from None
    else:
        c = census(g, sample=args.sample)
        pts = [x for _, xs in sorted(c.witnesses.items()) for x in xs]
    rows = []
    for x in pts:
        iso = is_isolated(g, x)
        rows.append({"point": point_to_json(x), "text": point_to_text(x), "isolated": iso,
                     "type": classify_isolated(g, x).value if iso else None})
    if args.json:
        _dump({"points": rows}, out)
    else:
        _table([(r["text"], r["type"] or "not isolated") for r in rows], out)
    return EX_OK


def _stabilize(args, out):
    g = stabilize(_read_graph(args.graph))
    if args.json:
        _dump(graph_to_json(g), out)
    else:
        out.write(serialize_graph(g))
    return EX_OK


def _compare(args, out):
    gE, gF = _read_graph(args.left), _read_graph(args.right)
    if args.mode == "oe":
        v = decide_oe_discrete(gE, gF)
    elif args.mode == "oe-ep":
        v = decide_oe_preserving_ep_discrete(gE, gF)
    elif args.mode == "iso":
        v = decide_groupoid_iso_discrete(gE, gF, window=args.window)
    else:
        ob = invariant_refute(gE, gF)
        if ob is None:
            v = Verdict(UNDECIDED, reason="no census invariant separates the graphs")
        else:
            v = Verdict(NO, obstruction=ob, reason="a groupoid isomorphism invariant differs")
    if args.json:
        _dump(v.to_json(), out)
    else:
        rows = [("answer", v.answer), ("reason", v.reason or "-")]
        if v.obstruction is not None:
            ob = v.obstruction.to_json()
            rows += [("obstruction", ob["invariant"]), ("left", ob["left"]), ("right", ob["right"])]
        _table(rows, out)
    return _ANSWER_CODE[v.answer]


def _oracle(args, out):
    g = _read_graph(args.graph)
    depth = default_depth(g) if args.depth is None else args.depth
    if depth < 1:
        raise UsageError("--depth must be positive")
    budget = min(args.budget, config.node_cap())
    rep = cross_check(g, depth=depth, budget=budget)
    if args.json:
        _dump(rep.to_json(), out)
    else:
        _table([("depth", rep.depth), ("enumeration_depth", rep.enumeration_depth),
                ("checked", rep.checked), ("certified", rep.certified),
                ("not_isolated", rep.refuted), ("unknown", len(rep.unknowns)),
                ("disagreements", len(rep.disagreements))], out)
    return EX_OK if rep.ok else EX_NO


def _emit_dot(args, out):
    g = _read_graph(args.graph)
    out.write(emit_dot(g))
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grpd", description="Boundary path spaces and graph groupoids of directed graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        return sp

    sp = add("analyze", _analyze, "census of isolated points")
    sp.add_argument("graph")
    sp.add_argument("--sample", type=int, default=config.WITNESS_SAMPLE, help="witnesses per kind")

    sp = add("classify", _classify, "classify boundary points")
    sp.add_argument("graph")
    sp.add_argument("--point", action="append", help="point text, e.g. 'ep v: e | f g' (repeatable)")
    sp.add_argument("--sample", type=int, default=config.WITNESS_SAMPLE)

    sp = add("stabilize", _stabilize, "attach a head at every vertex")
    sp.add_argument("graph")

    sp = add("compare", _compare, "compare two graphs")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--mode", choices=("oe", "oe-ep", "iso", "refute"), default="iso")
    sp.add_argument("--window", type=int, default=10, help="verification window for --mode iso")

    sp = add("oracle", _oracle, "cross-check the classifier against the brute-force oracle")
    sp.add_argument("graph")
    sp.add_argument("--depth", type=int, default=None, help="oracle depth (default 4*(|V|+2))")
    sp.add_argument("--budget", type=int, default=2000, help="path budget for point enumeration")

    sp = add("emit-dot", _emit_dot, "render as Graphviz DOT")
    sp.add_argument("graph")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, ConfigError) as exc:
        err.write(f"{exc}\n")
        return EX_USAGE
    except GraphFormatError as exc:
        err.write(f"parse error: {exc}\n")
        return EX_DATAERR
    except CapExceededError as exc:
        err.write(f"cap exceeded: {exc}\n")
        return EX_SOFTWARE
    except GrpdError as exc:
        err.write(f"invalid input: {exc}\n")
        return EX_DATAERR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
