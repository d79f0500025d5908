"""``gpgame`` command-line entry point.

Exit codes: 0 success, 1 suite failure, 2 bad input (parse error, parameter
out of range, malformed set), 3 vertex cap exceeded, 4 search budget
exceeded, 5 interactive session aborted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .errors import (BudgetExceeded, IllegalMove, NotATree, ParameterOutOfRange, ParseError,
                     PreconditionViolated, VertexCapExceeded)
from .families import DEFAULT_VERTEX_CAP, build, parse_family
from .game import Rule, Solver, solve
from .gp import gp_number
from .graph import Graph, VertexSet, format_edge_list, playable_set, read_edge_list
from .play import SessionAborted, play_session
from .report import Config, render
from .suites import SUITES, run

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_BUDGET, EXIT_ABORTED = range(6)


def load_graph(expr: str, cfg: Config) -> Graph:
    """Build a graph from a family expression, or read ``@path`` as an edge list."""
    if expr.startswith("@"):
        g = read_edge_list(expr[1:])
        if g.order > cfg.vertex_cap:
            raise VertexCapExceeded(f"graph has {g.order} vertices, cap is {cfg.vertex_cap}")
        return g
    return build(parse_family(expr), cfg.vertex_cap)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(record), lineterminator="\n")
        w.writeheader()
        w.writerow({k: " ".join(map(str, v)) if isinstance(v, list) else v for k, v in record.items()})
        out.write(buf.getvalue())
    else:
        for k, v in record.items():
            if k == "principal_variation":
                v = " ".join(map(str, v)) or "(none)"
            elif isinstance(v, list):
                v = "{" + ",".join(map(str, v)) + "}"
            out.write(f"{k}: {v}\n")


def cmd_solve(args, cfg: Config, out) -> int:
    rule = Rule(args.rule_pos or args.rule)
    g = load_graph(args.expr, cfg)
    t0 = time.perf_counter()
    o = solve(g, rule, cfg.state_cap, cfg.cache_dir, cfg.restrict_first_move)
    record = {"expr": args.expr, "rule": rule.value, "winner": o.winner,
              "best_first_move": o.best_first_move, "states": o.solved_states,
              "moves": len(o.principal_variation), "principal_variation": list(o.principal_variation),
              "ms": round((time.perf_counter() - t0) * 1000, 1)}
    if o.restricted:
        record["restricted_first_move"] = True
    _emit_record(record, cfg.output_format, out)
    return EXIT_OK


def cmd_gp(args, cfg: Config, out) -> int:
    g = load_graph(args.expr, cfg)
    rep = gp_number(g)
    _emit_record({"expr": args.expr, "gp": rep.gp_number, "witness": list(rep.witness),
                  "explored": rep.explored}, cfg.output_format, out)
    return EXIT_OK


def _parse_set(text: str) -> VertexSet:
    text = text.strip()
    if not text:
        return VertexSet()
    try:
        return VertexSet(int(t) for t in text.split(","))
    except ValueError:
        raise PreconditionViolated(f"bad vertex list {text!r}") from None


def cmd_playable(args, cfg: Config, out) -> int:
    g = load_graph(args.expr, cfg)
    S = _parse_set(args.set)
    if S.mask >> g.order:
        raise PreconditionViolated(f"set {S!r} has vertices outside the graph")
    P = playable_set(g.distances, S)
    _emit_record({"expr": args.expr, "played": list(S), "playable": list(P)}, cfg.output_format, out)
    return EXIT_OK


def cmd_play(args, cfg: Config, out) -> int:
    g = load_graph(args.expr, cfg)
    solver = Solver(g, Rule(args.rule), cfg.state_cap)
    try:
        play_session(solver, args.human, sys.stdin, out)
    except SessionAborted as exc:
        print(f"gpgame: session aborted: {exc}", file=sys.stderr)
        return EXIT_ABORTED
    return EXIT_OK


def cmd_verify(args, cfg: Config, out) -> int:
    reports = run(args.suite, cfg)
    out.write(render(reports, cfg.output_format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_export(args, cfg: Config, out) -> int:
    text = format_edge_list(load_graph(args.expr, cfg))
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--format", choices=("text", "json", "csv"), default=S)
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--vertex-cap", type=_positive, default=S)
    common.add_argument("--state-cap", type=_positive, default=S)
    common.add_argument("--cache", metavar="DIR", default=S)
    common.add_argument("--first-move-restriction", action="store_true", default=S,
                        help="only try vertex 0 as A's first move (valid for vertex-transitive graphs)")

    p = argparse.ArgumentParser(prog="gpgame", parents=[common],
                                description="General position achievement/avoidance game solver.")
    sub = p.add_subparsers(dest="command", required=True)
    rules = [r.value for r in Rule]

    sp = sub.add_parser("solve", parents=[common], help="solve the game on a graph")
    sp.add_argument("expr")
    sp.add_argument("rule_pos", nargs="?", choices=rules, metavar="RULE")
    sp.add_argument("--rule", choices=rules, default="achievement")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gp", parents=[common], help="compute the general position number")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_gp)

    sp = sub.add_parser("playable", parents=[common], help="list playable vertices after a set")
    sp.add_argument("expr")
    sp.add_argument("--set", default="", help="comma-separated played vertices")
    sp.set_defaults(func=cmd_playable)

    sp = sub.add_parser("play", parents=[common], help="play interactively against the engine")
    sp.add_argument("expr")
    sp.add_argument("--rule", choices=rules, default="achievement")
    sp.add_argument("--as", dest="human", choices=("A", "B"), default="A")
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("verify", parents=[common], help="run a theorem-reproduction suite")
    sp.add_argument("suite", choices=list(SUITES) + ["all"])
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", parents=[common], help="write a graph in edge-list format")
    sp.add_argument("expr")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    # without --state-cap the solver falls back to GPGAME_STATE_CAP
    cfg = Config(vertex_cap=getattr(args, "vertex_cap", DEFAULT_VERTEX_CAP),
                 state_cap=getattr(args, "state_cap", None),
                 cache_dir=getattr(args, "cache", None),
                 output_format=getattr(args, "format", "text"),
                 restrict_first_move=getattr(args, "first_move_restriction", False),
                 seed=getattr(args, "seed", 1))
    try:
        return args.func(args, cfg, out)
    except (ParseError, ParameterOutOfRange, PreconditionViolated, NotATree, IllegalMove) as exc:
        print(f"gpgame: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, OSError) as exc:
        print(f"gpgame: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VertexCapExceeded as exc:
        print(f"gpgame: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BudgetExceeded as exc:
        print(f"gpgame: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
