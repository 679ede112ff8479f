"""命令行入口 egal-orient

退出码：0 成功，1 领域错误，2 用法或输入格式错误。诊断信息只写标准错误。
"""

import argparse
import logging
import sys
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

from pydantic import ValidationError

from egal_orient import __version__
from egal_orient.config import configure_logging
from egal_orient.errors import EgalOrientError, GraphParseError, UsageError
from egal_orient.models import ReversalStep
from egal_orient.storage import (load_graph, load_set_cover, save_json, save_text, serialize_graph,
                                 serialize_orientation)
from egal_orient.tools import orientation_tools

logger = logging.getLogger(__name__)


def _write_trace(out: TextIO, trace: Sequence[ReversalStep]) -> None:
    for step in trace:
        out.write(f"reversal {step.start} {step.end} {step.end_indegree}\n")


def _cover_indices(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cover must be comma-separated set indices, got {text!r}") from None


def _pairs(text: str) -> Optional[Tuple[int, int]]:
    """取值 all 表示全部有序顶点对，否则为 s,t"""
    if text == "all":
        return None
    try:
        s, t = text.split(",")
        return int(s), int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"pairs must be 'all' or s,t, got {text!r}") from None


def cmd_minlex(args: argparse.Namespace, out: TextIO) -> None:
    result = orientation_tools.minlex(load_graph(args.graph), seed=args.seed)
    out.write(f"sequence: {result['sequence']}\n")
    if args.trace:
        _write_trace(out, result["trace"])
    out.write(serialize_orientation(result["orientation"]))


def cmd_sc_minmax(args: argparse.Namespace, out: TextIO) -> None:
    g = load_graph(args.graph)
    result = orientation_tools.sc_minmax(g, certificate=args.certificate, compare_lex=args.compare_lex)
    out.write(f"max-indegree: {result['max_indegree']}\n")
    if args.trace:
        _write_trace(out, result["trace"])
    if args.certificate:
        report = result["certificate"]
        out.write(f"certificate: {' '.join(str(v) for v in report.witness)}\n")
        out.write(f"certificate-bound: {report.bound}\n")
        for problem in report.violations:
            logger.error("certificate: %s", problem)
    if args.compare_lex:
        comparison = result["comparison"]
        out.write(f"sequence: {comparison['produced']}\n")
        if comparison["oracle"] is not None:
            out.write(f"oracle-sequence: {comparison['oracle']}\n")
            out.write(f"conjecture-holds: {'yes' if comparison['holds'] else 'no'}\n")
    out.write(serialize_orientation(result["orientation"]))


def cmd_bound(args: argparse.Namespace, out: TextIO) -> None:
    out.write(f"bound: {orientation_tools.bound_sc(load_graph(args.graph))['bound']}\n")


def cmd_strip(args: argparse.Namespace, out: TextIO) -> None:
    result = orientation_tools.strip(load_graph(args.graph))
    order = result["order"]
    out.write(f"order: {' '.join(str(v) for v in order.order)}\n")
    out.write(f"peak: {order.peak}\n")
    out.write(serialize_orientation(result["orientation"]))


def cmd_route_tables(args: argparse.Namespace, out: TextIO) -> None:
    tables = orientation_tools.route_tables(load_graph(args.graph))["tables"]
    out.write(f"numbering: {' '.join(str(v) for v in tables.ordering)}\n")
    for e, entry in enumerate(tables.entries):
        tail, head = tables.tails[e], tables.heads[e]
        out.write(f"{tail} {head} UNUSED\n" if entry is None else f"{tail} {head} {entry.lo} {entry.hi}\n")


def cmd_route_sim(args: argparse.Namespace, out: TextIO) -> None:
    g = load_graph(args.graph)
    pairs = None
    if args.pairs is not None:
        s, t = args.pairs
        for v in (s, t):
            if not 0 <= v < g.n:
                raise UsageError(f"vertex {v} out of range 0..{g.n - 1}")
        if s == t:
            raise UsageError("source and destination must differ")
        pairs = [(s, t)]
    result = orientation_tools.route_sim(g, pairs=pairs)
    for r in result["routes"]:
        out.write(f"route {r['source']} {r['target']}: {' '.join(str(v) for v in r['vertices'])}\n")
    out.write(f"max-hops: {result['max_hops']}\n")
    out.write(f"max-table-size: {result['max_table_size']}\n")


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> None:
    result = orientation_tools.oracle(load_graph(args.graph), args.constraint, args.objective)
    found = result["result"]
    if result["objective"].value == "minlex":
        out.write(f"sequence: {found.sequence}\n")
    elif result["objective"].value == "minmax":
        out.write(f"max-indegree: {found.max_indegree}\n")
    else:
        out.write(f"cost: {found.cost:g}\n")
    out.write(serialize_orientation(found.witness))


def cmd_gadget_build(args: argparse.Namespace, out: TextIO) -> None:
    gadget = orientation_tools.gadget_build(args.k, args.l)["gadget"]
    out.write(f"# root {gadget.root}\n")
    if gadget.extra is not None:
        out.write(f"# extra {gadget.extra}\n")
    out.write(serialize_graph(gadget.graph))


def cmd_gadget_reduce(args: argparse.Namespace, out: TextIO) -> None:
    result = orientation_tools.gadget_reduce(load_set_cover(args.setcover))
    out.write(f"# k {result['reduction'].k}\n")
    out.write(serialize_graph(result["reduction"].graph))
    if args.sidecar:
        save_json(args.sidecar, result["sidecar"])


def cmd_gadget_verify(args: argparse.Namespace, out: TextIO) -> None:
    result = orientation_tools.gadget_verify(load_set_cover(args.setcover), args.cover)
    out.write(f"k: {result['k']}\n")
    out.write(f"indegree-k: {result['high_count']}\n")
    out.write(f"acyclic: {'yes' if result['acyclic'] else 'no'}\n")
    if args.output:
        save_text(args.output, serialize_orientation(result["orientation"]))


def cmd_gadget_extract(args: argparse.Namespace, out: TextIO) -> None:
    with open(args.orientation, 'rb') as f:
        text = f.read()
    report = orientation_tools.gadget_extract(load_set_cover(args.setcover), text)["report"]
    out.write(f"cover: {','.join(str(i) for i in report.cover)}\n")
    out.write(f"size: {report.size}\n")
    out.write(f"indegree-k: {report.high_count}\n")
    out.write(f"valid-cover: {'yes' if report.is_cover else 'no'}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="only log errors")
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="log every step")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for the random initial orientation")

    parser = argparse.ArgumentParser(prog="egal-orient", parents=[common],
                                     description="Egalitarian graph orientations and interval routing")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name: str, handler: Callable, help_text: str, target=sub) -> argparse.ArgumentParser:
        p = target.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command("minlex", cmd_minlex, "lexicographically minimal orientation")
    p.add_argument("graph")
    p.add_argument("--trace", action="store_true", help="print every path reversal")

    p = command("sc-minmax", cmd_sc_minmax, "strongly connected orientation with minimum maximum indegree")
    p.add_argument("graph")
    p.add_argument("--trace", action="store_true", help="print every path reversal")
    p.add_argument("--certificate", action="store_true", help="print the optimality certificate")
    p.add_argument("--compare-lex", action="store_true",
                   help="compare the produced sequence with the strongly connected min-lex optimum")

    p = command("bound", cmd_bound, "lower bounds")
    p.add_argument("kind", choices=["sc"])
    p.add_argument("graph")

    p = command("strip", cmd_strip, "acyclic orientation by minimum-degree stripping")
    p.add_argument("graph")

    p = command("route-tables", cmd_route_tables, "interval routing tables")
    p.add_argument("graph")

    p = command("route-sim", cmd_route_sim, "simulate routing on the interval tables")
    p.add_argument("graph")
    p.add_argument("--pairs", type=_pairs, default=None, metavar="all|s,t",
                   help="route all ordered pairs (default) or only s,t")

    p = command("oracle", cmd_oracle, "exhaustive solver for small graphs")
    p.add_argument("graph")
    p.add_argument("--constraint", choices=["none", "sc", "acyclic"], default="none")
    p.add_argument("--objective", choices=["minmax", "minlex", "convex:square", "convex:pow2"], default="minlex")

    gadget = sub.add_parser("gadget", help="set cover reduction")
    gadget_sub = gadget.add_subparsers(dest="gadget_command", metavar="action")
    gadget_sub.required = True

    p = command("build", cmd_gadget_build, "build the gadget H_l", gadget_sub)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)

    p = command("reduce", cmd_gadget_reduce, "build the reduction graph of a set cover instance", gadget_sub)
    p.add_argument("setcover")
    p.add_argument("--sidecar", help="write the root map as JSON to this path")

    p = command("verify", cmd_gadget_verify, "orient the reduction graph from a cover", gadget_sub)
    p.add_argument("setcover")
    p.add_argument("cover", type=_cover_indices)
    p.add_argument("--output", help="write the orientation to this path")

    p = command("extract", cmd_gadget_extract, "extract a cover from an acyclic orientation", gadget_sub)
    p.add_argument("setcover")
    p.add_argument("orientation")
    return parser


def _log_level(args: argparse.Namespace) -> Optional[int]:
    if getattr(args, "quiet", False):
        return logging.ERROR
    if getattr(args, "verbose", False):
        return logging.DEBUG
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not hasattr(args, "seed"):
        args.seed = None
    configure_logging(_log_level(args))

    out = sys.stdout
    try:
        args.handler(args, out)
    except (GraphParseError, UsageError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e.filename}: {e.strerror}", file=sys.stderr)
        return 2
    except EgalOrientError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
