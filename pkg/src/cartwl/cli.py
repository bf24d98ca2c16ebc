"""Command-line entry point; every command prints one JSON report."""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import tempfile
import time
from importlib import metadata
from pathlib import Path

import numpy as np
import scipy

from .cc.algebraic import algebraically_isomorphic
from .cc.closure import wl
from .cc.config import verify_axioms
from .constructions import (build_iso_family, closure_refines_exponentiation, enumerate_group, exponentiate,
                            parse_cycles, product_closure_check, symmetric_group)
from .errors import (BudgetExceeded, CertificationError, CoherenceError, DisconnectedGraphError, GraphParseError,
                     InvalidGraphSpec, NotColorExactError, NotEquivalentError)
from .extension import EXTENSION_MAX_POINTS, two_closure, two_extension
from .factor import prime_factorize
from .graphio import parse_edge_list, parse_graph6, serialize_edge_list, serialize_graph6
from .graphs import Graph, cartesian_product, named_graph
from .kwl import TUPLE_BUDGET, k_wl, wl_m_closed, wl_m_equivalent
from .verify import SUITES, run_suite

DOMAIN_ERRORS = (DisconnectedGraphError, BudgetExceeded, NotEquivalentError, GraphParseError, CertificationError,
                 CoherenceError, NotColorExactError)


class UsageError(Exception):
    pass


class _AppendSource(argparse.Action):
    """Keep ``--named`` and ``--file`` in command-line order."""

    def __call__(self, parser, namespace, value, option_string=None):
        sources = list(getattr(namespace, "sources", None) or [])
        sources.append((self.const, value))
        namespace.sources = sources


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--named", action=_AppendSource, const="named", metavar="NAME:PARAMS",
                   help="named graph such as hamming:2,4 (repeatable)")
    p.add_argument("--file", action=_AppendSource, const="file", metavar="PATH",
                   help="graph file, one graph6 string per line or one edge list (repeatable)")
    p.add_argument("--format", choices=("graph6", "edges"), default="graph6", help="format of --file inputs")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized parts")
    p.add_argument("--budget-tuples", type=int, default=TUPLE_BUDGET, help="cap on n^k for k-WL runs")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; runs are single-threaded")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartwl", description="Coherent closures, k-WL and Cartesian factorization.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "wl-close": "coherent closure of one graph",
        "kwl": "k-dimensional WL run on one graph",
        "equiv": "WL_m-equivalence of two graphs",
        "closed": "whether a graph is WL_m-closed",
        "factorize": "Cartesian prime factorization",
        "product": "Cartesian product of the inputs",
        "tensor-check": "closure of a product of primes against tensor products of block closures",
        "exponentiate": "exponentiation of WL-equivalent graphs by a permutation group",
        "two-closure": "2-extension and 2-closure of a graph's closure",
        "named": "print named graphs",
        "verify": "run an invariant suite over the built-in corpus",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name in ("kwl",):
            p.add_argument("--k", type=int, default=3)
            p.add_argument("--colors-out", metavar="PATH", help="also write raw tuple colors (little-endian u32)")
        if name in ("equiv", "closed"):
            p.add_argument("--m", type=int, default=2)
        if name == "exponentiate":
            p.add_argument("--gen", action="append", default=None, metavar="CYCLES",
                           help="group generator in 1-based cycle notation, e.g. '(1 2)'; default Sym(n)")
        if name == "two-closure":
            p.add_argument("--cap", type=int, default=EXTENSION_MAX_POINTS, help="largest base point count")
        if name == "verify":
            p.add_argument("suite", choices=SUITES)
    return parser


def _read_file(path: str, fmt: str) -> list[Graph]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if fmt == "edges":
            return [parse_edge_list(raw.decode("utf-8"))]
        lines = [ln for ln in raw.splitlines() if ln.strip()]
        return [parse_graph6(ln) for ln in lines]
    except GraphParseError as exc:
        raise GraphParseError(f"{path}: {exc}", exc.offset, exc.kind) from None
    except UnicodeDecodeError:
        raise GraphParseError(f"{path}: not UTF-8 text") from None


def load_graphs(args) -> list[Graph]:
    graphs = []
    for kind, value in getattr(args, "sources", None) or []:
        if kind == "named":
            try:
                graphs.append(named_graph(value))
            except InvalidGraphSpec as exc:
                raise UsageError(f"--named {value}: {exc}") from None
        else:
            graphs.extend(_read_file(value, args.format))
    return graphs


def _need(graphs: list[Graph], count: int | None, command: str, at_least: int = 1) -> None:
    if count is not None and len(graphs) != count:
        raise UsageError(f"{command} takes exactly {count} input graph(s), got {len(graphs)}")
    if len(graphs) < at_least:
        raise UsageError(f"{command} needs at least {at_least} input graph(s), got {len(graphs)}")


def run_command(args, graphs: list[Graph]) -> tuple[dict, str]:
    """Dispatch a parsed command; returns the result payload and a one-line summary."""
    cmd = args.command
    if cmd == "wl-close":
        _need(graphs, 1, cmd)
        cc = wl(graphs[0])
        result = cc.to_json()
        result["axioms"] = verify_axioms(cc).as_dict()
        result["intersection_numbers"] = cc.tensor.triples()
        return result, f"closure rank {cc.rank}"
    if cmd == "kwl":
        _need(graphs, 1, cmd)
        kc = k_wl(graphs[0], args.k, args.budget_tuples)
        if args.colors_out:
            _atomic_write_bytes(args.colors_out, kc.color.astype("<u4").tobytes())
        return kc.to_json(), f"{args.k}-WL rank {kc.rank} after {len(kc.trace)} rounds"
    if cmd == "equiv":
        _need(graphs, 2, cmd)
        eq = wl_m_equivalent(graphs[0], graphs[1], args.m, args.budget_tuples)
        result = {"m": args.m, "equivalent": eq}
        if args.m == 2:
            w = algebraically_isomorphic(wl(graphs[0]), wl(graphs[1]), tags=("E",))
            result["witness"] = list(w.color_bijection) if w else None
        return result, f"WL_{args.m}-equivalent: {eq}"
    if cmd == "closed":
        _need(graphs, 1, cmd)
        closed = wl_m_closed(graphs[0], args.m, args.budget_tuples)
        return {"m": args.m, "closed": closed}, f"WL_{args.m}-closed: {closed}"
    if cmd == "factorize":
        _need(graphs, 1, cmd)
        rep = prime_factorize(graphs[0])
        return rep.to_json(), f"{rep.num_factors} prime factor(s), orders {[f.n for f in rep.factors]}"
    if cmd == "product":
        _need(graphs, None, cmd)
        g, _ = cartesian_product(graphs)
        return ({"n": g.n, "edges": g.edge_count, "graph6": serialize_graph6(g).decode(),
                 "edge_list": serialize_edge_list(g)}, f"product on {g.n} vertices")
    if cmd == "tensor-check":
        _need(graphs, None, cmd)
        rep = product_closure_check(graphs)
        return rep, f"closure equals block tensor: {rep['closure_equals_block_tensor']}"
    if cmd == "exponentiate":
        _need(graphs, None, cmd)
        n = len(graphs)
        try:
            group = (enumerate_group(n, [parse_cycles(c, n) for c in args.gen]) if args.gen
                     else symmetric_group(n))
        except ValueError as exc:
            raise UsageError(f"--gen: {exc}") from None
        exp = exponentiate(build_iso_family(graphs), group)
        below = closure_refines_exponentiation(graphs) if group.order == symmetric_group(n).order else None
        closure = wl(cartesian_product(graphs)[0])
        return ({"n": exp.n, "rank": exp.rank, "group_order": group.order,
                 "coherent": verify_axioms(exp).coherent,
                 "closure_rank": closure.rank, "closure_below": below,
                 "equals_closure": closure.same_partition(exp)},
                f"exponentiation rank {exp.rank} over a group of order {group.order}")
    if cmd == "two-closure":
        _need(graphs, 1, cmd)
        cc = wl(graphs[0])
        ext = two_extension(cc, args.cap)
        bar = two_closure(cc, extension=ext)
        closed = bar.same_partition(cc)
        return ({"n": cc.n, "rank": cc.rank, "extension_rank": ext.extended.rank,
                 "two_closure_rank": bar.rank, "two_closed": closed}, f"2-closed: {closed}")
    if cmd == "named":
        _need(graphs, None, cmd)
        items = [{"n": g.n, "edges": g.edge_count, "graph6": serialize_graph6(g).decode()} for g in graphs]
        return {"graphs": items}, f"{len(items)} graph(s)"
    if cmd == "verify":
        rep = run_suite(args.suite, seed=args.seed)
        return rep, f"suite {args.suite}: {'pass' if rep['passed'] else 'FAIL'}"
    raise UsageError(f"unknown command {cmd}")


def _versions() -> dict:
    try:
        own = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        own = "unknown"
    return {"cartwl": own, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def _atomic_write_bytes(path: str, data: bytes) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    start = time.perf_counter()
    try:
        graphs = load_graphs(args)
        result, summary = run_command(args, graphs)
    except UsageError as exc:
        print(f"cartwl {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS + (InvalidGraphSpec, ValueError) as exc:
        print(f"cartwl {args.command}: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "inputs": [serialize_graph6(g).decode() for g in graphs],
        "result": result,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
        "versions": _versions(),
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write_bytes(args.out, text.encode())
    else:
        sys.stdout.write(text)
    print(f"cartwl {args.command}: {summary}", file=sys.stderr)
    return 0
