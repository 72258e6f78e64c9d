"""Command-line front end: ``check``, ``solve``, ``gen``, ``bench`` and ``compose``.

Reports are ``key=value`` lines on stdout.  Exit status is 0 on success,
2 when the result is infeasible or a violation was found, and 3 on usage
errors (bad flags, unreadable or malformed files, method/graph mismatch).
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import greedy, heuristics, instances
from .feasibility import (
    AllContractedError,
    ContractionChecker,
    Violation,
    check_additive_endpoint_restricted,
    check_bipartite_unit_11,
    check_girth6_weak_20,
)
from .graph import Graph, apply_contraction
from .oracle import OracleCapError, brute_force_optimum
from .textio import FormatError, GraphFile, format_edge_set, format_graph, format_rational, read_edge_set, read_graph
from .tolerance import AffineTolerance, LogStretchTolerance, compose, parse_rational
from .tree_dp import StrictTreeDP, WeakTreeDP

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_USAGE = 3

METHODS = (
    "brute",
    "path-greedy",
    "cycle-greedy",
    "tree-unit",
    "tree-dp",
    "tree-dp-weak",
    "cluster",
    "topdeg",
    "highdeg",
    "mindeg",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: object) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "inf" if x == float("inf") else ("-inf" if x == float("-inf") else repr(x))
    return str(x)


@dataclass
class RunReport:
    fields: dict[str, object] = field(default_factory=dict)

    def add(self, **kv: object) -> RunReport:
        self.fields.update(kv)
        return self

    def render(self) -> str:
        return "".join(f"{k}={_fmt(v)}\n" for k, v in self.fields.items())


def _violation_text(v: Violation) -> str:
    return ",".join(_fmt(x) for x in v.as_tuple())


def _load_graph(path: str) -> GraphFile:
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _tolerance(args: argparse.Namespace, gf: GraphFile | None, default: AffineTolerance | None = None) -> AffineTolerance:
    alpha, beta = getattr(args, "alpha", None), getattr(args, "beta", None)
    if alpha is None and beta is None:
        if gf is not None and gf.tolerance is not None:
            return gf.tolerance
        if default is not None:
            return default
        raise UsageError("no tolerance: pass --alpha/--beta or add a 't' line to the graph file")
    try:
        return AffineTolerance(alpha if alpha is not None else Fraction(1), beta if beta is not None else Fraction(0))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _radius(text: str) -> Fraction | str:
    return heuristics.LOG2N if text == heuristics.LOG2N else _rational(text)


def _contraction_fields(g: Graph, chosen: frozenset[int]) -> dict[str, object]:
    res = apply_contraction(g, chosen)
    return {
        "size": len(chosen),
        "delta": res.delta,
        "phi": res.phi,
        "n_quotient": res.quotient.n,
        "m_quotient": res.quotient.m,
    }


def _fresh_check(g: Graph, tol, weak: bool, chosen: frozenset[int]) -> tuple[bool, str]:
    try:
        bad = ContractionChecker(g, tol, weak=weak).check(chosen)
    except AllContractedError:
        return False, "all_contracted"
    return bad is None, "none" if bad is None else _violation_text(bad)


# ---------------------------------------------------------------------------
# check


def cmd_check(args: argparse.Namespace) -> tuple[RunReport, int]:
    gf = _load_graph(args.graph)
    g = gf.graph
    try:
        chosen = read_edge_set(args.set)
    except OSError as exc:
        raise UsageError(f"cannot read {args.set}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise UsageError(f"{args.set}: {exc}") from None
    if any(not 0 <= e < g.m for e in chosen):
        raise UsageError(f"{args.set}: edge id outside [0, {g.m})")
    weak = args.weak or (gf.weak and args.alpha is None and args.beta is None)
    mode = args.mode
    if mode == "bip11":
        tol = AffineTolerance(1, 1)
    elif mode == "girth6":
        tol, weak = AffineTolerance(2, 0), True
    else:
        tol = _tolerance(args, gf)
    if mode == "additive-fast" and tol.alpha != 1:
        raise UsageError("additive-fast needs alpha = 1")
    start = time.perf_counter()
    status = "none"
    try:
        if mode == "general":
            bad = ContractionChecker(g, tol, weak=weak).check(chosen)
        elif mode == "additive-fast":
            bad = check_additive_endpoint_restricted(g, tol.beta, chosen)
        elif mode == "bip11":
            bad = check_bipartite_unit_11(g, chosen)
        else:
            bad = check_girth6_weak_20(g, chosen)
    except AllContractedError:
        bad, status = None, "all_contracted"
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    elapsed = time.perf_counter() - start
    feasible = bad is None and status == "none"
    if bad is not None:
        status = _violation_text(bad)
    report = RunReport().add(
        command="check", graph=args.graph, mode=mode, alpha=tol.alpha, beta=tol.beta, weak=weak
    )
    report.add(**_contraction_fields(g, chosen))
    report.add(feasible=feasible, violation=status, seconds=f"{elapsed:.6f}")
    return report, EXIT_OK if feasible else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------
# solve


@dataclass
class Solution:
    edges: frozenset[int]
    tolerance: object
    weak: bool = False
    tables: str | None = None
    extra: dict[str, object] = field(default_factory=dict)


def _need_tree(g: Graph, method: str) -> None:
    if not g.is_tree():
        raise UsageError(f"method {method} needs a tree")


def _need_connected(g: Graph) -> None:
    if not g.is_connected():
        raise UsageError("solvers need a connected graph")


def run_method(method: str, g: Graph, opts: argparse.Namespace, gf: GraphFile | None = None) -> Solution:
    """Dispatch one solver; raises UsageError on method/graph mismatch."""
    _need_connected(g)
    want_tables = bool(getattr(opts, "emit_tables", None))
    try:
        if method == "brute":
            tol = _tolerance(opts, gf)
            weak = bool(getattr(opts, "weak", False)) or bool(gf and gf.weak and opts.alpha is None and opts.beta is None)
            res = brute_force_optimum(g, tol, weak=weak, objective=getattr(opts, "objective", "phi") or "phi")
            if not res.witnesses:
                raise UsageError("no feasible weak contraction exists")
            return Solution(res.witnesses[0], tol, weak, extra={"oracle_phi": res.best_phi, "oracle_size": res.best_size})
        if method == "path-greedy":
            tol = _tolerance(opts, gf)
            return Solution(greedy.solve_path_graph(g, tol), tol)
        if method == "cycle-greedy":
            tol = _tolerance(opts, gf)
            return Solution(greedy.solve_cycle_graph(g, tol), tol)
        if method == "tree-unit":
            tol = _tolerance(opts, gf)
            if tol.alpha != 1 or tol.beta.denominator != 1:
                raise UsageError("tree-unit needs alpha = 1 and an integer beta")
            return Solution(greedy.unit_tree_additive(g, int(tol.beta)), tol)
        if method == "tree-dp":
            _need_tree(g, method)
            tol = _tolerance(opts, gf)
            dp = StrictTreeDP(g, tol)
            return Solution(dp.reconstruct(), tol, tables=dp.tables.format() if want_tables else None)
        if method == "tree-dp-weak":
            _need_tree(g, method)
            tol = _tolerance(opts, gf)
            wdp = WeakTreeDP(g, tol)
            return Solution(wdp.reconstruct(), tol, True, tables=wdp.format_tables() if want_tables else None)
        if method == "cluster":
            k = opts.k if opts.k is not None else Fraction(2)
            chosen = heuristics.multiplicative_contraction(g, k)
            tol = LogStretchTolerance(g.n) if k == heuristics.LOG2N else AffineTolerance(2 * k - 1, 1)
            return Solution(chosen, tol, extra={"k": k})
        if method == "topdeg":
            k = opts.k if opts.k is not None else Fraction(2)
            if k == heuristics.LOG2N or k.denominator != 1:
                raise UsageError("topdeg needs an even integer --k")
            return Solution(heuristics.additive_topdegree(g, int(k)), AffineTolerance(1, k), extra={"k": k})
        if method == "highdeg":
            k = opts.k if opts.k is not None else Fraction(2)
            if k == heuristics.LOG2N:
                raise UsageError("highdeg needs a rational --k")
            return Solution(heuristics.additive_highdegree(g, k), AffineTolerance(1, k), extra={"k": k})
        if method == "mindeg":
            d = opts.d if opts.d is not None else 1
            return Solution(heuristics.min_degree_clustering(g, d), AffineTolerance(5, 1), extra={"d": d})
    except (ValueError, OracleCapError) as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown method {method!r}")


def cmd_solve(args: argparse.Namespace) -> tuple[RunReport, int]:
    gf = _load_graph(args.graph)
    g = gf.graph
    start = time.perf_counter()
    report = RunReport().add(command="solve", graph=args.graph, method=args.method)
    try:
        sol = run_method(args.method, g, args, gf)
    except heuristics.VerificationError as exc:
        report.add(**_contraction_fields(g, exc.edges))
        report.add(feasible=False, violation=_violation_text(exc.violation))
        return report, EXIT_INFEASIBLE
    elapsed = time.perf_counter() - start
    feasible, status = _fresh_check(g, sol.tolerance, sol.weak, sol.edges)
    tol = sol.tolerance
    if isinstance(tol, AffineTolerance):
        report.add(alpha=tol.alpha, beta=tol.beta)
    else:
        report.add(tolerance=str(tol))
    report.add(weak=sol.weak, **sol.extra)
    report.add(**_contraction_fields(g, sol.edges))
    report.add(feasible=feasible, violation=status, seconds=f"{elapsed:.6f}")
    if args.out:
        Path(args.out).write_text(format_edge_set(sol.edges))
        report.add(out=args.out)
    if args.emit_tables and sol.tables is not None:
        Path(args.emit_tables).write_text(sol.tables)
        report.add(tables=args.emit_tables)
    return report, EXIT_OK if feasible else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------
# gen

GEN_FAMILIES = (*instances.FAMILIES, "layered", "partition_cycle", "clique_lollipop", "bipartite_lollipop", "indset")


def cmd_gen(args: argparse.Namespace) -> tuple[RunReport, int]:
    fam = args.family
    report = RunReport().add(command="gen", family=fam, seed=args.seed)
    inst: instances.Instance | None = None
    try:
        if fam in instances.FAMILIES:
            if args.n is None:
                raise UsageError(f"--n is required for {fam}")
            g = instances.gen_basic(fam, args.n, seed=args.seed, p=args.p, weighted=args.weighted)
        elif fam == "layered":
            if args.n is None or args.d is None:
                raise UsageError("layered needs --n and --d")
            g = instances.gen_layered(args.n, args.d)
        elif fam == "partition_cycle":
            if args.values:
                part = instances.CloseToOnePartitionInstance(tuple(_rational(x) for x in args.values.split(",")))
            elif args.free:
                part = instances.random_free_deviations(args.n or 6, args.seed)
            else:
                part = instances.random_close_to_one(args.n or 6, args.seed)
            inst = instances.gen_partition_cycle(part)
            report.add(values=",".join(format_rational(a) for a in part.values),
                       yes_instance=instances.has_equal_partition(part.values))
        else:
            if not args.base:
                raise UsageError(f"{fam} needs --base GRAPH")
            base = _load_graph(args.base).graph
            if fam == "clique_lollipop":
                inst = instances.gen_clique_lollipop(base, args.beta if args.beta is not None else 1)
            elif fam == "bipartite_lollipop":
                inst = instances.gen_bipartite_lollipop(base)
            else:
                inst = instances.gen_indset_reduction(base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if inst is not None:
        g = inst.graph
        text = format_graph(g, inst.tolerance, inst.weak)
        report.add(alpha=inst.tolerance.alpha, beta=inst.tolerance.beta, weak=inst.weak)
    else:
        text = format_graph(g)
    report.add(n=g.n, m=g.m)
    if args.out:
        Path(args.out).write_text(text)
        report.add(out=args.out)
    else:
        sys.stdout.write(text)
    return report, EXIT_OK


# ---------------------------------------------------------------------------
# bench

BENCH_COLUMNS = ("instance", "method", "status", "size", "phi", "n_quotient", "m_quotient", "feasible", "seconds")


def _bench_one(job: tuple[str, str, argparse.Namespace]) -> dict[str, object]:
    path, method, opts = job
    row: dict[str, object] = {"instance": Path(path).name, "method": method}
    try:
        gf = _load_graph(path)
        start = time.perf_counter()
        sol = run_method(method, gf.graph, opts, gf)
        elapsed = time.perf_counter() - start
        feasible, _ = _fresh_check(gf.graph, sol.tolerance, sol.weak, sol.edges)
        fields = _contraction_fields(gf.graph, sol.edges)
        row.update(status="ok", feasible=feasible, seconds=f"{elapsed:.6f}")
        row.update({k: fields[k] for k in ("size", "phi", "n_quotient", "m_quotient")})
    except heuristics.VerificationError:
        row.update(status="violation", feasible=False)
    except UsageError as exc:
        row.update(status=f"skipped: {exc}")
    return row


def cmd_bench(args: argparse.Namespace) -> tuple[RunReport, int]:
    folder = Path(args.dir)
    if not folder.is_dir():
        raise UsageError(f"{folder} is not a directory")
    files = sorted(str(p) for p in folder.iterdir() if p.suffix in (".txt", ".graph", ".gr"))
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    opts = argparse.Namespace(alpha=args.alpha, beta=args.beta, weak=False, k=args.k, d=args.d,
                              objective="phi", emit_tables=None)
    jobs = [(f, m, opts) for f in files for m in methods]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    rows.sort(key=lambda r: (str(r["instance"]), str(r["method"])))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, restval="")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in r.items()})
    finally:
        if args.out:
            out.close()
    report = RunReport().add(command="bench", instances=len(files), methods=",".join(methods), rows=len(rows))
    if args.out:
        report.add(out=args.out)
        return report, EXIT_OK
    return RunReport(), EXIT_OK


# ---------------------------------------------------------------------------
# compose


def cmd_compose(args: argparse.Namespace) -> tuple[RunReport, int]:
    gf = _load_graph(args.graph)
    g = gf.graph
    try:
        phi = AffineTolerance(*args.phi)
        psi = AffineTolerance(*args.psi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    weak = args.weak

    def phase(graph: Graph, tol: AffineTolerance) -> frozenset[int]:
        opts = argparse.Namespace(alpha=tol.alpha, beta=tol.beta, weak=weak, k=None, d=None,
                                  objective="phi", emit_tables=None)
        return run_method(args.method, graph, opts).edges

    first = phase(g, phi)
    contracted = apply_contraction(g, first)
    if weak and contracted.quotient.n < 2:
        raise UsageError("the first phase left a single vertex")
    second = phase(contracted.quotient, psi)
    union = first | contracted.lift(second)
    total = compose(psi, phi)
    feasible, status = _fresh_check(g, total, weak, union)
    report = RunReport().add(
        command="compose", graph=args.graph, method=args.method,
        phi_tolerance=str(phi), psi_tolerance=str(psi), alpha=total.alpha, beta=total.beta, weak=weak,
        first_size=len(first), second_size=len(second),
    )
    report.add(**_contraction_fields(g, union))
    report.add(feasible=feasible, violation=status)
    if args.out:
        Path(args.out).write_text(format_edge_set(union))
        report.add(out=args.out)
    return report, EXIT_OK if feasible else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="distcontract", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tolerance_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=_rational, help="multiplicative stretch, e.g. 3/2")
        p.add_argument("--beta", type=_rational, help="additive slack, e.g. 1")

    p = sub.add_parser("check", help="verify a contraction set")
    p.add_argument("--graph", required=True)
    p.add_argument("--set", required=True, help="file with one edge id per line")
    tolerance_flags(p)
    p.add_argument("--weak", action="store_true")
    p.add_argument("--mode", choices=("general", "additive-fast", "bip11", "girth6"), default="general")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="compute a contraction set")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    tolerance_flags(p)
    p.add_argument("--weak", action="store_true", help="weak contractions (brute method)")
    p.add_argument("--objective", choices=("phi", "cardinality"), default="phi")
    p.add_argument("--k", type=_radius, help="parameter of cluster/topdeg/highdeg ('log2n' allowed for cluster)")
    p.add_argument("--d", type=int, help="minimum degree for mindeg")
    p.add_argument("--out", help="write the edge set here")
    p.add_argument("--emit-tables", help="write the tree program tables here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=GEN_FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=_rational, default=Fraction(1, 2))
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--d", type=int)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--values", help="comma-separated rationals for partition_cycle")
    p.add_argument("--free", action="store_true", help="partition_cycle: independent deviations, often unbalanced")
    p.add_argument("--base", help="base graph file for reduction families")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run methods over a directory of graphs, emit CSV")
    p.add_argument("--dir", required=True)
    p.add_argument("--methods", required=True, help="comma-separated method names")
    tolerance_flags(p)
    p.add_argument("--k", type=_radius)
    p.add_argument("--d", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compose", help="contract in two phases and verify the composed tolerance")
    p.add_argument("--graph", required=True)
    p.add_argument("--phi", nargs=2, type=_rational, required=True, metavar=("ALPHA", "BETA"))
    p.add_argument("--psi", nargs=2, type=_rational, required=True, metavar=("ALPHA", "BETA"))
    p.add_argument("--method", choices=METHODS, default="brute")
    p.add_argument("--weak", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], tuple[RunReport, int]] = args.func
    try:
        report, code = handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
