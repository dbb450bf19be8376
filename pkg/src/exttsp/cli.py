"""Command-line entry point: ``exttsp solve|score|gen|bench``.

Exit codes: 0 success, 1 malformed input, 2 infeasible (size limit, budget,
tree-exact on a non-tree).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .cycle_cover import cycle_cover_solve
from .generators import gen_greedy_tight, gen_random_graph, gen_random_tree
from .greedy import greedy
from .io import (Instance, format_instance, format_layout, parse_layout, read_discount,
                 read_instance)
from .local_search import local_search_solve
from .model import InfeasibleError, InputError, SolveReport, report, score
from .oracle import DEFAULT_PERMUTATION_LIMIT, brute_force_opt
from .tree_exact import DEFAULT_BUDGET, NotATreeError, solve_tree

ALGOS = ("greedy", "cycle-cover", "local-search", "tree-exact", "brute-force")
CSV_COLUMNS = ["instance", "algo", "k", "discount", "value", "opt", "ratio", "millis", "seed", "status"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def fmt_value(v: float) -> str:
    """Fixed 12-significant-digit rendering used for every printed score."""
    return format(float(v), "#.12g")


def _read_ids(path) -> list[int]:
    try:
        return [int(x) for x in Path(path).read_text().split()]
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read vertex list {path}: {exc}") from None


def run_algorithm(algo: str, inst: Instance, f, *, ell=None, delta=0.0, start="auto",
                  prefer=None, limit=DEFAULT_PERMUTATION_LIMIT, budget=DEFAULT_BUDGET) -> SolveReport:
    g = inst.graph
    if algo == "greedy":
        return greedy(g, f, start=start, tie_break=prefer or "lowest_id")
    if algo == "cycle-cover":
        return cycle_cover_solve(g, f)
    if algo == "local-search":
        if ell is None:
            ell = min(2 * f.k, g.n)
        return local_search_solve(g, f, ell, delta)
    if algo == "tree-exact":
        return solve_tree(g, f, budget=budget)
    if algo == "brute-force":
        t0 = time.perf_counter()
        layout, _ = brute_force_opt(g, f, limit=limit)
        return report("brute-force", g, layout, f, millis=(time.perf_counter() - t0) * 1000.0)
    raise InputError(f"unknown algorithm {algo!r}")


def _load(args) -> Instance:
    try:
        return read_instance(args.input)
    except OSError as exc:
        raise InputError(f"cannot read instance: {exc}") from None


def _to_internal(inst: Instance, ids) -> list[int]:
    index = {x: i for i, x in enumerate(inst.labels, start=1)}
    try:
        return [index[x] for x in ids]
    except KeyError as exc:
        raise InputError(f"unknown vertex id {exc.args[0]}") from None


def cmd_solve(args) -> int:
    inst = _load(args)
    f = read_discount(args.discount, args.k)
    prefer = _to_internal(inst, _read_ids(args.prefer)) if args.prefer else None
    start = "auto" if args.start is None else _to_internal(inst, [args.start])[0]
    rep = run_algorithm(args.algo, inst, f, ell=args.ell, delta=args.delta, start=start,
                        prefer=prefer, limit=args.limit, budget=args.budget)
    layout_text = format_layout(rep.layout, inst)
    if args.layout_out:
        Path(args.layout_out).write_text(layout_text)
    if args.format == "json":
        stats = {k: v for k, v in rep.stats.items() if k != "millis"}
        print(json.dumps({
            "algorithm": rep.algorithm,
            "value": rep.value,
            "value_text": fmt_value(rep.value),
            "layout": [int(x) for x in layout_text.split()],
            "stats": stats,
        }, sort_keys=True))
    else:
        print(f"algorithm {rep.algorithm}")
        print(f"value {fmt_value(rep.value)}")
        print(f"layout {layout_text.strip()}")
    return 0


def cmd_score(args) -> int:
    inst = _load(args)
    f = read_discount(args.discount, args.k)
    try:
        text = Path(args.layout).read_text()
    except OSError as exc:
        raise InputError(f"cannot read layout: {exc}") from None
    layout = parse_layout(text, inst)
    print(fmt_value(score(inst.graph, layout, f)))
    return 0


def cmd_gen(args) -> int:
    meta = None
    comments = [f"generator {args.type}"]
    weights = (args.wmin, args.wmax)
    if args.type == "greedy-tight":
        if args.k is None or args.ell is None:
            raise InputError("greedy-tight needs --k and --ell")
        g, meta = gen_greedy_tight(args.k, args.ell)
        comments += [f"k {args.k}", f"ell {args.ell}", f"opt {meta.opt_value}",
                     f"greedy {meta.greedy_value}"]
    elif args.type == "random-tree":
        if args.n is None:
            raise InputError("random-tree needs --n")
        g = gen_random_tree(args.n, args.seed, weights).to_graph()
        comments += [f"seed {args.seed}"]
    else:
        if args.n is None or args.m is None:
            raise InputError("random-graph needs --n and --m")
        g = gen_random_graph(args.n, args.m, args.seed, weights)
        comments += [f"seed {args.seed}"]
    text = format_instance(g, comments)
    if args.output:
        Path(args.output).write_text(text)
        if meta is not None:
            Path(str(args.output) + ".meta.json").write_text(json.dumps(meta.to_json(), indent=2) + "\n")
    else:
        sys.stdout.write(text)
        if meta is not None:
            sys.stderr.write(json.dumps(meta.to_json()) + "\n")
    return 0


def _bench_instance(path: Path, algos, f, discount, args):
    rows = []
    name = path.name
    try:
        inst = read_instance(path)
    except (OSError, InputError) as exc:
        return [dict(instance=name, algo=a, k=f.k, discount=discount, status=f"error: {exc}")
                for a in algos]
    g = inst.graph
    opt = None
    if g.n <= args.limit:
        opt = brute_force_opt(g, f, limit=args.limit)[1]
    for algo in algos:
        row = dict(instance=name, algo=algo, k=f.k, discount=discount, seed=inst.meta("seed") or "")
        t0 = time.perf_counter()
        try:
            rep = run_algorithm(algo, inst, f, ell=args.ell, delta=args.delta,
                                limit=args.limit, budget=args.budget)
        except (InputError, InfeasibleError) as exc:
            row["status"] = f"error: {exc}"
            rows.append(row)
            continue
        millis = (time.perf_counter() - t0) * 1000.0
        row["value"] = fmt_value(rep.value)
        if opt is not None:
            row["opt"] = fmt_value(opt)
            if opt > 0:
                row["ratio"] = fmt_value(rep.value / opt)
        if args.timing:
            row["millis"] = f"{millis:.3f}"
        row["status"] = "ok"
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    f = read_discount(args.discount, args.k)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise InputError(f"unknown algorithm {a!r}")
    root = Path(args.input_dir)
    if not root.is_dir():
        raise InputError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.is_file() and not p.name.endswith(".json"))
    work = lambda p: _bench_instance(p, algos, f, args.discount, args)  # noqa: E731
    if args.parallel > 1:
        with ThreadPoolExecutor(max_workers=args.parallel) as pool:
            batches = list(pool.map(work, files))
    else:
        batches = [work(p) for p in files]
    rows = sorted((r for b in batches for r in b), key=lambda r: (r["instance"], r["algo"]))
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 1 if any(r["status"] != "ok" for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exttsp", description="Ext-TSP vertex sequencing solvers")
    p.add_argument("--version", action="version", version=f"exttsp {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def discount_flags(sp):
        sp.add_argument("--k", type=int, help="window size (inferred for table discounts)")
        sp.add_argument("--discount", default="step", help="step | linear | table:<file>")

    s = sub.add_parser("solve", help="run one solver on an instance")
    s.add_argument("--algo", required=True, choices=ALGOS)
    s.add_argument("--input", required=True)
    discount_flags(s)
    s.add_argument("--layout-out")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--start", type=int, help="greedy start vertex")
    s.add_argument("--prefer", help="greedy tie-break preference list file")
    s.add_argument("--ell", type=int, help="local-search block size (default min(2k, n))")
    s.add_argument("--delta", type=float, default=0.0, help="local-search relative gain threshold")
    s.add_argument("--limit", type=int, default=DEFAULT_PERMUTATION_LIMIT, help="brute-force size limit")
    s.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="tree-exact work budget")
    s.set_defaults(func=cmd_solve)

    sc = sub.add_parser("score", help="score a layout file")
    sc.add_argument("--input", required=True)
    sc.add_argument("--layout", required=True)
    discount_flags(sc)
    sc.set_defaults(func=cmd_score)

    gn = sub.add_parser("gen", help="generate an instance")
    gn.add_argument("--type", required=True, choices=("greedy-tight", "random-tree", "random-graph"))
    gn.add_argument("--k", type=int)
    gn.add_argument("--ell", type=int)
    gn.add_argument("--n", type=int)
    gn.add_argument("--m", type=int)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--wmin", type=int, default=1)
    gn.add_argument("--wmax", type=int, default=10)
    gn.add_argument("--output")
    gn.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="run solvers over a directory of instances, write CSV")
    b.add_argument("--input-dir", required=True)
    b.add_argument("--algos", default="greedy,cycle-cover")
    discount_flags(b)
    b.add_argument("--csv")
    b.add_argument("--parallel", type=int, default=1)
    b.add_argument("--limit", type=int, default=DEFAULT_PERMUTATION_LIMIT)
    b.add_argument("--ell", type=int)
    b.add_argument("--delta", type=float, default=0.0)
    b.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    b.add_argument("--timing", action="store_true", help="fill the millis column (breaks byte-identity)")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotATreeError as exc:
        print(f"exttsp: infeasible: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"exttsp: infeasible: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"exttsp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
