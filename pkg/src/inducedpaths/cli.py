"""Command-line front end: gen, extract, oracle, bench, verify."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import acceptance
from .errors import CertificateError, ParseError, PreconditionError
from .extractors import ALGORITHMS, run
from .extremal import FAMILIES, generate
from .graph import PathWitness, format_graph, parse_graph, parse_path_witness
from .interval import format_intervals, parse_intervals, staircase
from .oracle import SearchBudget, longest_induced_path_exact
from .randgraphs import doubling_chain, thinned_doubling

BENCH_COLUMNS = ("family", "params", "n", "m", "algorithm", "extracted_size", "bound_value",
                 "oracle_size", "oracle_optimal", "millis")
EXTRA_FAMILIES = ("thinned", "staircase", "doubling-chain")


class UsageError(Exception):
    pass


def build_instance(family: str, params: dict, seed: int = 0):
    """(graph, path or None, interval rep or None, metadata dict) for any generator family."""
    if family in FAMILIES:
        fi = generate(family, **params)
        return fi.graph, fi.ham_path, None, fi.to_meta()
    if family == "thinned":
        g, p = thinned_doubling(int(params.get("i", 2)), int(params.get("seed", seed)), float(params.get("keep", 0.5)))
    elif family == "staircase":
        rep = staircase(int(params.get("n", 10)), int(params.get("width", 3)), int(params.get("reach", 7)))
        g = rep.graph()
        meta = {"family": family, "params": params, "n": g.n, "m": g.m}
        return g, PathWitness(tuple(range(g.n)), False), rep, meta
    elif family == "doubling-chain":
        chain = doubling_chain(int(params.get("i", 1)), int(params.get("count", 2)))
        g, p = chain.graph, chain.path
    else:
        raise UsageError(f"unknown family {family!r}; choose from {sorted(FAMILIES) + list(EXTRA_FAMILIES)}")
    return g, p, None, {"family": family, "params": params, "n": g.n, "m": g.m}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_params(args) -> dict:
    params = {"i": args.i, "k": args.k, "t": args.t}
    if args.family == "tower":
        params = {"t": args.t, "k": args.k, "seed_i": args.i}
    if args.family == "thinned":
        params["seed"] = args.seed
    if args.family == "staircase":
        params = {"n": args.i, "width": args.k, "reach": args.t}
    if args.family == "doubling-chain":
        params = {"i": args.i, "count": args.k}
    return {key: v for key, v in params.items() if v is not None}


def cmd_gen(args) -> int:
    if not args.family:
        raise UsageError("gen needs --family")
    g, p, rep, meta = build_instance(args.family, _family_params(args), args.seed)
    files = {"graph": format_graph(g), "meta.jsonl": json.dumps(meta, sort_keys=True) + "\n"}
    if p is not None:
        files["path"] = p.to_line() + "\n"
    if rep is not None:
        files["intervals"] = format_intervals(rep)
    if args.out:
        for suffix, text in files.items():
            _emit(text, f"{args.out}.{suffix}")
    else:
        sys.stdout.write("".join(files[s] for s in ("graph", "path", "intervals", "meta.jsonl") if s in files))
    return 0


def _load_inputs(args):
    g = rep = None
    if args.intervals:
        g, rep, _ = parse_intervals(_read(args.intervals))
    if args.input:
        h = parse_graph(_read(args.input))
        if g is not None and h != g:
            raise UsageError("graph file and interval representation disagree")
        g = h
    if g is None:
        raise UsageError("need --input or --intervals")
    p = parse_path_witness(_read(args.path_file)) if args.path_file else None
    return g, p, rep


def cmd_extract(args) -> int:
    g, p, rep = _load_inputs(args)
    try:
        ex = run(args.algo, g, p, rep)
    except PreconditionError as exc:
        print(f"error: precondition failed for {args.algo}: {exc}", file=sys.stderr)
        return 1
    except CertificateError as exc:
        print(f"error: certificate check failed: {exc}", file=sys.stderr)
        return 1
    ok = ex.bound_ok()
    text = ex.witness.to_line() + "\n"
    text += f"algorithm {ex.algorithm} n {ex.n} size {ex.witness.size} bound {_fmt(ex.bound)} {'ok' if ok else 'below'}"
    text += (f" {ex.note}" if ex.note else "") + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget_nodes, max_millis=args.budget_ms)


def cmd_oracle(args) -> int:
    if not args.input:
        raise UsageError("oracle needs --input")
    g = parse_graph(_read(args.input))
    res = longest_induced_path_exact(g, _budget(args))
    _emit(res.to_line(timing=not args.no_timing) + "\n" + res.witness.to_line() + "\n", args.out)
    return 0


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "-inf" if x == -math.inf else f"{x:.6f}"
    return str(x)


def _expand(entry: dict):
    params = entry.get("params", {})
    keys = list(params)
    values = [v if isinstance(v, list) else [v] for v in params.values()]
    for combo in itertools.product(*values):
        yield dict(zip(keys, combo))


def bench_tasks(suite) -> list[tuple]:
    entries = suite.get("entries", []) if isinstance(suite, dict) else suite
    tasks = []
    for entry in entries:
        if "family" not in entry:
            raise UsageError("suite entry without a family")
        algos = entry.get("algorithms", ["auto"])
        for a in algos:
            if a != "auto" and a not in ALGORITHMS:
                raise UsageError(f"unknown algorithm {a!r} in suite")
        oracle = entry.get("oracle", False)
        for params in _expand(entry):
            tasks.append((entry["family"], params, tuple(algos), oracle))
    return tasks


def bench_task(task, seed=0, budget=None, timing=True) -> list[dict]:
    family, params, algos, oracle = task
    g, p, rep, _ = build_instance(family, params, seed)
    limit = oracle if isinstance(oracle, int) and not isinstance(oracle, bool) else (14 if oracle else -1)
    best = longest_induced_path_exact(g, budget) if g.n <= limit else None
    rows = []
    for algo in algos:
        start = time.perf_counter()
        try:
            ex = run(algo, g, p, rep)
            size, bound, name = ex.witness.size, ex.bound, ex.algorithm
        except PreconditionError:
            size, bound, name = None, None, algo
        millis = round((time.perf_counter() - start) * 1000) if timing else 0
        rows.append({
            "family": family,
            "params": ";".join(f"{k}={v}" for k, v in params.items()),
            "n": g.n,
            "m": g.m,
            "algorithm": name,
            "extracted_size": size,
            "bound_value": bound,
            "oracle_size": best.size if best else None,
            "oracle_optimal": (1 if best.optimal else 0) if best else None,
            "millis": millis,
        })
    return rows


def _bench_worker(job):
    task, seed, budget, timing = job
    return bench_task(task, seed, budget, timing)


def row_ok(row: dict) -> bool:
    size = row["extracted_size"]
    if size is None:
        return True
    if row["bound_value"] is not None and size < row["bound_value"]:
        return False
    return not (row["oracle_optimal"] == 1 and size > row["oracle_size"])


def cmd_bench(args) -> int:
    if not args.input:
        raise UsageError("bench needs --input SUITE.json")
    try:
        suite = json.loads(_read(args.input))
    except json.JSONDecodeError as exc:
        raise UsageError(f"suite is not valid JSON: {exc}") from exc
    tasks = bench_tasks(suite)
    jobs = [(t, args.seed, _budget(args), not args.no_timing) for t in tasks]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_bench_worker, jobs))
    else:
        chunks = [_bench_worker(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in BENCH_COLUMNS])
    _emit(buf.getvalue(), args.out)
    return 0 if all(row_ok(r) for r in rows) else 1


def cmd_verify(args) -> int:
    fixture = None
    if args.input:
        try:
            fixture = json.loads(_read(args.input))
        except json.JSONDecodeError as exc:
            raise UsageError(f"fixture is not valid JSON: {exc}") from exc
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError as exc:
            raise UsageError(f"--only takes criterion numbers, got {args.only!r}") from exc
    results = acceptance.run_all(fixture, only, echo=lambda line: print(line, flush=True))
    failed = [r.criterion.number for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed" + (f"; failed {failed}" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="inducedpaths", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file (suite JSON for bench, fixture JSON for verify)")
    common.add_argument("--out", help="output file or prefix; stdout when omitted")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=10**7)
    common.add_argument("--budget-ms", type=int, default=60_000)
    common.add_argument("--no-timing", action="store_true", help="zero out timings for byte-stable output")

    g = sub.add_parser("gen", parents=[common], help="write a family instance",
                       epilog="tower reads --i as the seed level; staircase reads --i/--k/--t as n/width/reach; "
                              "doubling-chain reads --k as the block count")
    g.add_argument("--family", choices=sorted(FAMILIES) + list(EXTRA_FAMILIES))
    g.add_argument("--i", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--t", type=int)

    e = sub.add_parser("extract", parents=[common], help="run one extractor")
    e.add_argument("--algo", default="auto", choices=("auto",) + ALGORITHMS)
    e.add_argument("--path-file")
    e.add_argument("--intervals")

    sub.add_parser("oracle", parents=[common], help="exact longest induced path")

    b = sub.add_parser("bench", parents=[common], help="run a benchmark suite to CSV")
    b.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    v.add_argument("--only", help="comma-separated criterion numbers")
    return ap


COMMANDS = {"gen": cmd_gen, "extract": cmd_extract, "oracle": cmd_oracle, "bench": cmd_bench, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
