"""Command line front door.

Results go to stdout, diagnostics to stderr.  Exit code 0 means success
or a verified/true answer, 1 means a failed verification or a false
answer (non-isomorphic, incomplete search, no witness), 2 means a usage
or parse error.  No environment variables are consulted.
"""

import argparse
import json
import os
import sys

from . import catalog as catalog_mod
from .canon import canonical_form, are_isomorphic
from .cayley import search_cayley_a4
from .core import SearchParams, moore_bound, verify
from .catalog import DigraphFormatError, read_digraph, write_digraph
from .lemmas import classify_pair, common_out_pairs, triangle_census
from .search import SPLIT_SLOTS, run_task, search, split_tasks

LONG_RUN_ORDER = 17


class _UsageError(Exception):
    pass


def _load_digraph(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return read_digraph(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    except DigraphFormatError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _params_from(args) -> SearchParams:
    try:
        return SearchParams(
            d=args.d,
            k=args.k,
            epsilon=args.excess,
            diregular=args.diregular,
            max_results=getattr(args, "limit", None),
            max_nodes=getattr(args, "budget", None),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_moore(args, out, err) -> int:
    try:
        value = moore_bound(args.d, args.k)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(value, file=out)
    return 0


def _cmd_verify(args, out, err) -> int:
    g = _load_digraph(args.path)
    report = verify(g, _params_from(args))
    print(f"order {report.order} expected {report.expected_order} "
          f"{'PASS' if report.order_ok else 'FAIL'}", file=out)
    print(f"outdegree {'PASS' if report.outdegree_ok else 'FAIL'}", file=out)
    if report.params.diregular:
        print(f"diregular {'PASS' if report.diregular_ok else 'FAIL'}", file=out)
    else:
        print("diregular not-requested", file=out)
    if report.geodetic_ok:
        print("geodetic PASS", file=out)
    else:
        w = report.geodetic_witness
        print(f"geodetic FAIL pair {w.source} {w.target} "
              f"walks {','.join(map(str, w.walk_a))} and {','.join(map(str, w.walk_b))}",
              file=out)
    print("outlier-of " + " ".join(str(c) for c in report.outlier_counts), file=out)
    print(f"verdict {'PASS' if report.ok else 'FAIL'}", file=out)
    return 0 if report.ok else 1


def _cmd_catalog(args, out, err) -> int:
    entry = catalog_mod.catalog_a() if args.id == "A" else catalog_mod.catalog_b()
    out.write(write_digraph(entry.digraph))
    return 0


def _cmd_canon(args, out, err) -> int:
    g = _load_digraph(args.path)
    if g.n < 1:
        raise _UsageError("canonical form requires at least one vertex")
    print(canonical_form(g).hex(), file=out)
    return 0


def _cmd_iso(args, out, err) -> int:
    g = _load_digraph(args.path_a)
    h = _load_digraph(args.path_b)
    if are_isomorphic(g, h):
        print("isomorphic", file=out)
        return 0
    print("non-isomorphic", file=out)
    return 1


def _cmd_census(args, out, err) -> int:
    g = _load_digraph(args.path)
    census = triangle_census(g)
    classify_ok = True
    try:
        params = SearchParams(d=args.d, k=args.k, epsilon=args.excess, diregular=True)
        classify_ok = verify(g, params).ok and args.d == 2 and args.k == 2 and args.excess == 2
    except ValueError:
        classify_ok = False
    for tri in census.triangles:
        print("triangle " + " ".join(map(str, tri)), file=out)
    print("per-vertex " + " ".join(map(str, census.per_vertex)), file=out)
    pair_rows = []
    for c in (1, 2):
        for pc in common_out_pairs(g, c):
            label = "-"
            if c == 1 and classify_ok:
                label = "bad" if classify_pair(g, pc.u, pc.v, 2).bad else "good"
            pair_rows.append((pc.u, pc.v, c, label))
            print(f"pair {pc.u} {pc.v} common {c} {label}", file=out)
    if args.emit:
        dump = {
            "triangles": [list(t) for t in census.triangles],
            "per_vertex": list(census.per_vertex),
            "pairs": [{"u": u, "v": v, "common": c, "class": label}
                      for u, v, c, label in pair_rows],
        }
        with open(args.emit, "w", encoding="utf-8") as fh:
            json.dump(dump, fh, indent=2)
            fh.write("\n")
    return 0


def _checkpoint_key(params: SearchParams, split_slots: int) -> dict:
    return {
        "d": params.d,
        "k": params.k,
        "excess": params.epsilon,
        "diregular": params.diregular,
        "split_slots": split_slots,
    }


def _write_checkpoint(path: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    os.replace(tmp, path)


def _search_with_checkpoint(params: SearchParams, args, err):
    """Task-by-task search that records finished subtrees in a JSON file.

    Only fully explored tasks are persisted, so a budget-limited or
    interrupted run can be resumed later; a task cut short by the budget is
    re-run from scratch on resume.  Once every task is recorded, the merged
    totals match what a direct search() run would report.  The node budget,
    when given, caps new exploration per invocation (the small split phase
    always runs in full so the task list is identical across invocations).
    """
    from .canon import CanonicalForm
    from .search import SearchOutcome, SearchResult

    key = _checkpoint_key(params, SPLIT_SLOTS)
    done: dict[str, dict] = {}
    if os.path.exists(args.checkpoint):
        with open(args.checkpoint, "r", encoding="utf-8") as fh:
            saved = json.load(fh)
        if saved.get("key") != key:
            raise _UsageError("checkpoint does not match these search parameters")
        done = saved.get("done", {})
        print(f"resuming: {len(done)} tasks already finished", file=err)
    tasks, stats = split_tasks(params, "full", SPLIT_SLOTS, None)
    merged = {data.hex(): write_digraph(g) for data, g in stats["results"].items()}
    nodes = stats["nodes"]
    spent = nodes
    total = len(tasks)
    for idx in range(total):
        record = done.get(str(idx))
        if record is not None:
            nodes += record["nodes"]
            for hex_form, text in record["results"].items():
                merged.setdefault(hex_form, text)
    pending = [idx for idx in range(total) if str(idx) not in done]
    stopped = False
    for idx in pending:
        quota = None
        if params.max_nodes is not None:
            quota = max(0, params.max_nodes - spent)
            if quota == 0:
                stopped = True
                print(f"progress tasks={len(done)}/{total} budget exhausted", file=err)
                break
        results, task_nodes, task_stopped = run_task(params, tasks[idx], "full", quota)
        spent += task_nodes
        if task_stopped:
            stopped = True
            print(f"progress tasks={len(done)}/{total} budget exhausted", file=err)
            break
        done[str(idx)] = {
            "nodes": task_nodes,
            "results": {data.hex(): write_digraph(g) for data, g in results.items()},
        }
        _write_checkpoint(args.checkpoint, {"key": key, "done": done})
        nodes += task_nodes
        for hex_form, text in done[str(idx)]["results"].items():
            merged.setdefault(hex_form, text)
        print(f"progress tasks={len(done)}/{total} nodes={nodes}", file=err)
    # write even when no task ran, so replays and mismatch detection work
    _write_checkpoint(args.checkpoint, {"key": key, "done": done})
    complete = not stopped and len(done) == total
    ordered = sorted(merged.items())
    if params.max_results is not None and len(ordered) > params.max_results:
        ordered = ordered[: params.max_results]
        complete = False
    results = tuple(
        SearchResult(form=CanonicalForm(bytes.fromhex(h)), digraph=read_digraph(text))
        for h, text in ordered
    )
    return SearchOutcome(results=results, nodes_explored=nodes, complete=complete)


def _cmd_search(args, out, err) -> int:
    params = _params_from(args)
    if params.order >= LONG_RUN_ORDER and not args.long_run:
        raise _UsageError(
            f"order {params.order} search may run for hours; pass --long-run to confirm"
        )
    if args.checkpoint:
        outcome = _search_with_checkpoint(params, args, err)
    else:
        outcome = search(params, jobs=args.jobs)
    blocks = [write_digraph(r.digraph) for r in outcome.results]
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write("\n".join(blocks))
    for block in blocks:
        out.write(block)
        out.write("\n")
    print(f"results={len(outcome.results)} nodes={outcome.nodes_explored} "
          f"complete={'true' if outcome.complete else 'false'}", file=out)
    return 0 if outcome.complete else 1


def _cmd_cayley_a4(args, out, err) -> int:
    try:
        witnesses = search_cayley_a4(args.k, args.excess)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    for w in witnesses:
        s, t = w.generators
        print("witness " + "".join(map(str, s)) + " " + "".join(map(str, t)), file=out)
    print(f"witnesses={len(witnesses)}", file=out)
    return 0 if witnesses else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geodex",
        description="verify and exhaustively search k-geodetic digraphs near the Moore bound",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moore", help="print the Moore bound for out-degree d and depth k")
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_moore)

    p = sub.add_parser("verify", help="check a digraph file against (d, k, excess)")
    p.add_argument("path")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--excess", type=int, required=True)
    p.add_argument("--diregular", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalog", help="print a catalog digraph in file format")
    p.add_argument("id", choices=["A", "B"])
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("canon", help="print the canonical form of a digraph file as hex")
    p.add_argument("path")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("iso", help="decide whether two digraph files are isomorphic")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("census", help="triangle census and pair classification")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--excess", type=int, default=2)
    p.add_argument("--emit", help="also write a JSON dump to this path")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("search", help="exhaustive isomorph-free search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--excess", type=int, required=True)
    p.add_argument("--diregular", action="store_true")
    p.add_argument("--limit", type=int, help="stop after this many results")
    p.add_argument("--budget", type=int, help="node budget; exceeding it marks the run incomplete")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--long-run", action="store_true",
                   help=f"required for searches of order {LONG_RUN_ORDER} and above")
    p.add_argument("--checkpoint", help="JSON file recording finished subtrees, for resumable runs")
    p.add_argument("--emit", help="also write the result digraphs to this path")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("cayley-a4", help="generating pairs of A4 whose Cayley digraph is k-geodetic")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--excess", type=int, default=5)
    p.set_defaults(func=_cmd_cayley_a4)

    return parser


def run(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out, err)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
