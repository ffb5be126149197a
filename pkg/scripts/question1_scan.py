#!/usr/bin/env python3
"""Scan the full tree corpus for values above the conjectured upper bound.

For every tree with at least one branch vertex the exact value is compared
against n - b + alpha(T[R]).  Any excess would refute the conjectured bound;
ties show where it is sharp.  Records go to stdout as JSON lines, progress
and the per-order digest to stderr.

Example:
    python3 scripts/question1_scan.py --max-n 11 --jobs 4 > scan.jsonl
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from bnbroadcast import (
    BudgetExceeded,
    SolveLimits,
    bn_number,
    conjectured_upper_bound,
    emit_graph6,
    enumerate_trees,
    parse_graph6,
)


def scan_one(payload):
    g6, max_nodes, time_ms = payload
    tree = parse_graph6(g6)
    if not tree.profile.branch:
        return {"id": g6, "n": tree.n, "status": "not_applicable"}
    limits = None
    if max_nodes or time_ms:
        limits = SolveLimits(max_nodes=max_nodes, time_ms=time_ms)
    try:
        res = bn_number(tree, limits)
    except BudgetExceeded as exc:
        return {
            "id": g6,
            "n": tree.n,
            "status": "budget_exceeded",
            "best_found": exc.best_value,
            "nodes": exc.nodes,
        }
    bound = conjectured_upper_bound(tree)
    return {
        "id": g6,
        "n": tree.n,
        "status": "solved",
        "exact": res.value,
        "conjectured": bound,
        "margin": bound - res.value,
        "nodes": res.nodes,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, required=True)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--nodes", type=int, default=None,
                    help="per-tree search node budget")
    ap.add_argument("--ms", type=float, default=None,
                    help="per-tree time budget in milliseconds")
    args = ap.parse_args()

    pool = ProcessPoolExecutor(args.jobs) if args.jobs > 1 else None
    mapper = pool.map if pool else map
    grand = {"trees": 0, "solved": 0, "tight": 0, "violations": 0,
             "budget_exceeded": 0, "not_applicable": 0}
    t0 = time.perf_counter()
    for n in range(args.min_n, args.max_n + 1):
        payloads = [(emit_graph6(t), args.nodes, args.ms)
                    for t in enumerate_trees(n)]
        margins = []
        for rec in mapper(scan_one, payloads):
            grand["trees"] += 1
            if rec["status"] != "solved":
                grand[rec["status"]] += 1
                print(json.dumps(rec, sort_keys=True))
                continue
            grand["solved"] += 1
            if rec["margin"] < 0:
                grand["violations"] += 1
                print(json.dumps(rec, sort_keys=True))
                print(f"FINDING: {rec['id']} (n={n}) exceeds the conjectured "
                      f"bound by {-rec['margin']}", file=sys.stderr)
            margins.append(rec["margin"])
            if rec["margin"] == 0:
                grand["tight"] += 1
        if margins:
            print(
                f"order {n}: {len(payloads)} trees, margin "
                f"min={min(margins)} max={max(margins)}, "
                f"tight={sum(1 for m in margins if m == 0)}",
                file=sys.stderr,
            )
        else:
            print(f"order {n}: {len(payloads)} trees, none applicable",
                  file=sys.stderr)
    if pool:
        pool.shutdown()
    grand["elapsed_s"] = round(time.perf_counter() - t0, 2)
    print(json.dumps({"type": "summary", **grand}, sort_keys=True))
    print(f"done: {grand}", file=sys.stderr)
    return 1 if grand["violations"] else 0


if __name__ == "__main__":
    sys.exit(main())
