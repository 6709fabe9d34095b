"""Batch front door: generate trees, run strategies, compute reports, verify
claim suites.  Same config + seed means byte-identical output.

Exit codes: 0 success, 1 a verification or witness check failed, 2 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import analytics, corpus, generators, oracle, strategies
from .engine import cost_until_level, run
from .generators import DEFAULT_SEED, FAMILIES, GenConfig
from .strategies import blind_schedule, make_strategy
from .tree import (
    KnowledgeKind,
    knowledge_for,
    level_counts,
    tree_from_json,
    tree_to_json,
)

CSV_COLUMNS = ("family", "param", "m", "strategy", "kind", "value_num", "value_den", "exactness")

KIND_NAMES = {
    "complete_dist": KnowledgeKind.COMPLETE_DIST,
    "blind_dist": KnowledgeKind.BLIND_DIST,
    "complete_nodist": KnowledgeKind.COMPLETE_NODIST,
    "blind_nodist": KnowledgeKind.BLIND_NODIST,
}


class UsageError(ValueError):
    pass


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HUNT_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_SEED


def _load_tree(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return tree_from_json(fh.read())


def _emit(args, payload: dict, rows: list[dict]) -> None:
    """Writes the report; CSV rows stream, the JSON mirror embeds the config."""
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump({"config": payload, "rows": rows}, out, indent=2, default=str)
            out.write("\n")
        else:
            writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    finally:
        if args.out:
            out.close()


def _row(family, param, m, strategy, kind, value: Fraction, exactness) -> dict:
    return {
        "family": family, "param": param, "m": m, "strategy": strategy,
        "kind": kind, "value_num": value.numerator, "value_den": value.denominator,
        "exactness": exactness,
    }


def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    cfg.update(extra)
    return cfg


def cmd_generate(args) -> int:
    seed = _resolve_seed(args)
    names, _ = FAMILIES[args.family] if args.family in FAMILIES else (None, None)
    if names is None:
        raise UsageError(
            f"unknown family {args.family!r}; valid: {', '.join(sorted(FAMILIES))}"
        )
    params = []
    for pname in names:
        flag = pname.replace("_", "-")
        value = getattr(args, pname, None)
        if value is None:
            raise UsageError(f"family {args.family} requires --{flag}")
        params.append(value)
    tree = generators.generate(GenConfig(args.family, tuple(params), seed, args.port_mode))
    text = tree_to_json(tree)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_run(args) -> int:
    seed = _resolve_seed(args)
    tree = _load_tree(args.tree)
    kind = KIND_NAMES[args.knowledge]
    know = knowledge_for(kind, tree, args.d if kind.has_distance else None)
    strategy = make_strategy(args.strategy)
    trace = run(strategy, know, tree, fuel=args.fuel, stop_level=args.d)
    cost = cost_until_level(trace, tree, args.d)
    print(json.dumps({"cost": cost, "total_moves": trace.total_moves, "seed": seed}))
    if args.trace:
        for move in trace.moves:
            print(json.dumps({"t": move[0], "from": move[1], "port": move[2], "to": move[3]}))
    return 0


def cmd_overhead(args) -> int:
    seed = _resolve_seed(args)
    tree = _load_tree(args.tree)
    kind = KIND_NAMES[args.knowledge]
    policy = analytics.RelabelPolicy(cap=args.relabel_cap, samples=args.samples, seed=seed)
    report = analytics.overhead(args.strategy, tree, kind, args.m, policy, fuel=args.fuel)
    rows = [_row("file", 0, args.m, args.strategy, args.knowledge, report.value, report.exactness)]
    _emit(args, _config(args, seed=seed, argmax=report.argmax), rows)
    return 0


def cmd_bounds(args) -> int:
    seed = _resolve_seed(args)
    tree = _load_tree(args.tree)
    profile = level_counts(tree)
    rows = [
        _row("file", 0, args.m, "lower_bound_no_distance", "any",
             analytics.lower_bound_no_distance(profile, args.m), "exact"),
    ]
    if args.d is not None:
        rows.append(_row(
            "file", 0, args.d, "lower_bound_known_distance", "any",
            Fraction(analytics.lower_bound_known_distance(profile, args.d)), "exact",
        ))
    _emit(args, _config(args, seed=seed), rows)
    return 0


def cmd_witness(args) -> int:
    seed = _resolve_seed(args)
    policy = analytics.RelabelPolicy(cap=args.relabel_cap, samples=args.samples, seed=seed)
    rows = []
    ok = True
    if args.which == "star":
        w = analytics.penalty_witness_star(args.n, policy)
        rows.append(_row(w.family, w.param, w.m, w.weak_strategy, w.weak_kind.value,
                         w.weak_overhead, "exact" if w.exact else "sampled"))
        rows.append(_row(w.family, w.param, w.m, w.strong_strategy, w.strong_kind.value,
                         w.strong_overhead, "exact"))
        rows.append(_row(w.family, w.param, w.m, "ratio", "witness", w.ratio,
                         "exact" if w.exact else "sampled"))
        ok = w.ratio >= 1
    elif args.which == "caterpillar":
        w = analytics.penalty_witness_caterpillar(args.l, policy)
        rows.append(_row(w.family, w.param, w.m, w.weak_strategy, w.weak_kind.value,
                         w.weak_overhead, "sampled"))
        rows.append(_row(w.family, w.param, w.m, w.strong_strategy, w.strong_kind.value,
                         w.strong_overhead, "sampled"))
        rows.append(_row(w.family, w.param, w.m, "ratio", "witness", w.ratio, "sampled"))
        ok = w.weak_overhead >= Fraction(w.param + 4, 2) and w.strong_overhead <= 7
    else:
        rep = analytics.penalty_witness_doubling(args.k)
        rows.append(_row("full_binary", rep.tree_depth, rep.m, "doubling",
                         "complete_nodist", rep.doubling_overhead, "exact"))
        rows.append(_row("full_binary", rep.tree_depth, rep.m, "incremental",
                         "complete_nodist", rep.incremental_overhead, "exact"))
        rows.append(_row("full_binary", rep.tree_depth, rep.m, "floor", "bound",
                         rep.floor, "exact"))
        ok = rep.floor_holds and rep.separation_holds
    _emit(args, _config(args, seed=seed), rows)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    if args.tree:
        entries = [corpus.CorpusEntry("file", 0, _load_tree(args.tree))]
    else:
        entries = corpus.acceptance_corpus(seed)
    rows = []
    all_ok = True
    for entry in entries:
        tree = entry.tree
        if tree.depth < 1:
            continue
        profile = level_counts(tree)
        schedule = blind_schedule(profile)
        know = knowledge_for(KnowledgeKind.BLIND_NODIST, tree)
        trace = run(make_strategy("algo1"), know, tree, fuel=args.fuel, check=False)
        for d in ([args.d] if args.d else range(1, tree.depth + 1)):
            report = analytics.check_schedule_bound(tree, trace, schedule, d)
            cost = cost_until_level(trace, tree, d)
            slack = Fraction(16 * profile.upto(d) - cost)
            rows.append(_row(entry.family, entry.param, d, "algo1", "blind_nodist",
                             slack, "pass" if report.passed else "FAIL"))
            all_ok = all_ok and report.passed
    _emit(args, _config(args, seed=seed), rows)
    return 0 if all_ok else 1


def cmd_oracle(args) -> int:
    if args.which == "cover":
        tree = _load_tree(args.tree)
        targets = [v for v in range(tree.n) if tree.level[v] == args.level]
        cost, walk = oracle.min_cover_walk(tree, targets)
        print(json.dumps({"cost": cost, "walk": walk}))
    else:
        a = _load_tree(args.a)
        b = _load_tree(args.b)
        print(json.dumps({"isomorphic": oracle.iso_check(a, b)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treehunt")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"global seed (HUNT_SEED env, then {DEFAULT_SEED})")
    parser.add_argument("--fuel", type=int, default=None, help="move budget override")
    parser.add_argument("--relabel-cap", type=int, default=1000,
                        help="max family size for exhaustive relabeling")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a tree in the JSON format")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--branching", type=int)
    p.add_argument("--node-count", dest="node_count", type=int)
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--width", type=int)
    p.add_argument("--port-mode", dest="port_mode", choices=generators.PORT_MODES, default="seeded")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="run one strategy on a tree file")
    p.add_argument("--tree", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--knowledge", choices=sorted(KIND_NAMES), default="blind_nodist")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="print the move list as JSON lines")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("overhead", help="worst cost/d over the knowledge's instances")
    p.add_argument("--tree", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--knowledge", choices=sorted(KIND_NAMES), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=16)
    p.set_defaults(func=cmd_overhead)

    p = sub.add_parser("bounds", help="analytic lower bounds from the level profile")
    p.add_argument("--tree", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="penalty witness experiments")
    p.add_argument("which", choices=("star", "caterpillar", "doubling"))
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--l", type=int, default=10)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--samples", type=int, default=16)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="re-check the scheduler claims on a corpus")
    p.add_argument("what", choices=("schedule",))
    p.add_argument("--corpus", default="default")
    p.add_argument("--tree", default=None)
    p.add_argument("--d", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force certification on small trees")
    p.add_argument("which", choices=("cover", "iso"))
    p.add_argument("--tree", default=None)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
