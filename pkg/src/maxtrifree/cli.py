"""Command-line surface: construct, enumerate, mis, reduce, verify, report.

Common flags take defaults from MAXTRIFREE_-prefixed environment variables
(MAXTRIFREE_SEED, MAXTRIFREE_SHARDS, MAXTRIFREE_GUARD_<KEY>).  verify and
reduce exit nonzero when any check fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions, enumeration, reduction, suites
from .graph import Graph, GuardError, iter_bits
from .graph6 import Graph6Error, decode_graph6, encode_graph6, iter_graph6_file
from .mis import enumerate_mis, mis_count
from .reduction import InstanceError
from .report import (
    DEFAULT_GUARDS,
    STREAM_FOLKLORE_SAMPLES,
    STREAM_KR_SAMPLES,
    RunConfig,
    VerificationReport,
    dumps_reports,
    loads_reports,
    rng_for,
)

ENV_PREFIX = "MAXTRIFREE_"


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    return int(raw) if raw else fallback


def _env_guards() -> dict[str, int]:
    guards = {}
    for key in DEFAULT_GUARDS:
        raw = os.environ.get(ENV_PREFIX + "GUARD_" + key.upper())
        if raw:
            guards[key] = int(raw)
    return guards


def _parse_guard(text: str) -> tuple[str, int]:
    key, _, value = text.partition("=")
    if not value:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL, got {text!r}")
    return key, int(value)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=_env_int("SEED", 1),
                        help="64-bit seed for every random draw")
    parser.add_argument("--shards", type=int, default=_env_int("SHARDS", 1),
                        help="number of deterministic work partitions")
    parser.add_argument("--guard", type=_parse_guard, action="append", default=[],
                        metavar="KEY=VAL", help=f"override a size cap {sorted(DEFAULT_GUARDS)}")
    parser.add_argument("--json", dest="json_path", metavar="PATH",
                        help="write the JSON report array here")


def _config(args) -> RunConfig:
    guards = _env_guards()
    guards.update(dict(args.guard))
    return RunConfig(seed=args.seed, shards=args.shards, guards=guards,
                     output_path=args.json_path)


def _emit_reports(reports: list[VerificationReport], json_path: str | None) -> int:
    for rep in reports:
        print(rep.summary_line())
    if json_path:
        with open(json_path, "w", encoding="ascii") as fh:
            fh.write(dumps_reports(reports))
            fh.write("\n")
    return 0 if all(r.passed for r in reports) else 1


def _load_single_graph(args) -> Graph:
    if args.g6:
        return decode_graph6(args.g6)
    if args.infile:
        for g in iter_graph6_file(args.infile):
            return g
        raise SystemExit(f"no graphs in {args.infile}")
    raise SystemExit("provide --g6 or --in")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_construct(args) -> int:
    config = _config(args)
    if args.family == "folklore":
        if args.stats:
            rep = constructions.folklore_family_stats(
                args.n, shards=config.shards, guard=config.guard("folklore_n"))
            return _emit_reports([rep], config.output_path)
        if args.choice is not None:
            graphs = [constructions.folklore_graph(
                constructions.FolkloreChoice.from_hex(args.n, args.choice))]
        else:
            graphs = [
                constructions.folklore_graph(constructions.FolkloreChoice.random(
                    args.n, rng_for(config.seed, STREAM_FOLKLORE_SAMPLES + i)))
                for i in range(args.samples)
            ]
    else:
        if args.r is None:
            raise SystemExit("--r is required for the kr family")
        if args.stats:
            raise SystemExit("--stats is only available for the folklore family")
        if args.choice is not None:
            graphs = [constructions.kr_free_graph(
                constructions.KrChoice.from_hex(args.n, args.r, args.choice))]
        else:
            graphs = [
                constructions.kr_free_graph(constructions.KrChoice.random(
                    args.n, args.r, rng_for(config.seed, STREAM_KR_SAMPLES + i)))
                for i in range(args.samples)
            ]
    lines = [encode_graph6(g) for g in graphs]
    if args.stream:
        with open(args.stream, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    return 0


def _cmd_enumerate(args) -> int:
    config = _config(args)
    guard = config.guard("enumeration_n")
    if args.n > enumeration.DEFAULT_ENUMERATION_GUARD:
        print(f"warning: n={args.n} beyond the default guard "
              f"{enumeration.DEFAULT_ENUMERATION_GUARD}; this may take very long",
              file=sys.stderr)
    rows = []
    for n in range(1, args.n + 1):
        stream = args.stream if n == args.n else None
        rows.append(enumeration.enumerate_maximal_tf(
            n, shards=config.shards, stream_path=stream, guard=guard))
    table = enumeration.CountTable(tuple(rows))
    print(table.to_text())
    if config.output_path:
        with open(config.output_path, "w", encoding="ascii") as fh:
            json.dump(table.to_dicts(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_mis(args) -> int:
    g = _load_single_graph(args)
    if args.count_only:
        print(mis_count(g))
        return 0
    family = enumerate_mis(g)
    for word in family.sets:
        print(f"{word:#x}", " ".join(str(v) for v in iter_bits(word)))
    print(f"total {len(family)}")
    if args.json_path:
        payload = {"graph": encode_graph6(g), "mis_count": len(family),
                   "sets": [list(iter_bits(w)) for w in family.sets]}
        with open(args.json_path, "w", encoding="ascii") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_reduce(args) -> int:
    config = _config(args)
    checks = args.check.split(",")
    unknown = set(checks) - {"claim1", "claim2", "chain"}
    if unknown:
        raise SystemExit(f"unknown checks: {sorted(unknown)}")
    instances: list[reduction.ReductionInstance] = []
    if args.instance:
        instances.append(reduction.ReductionInstance.load(args.instance))
    if args.random:
        for i in range(args.random):
            instances.append(reduction.random_instance(
                rng_for(config.seed, i), n_min=4, n_max=args.n or 8))
    if not instances:
        raise SystemExit("provide --instance and/or --random")
    reports = []
    for idx, inst in enumerate(instances):
        suffix = f"_{idx}" if len(instances) > 1 else ""
        if "claim1" in checks:
            rep = reduction.verify_claim1(reduction.build_auxiliary(inst))
            rep.check_name += suffix
            reports.append(rep)
        if "claim2" in checks:
            rep = reduction.verify_claim2(inst)
            rep.check_name += suffix
            reports.append(rep)
        if "chain" in checks:
            rep = reduction.bound_chain(inst.container, inst.removal)
            rep.check_name += suffix
            reports.append(rep)
    return _emit_reports(reports, config.output_path)


def _cmd_verify(args) -> int:
    config = _config(args)
    reports = suites.run_suite(config, args.suite)
    return _emit_reports(reports, config.output_path)


def _cmd_report(args) -> int:
    with open(args.json_path, "r", encoding="ascii") as fh:
        reports = loads_reports(fh.read())
    for rep in reports:
        print(rep.summary_line())
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxtrifree",
        description="enumeration, constructions, and proof checks for maximal "
                    "triangle-free graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build family members or family stats")
    p.add_argument("--family", choices=("folklore", "kr"), default="folklore")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--choice", metavar="HEX", help="explicit choice vector")
    p.add_argument("--samples", type=int, default=1, help="random members to emit")
    p.add_argument("--stats", action="store_true", help="enumerate the whole family")
    p.add_argument("--stream", metavar="PATH", help="write graph6 lines here")
    _add_common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("enumerate", help="count maximal triangle-free graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stream", metavar="PATH", help="stream the n-vertex family as graph6")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("mis", help="enumerate maximal independent sets of one graph")
    p.add_argument("--g6", help="graph6 string")
    p.add_argument("--in", dest="infile", metavar="PATH", help="graph6 file (first line)")
    p.add_argument("--count-only", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_mis)

    p = sub.add_parser("reduce", help="run proof checks on reduction instances")
    p.add_argument("--instance", metavar="PATH", help="instance JSON file")
    p.add_argument("--check", default="claim1,claim2,chain",
                   help="comma list from claim1,claim2,chain")
    p.add_argument("--random", type=int, default=0, metavar="K",
                   help="also run K seeded random instances")
    p.add_argument("--n", type=int, help="max vertices for random instances")
    _add_common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=suites.SUITES, default="all")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="summarize a JSON report array")
    p.add_argument("--json", dest="json_path", required=True, metavar="PATH")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GuardError, Graph6Error, InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
