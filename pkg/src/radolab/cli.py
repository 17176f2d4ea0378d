"""Command-line surface: every subcommand prints one JSON report.

Report shape:

    {
      "command":    ["rado", "embed", ...],      echo of the arguments
      "parameters": {...},                        resolved numbers and seeds
      "verdicts":   [{"name": ..., "status": "holds|fails|unknown",
                      "witness": ..., "window": ...}, ...],
      "witnesses":  {name: witness or null},      one entry per verdict
      "analysis":   {...},                        command-specific facts
      "wall_time_s": 0.123
    }

Identical command lines produce byte-identical "verdicts" and
"witnesses" sections; wall_time_s is the only varying field.  Exit
codes: 0 all verdicts hold or are window-bounded evidence, 1 some
verdict fails, 2 usage error, 3 resource or bounded-search error.

Default window and bound sizes can be overridden with the environment
variables RADOLAB_WINDOW and RADOLAB_BOUND.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from .actions import (
    mekler_filter_check,
    mekler_topology_check,
    parse_action,
    parse_moiety,
)
from .errors import BoundedSearchError, ResourceLimitError, UsageError
from .filters import base_is_nontrivial
from .fraisse import StagedPoset  # noqa: F401  (re-exported for scripting)
from .graphs import BIT_RADO, BitRado, closed_form_witness, extension_witness, parse_oracle
from .perm import (
    PermGroup,
    invariant_topologies,
    is_primitive,
    is_strongly_primitive,
    is_transitive,
    separation_witness,
)
from .rado import (
    filter_chain,
    neighbourhood_filter,
    run_spanning_embedding,
    verify_embedding,
)
from .sets import TriState, fails, holds
from .topology import (
    PREORDER_COUNTS,
    enumerate_preorders,
    is_relational,
    preorder_to_topology,
    separation_class,
    topology_to_preorder,
)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _env_default(name: str, fallback: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return fallback
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


class Report:
    def __init__(self, command: list[str], parameters: dict):
        self.command = command
        self.parameters = parameters
        self.verdicts: list[dict] = []
        self.analysis: dict = {}
        self.error: Optional[dict] = None
        self._start = time.perf_counter()

    def add(self, name: str, verdict: TriState):
        self.verdicts.append({"name": name, **verdict.to_json()})

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "witnesses": {v["name"]: v.get("witness") for v in self.verdicts},
            "analysis": self.analysis,
            "wall_time_s": round(time.perf_counter() - self._start, 6),
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_RESOURCE
        if any(v["status"] == "fails" for v in self.verdicts):
            return EXIT_FAILS
        return EXIT_OK


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_topo_roundtrip(args, command) -> Report:
    if args.n > 4:
        raise UsageError("round-trip enumeration is guarded at n <= 4")
    report = Report(command, {"n": args.n})
    count = 0
    roundtrip_ok = True
    relational_ok = True
    bad = None
    for p in enumerate_preorders(args.n):
        count += 1
        t = preorder_to_topology(p)
        if topology_to_preorder(t) != p:
            roundtrip_ok = False
            bad = p.to_json()
        if not is_relational(t):
            relational_ok = False
            bad = p.to_json()
    expected = PREORDER_COUNTS[args.n]
    report.analysis["count"] = count
    report.analysis["expected"] = expected
    report.add("count_matches",
               holds() if count == expected else fails({"count": count, "expected": expected}))
    report.add("roundtrip_identity", holds() if roundtrip_ok else fails(bad))
    report.add("all_relational", holds() if relational_ok else fails(bad))
    return report


def cmd_group_analyze(args, command) -> Report:
    group = PermGroup.from_text(args.degree, args.generators)
    report = Report(command, {"degree": args.degree, "generators": args.generators})
    transitive = is_transitive(group)
    report.analysis["transitive"] = transitive
    report.analysis["order"] = group.order()
    if not transitive:
        report.add("transitive", fails({"note": "orbit of 0 is proper"}))
        return report
    report.add("transitive", holds())

    primitive = is_primitive(group)
    strongly = is_strongly_primitive(group)
    report.analysis["primitive"] = primitive
    report.analysis["strongly_primitive"] = strongly
    report.add("primitive_iff_strongly_primitive",
               holds() if primitive == strongly
               else fails({"primitive": primitive, "strongly_primitive": strongly}))

    inventory = []
    nontrivial_non_t0 = []
    for t in invariant_topologies(group):
        t0, t1 = separation_class(t)
        entry = {"opens": t.to_json()["opens"], "trivial": t.is_trivial(),
                 "t0": t0, "t1": t1}
        inventory.append(entry)
        if not t.is_trivial() and not t0:
            nontrivial_non_t0.append(entry)
    report.analysis["invariant_topologies"] = inventory
    nontrivial = [e for e in inventory if not e["trivial"]]
    if primitive:
        verdict = holds() if not nontrivial else fails({"unexpected": nontrivial})
    else:
        verdict = holds({"count": len(nontrivial_non_t0)}) if nontrivial_non_t0 \
            else fails({"note": "imprimitive but no non-T0 invariant topology"})
    report.add("topology_classification", verdict)

    samples = []
    if group.degree >= 3:
        for x, y in ((1, 2), (2, 1)):
            g = separation_witness(group, {0}, x, y)
            samples.append({"delta": [0], "x": x, "y": y,
                            "witness": g.cycle_string() if g else None})
    report.analysis["separation_samples"] = samples
    if primitive and samples:
        missing = [s for s in samples if s["witness"] is None]
        report.add("separation_property",
                   holds() if not missing else fails({"missing": missing}))
    return report


def cmd_rado(args, command) -> Report:
    graph = parse_oracle(args.graph)
    window = args.window if args.window is not None else _env_default("RADOLAB_WINDOW", 4096)
    bound = args.bound if args.bound is not None else _env_default("RADOLAB_BOUND", 10**6)

    if args.rado_command == "extension":
        joined, avoided = _int_list(args.u), _int_list(args.w)
        report = Report(command, {"graph": graph.descriptor(), "u": joined,
                                  "w": avoided, "bound": bound})
        z = extension_witness(graph, joined, avoided, bound)
        report.add("extension_witness_found",
                   holds({"z": z}) if z is not None
                   else fails({"note": "no witness below bound", "bound": bound}))
        if isinstance(graph, BitRado):
            report.analysis["closed_form"] = closed_form_witness(joined, avoided)
        return report

    if args.rado_command == "embed":
        report = Report(command, {"graph": graph.descriptor(), "steps": args.steps,
                                  "bound": bound})
        try:
            embedding = run_spanning_embedding(graph, args.steps, bound)
        except BoundedSearchError as exc:
            report.error = {"type": "bounded-search", "constraints": exc.constraints}
            report.add("embedding_verified", fails(exc.constraints))
            return report
        report.add("embedding_verified", verify_embedding(embedding, graph))
        report.analysis["embedding"] = embedding.stats()
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(embedding.to_dot())
        if args.pairs:
            with open(args.pairs, "w") as fh:
                fh.write(embedding.to_pairs_text())
        return report

    if args.rado_command == "chain":
        report = Report(command, {"colours": args.colours, "seed": args.seed,
                                  "trials": args.trials, "max_ws": args.max_ws,
                                  "window": window})
        chain = filter_chain(args.colours, args.seed, args.trials, args.max_ws, window)
        report.analysis["chain"] = chain.to_json()
        inclusion_ok = all(lv.inclusion_ok for lv in chain.levels)
        report.add("pointwise_inclusions", holds() if inclusion_ok else fails(
            {"levels": [lv.level for lv in chain.levels if not lv.inclusion_ok]}))
        unwitnessed = [
            {"level": lv.level, "trial": t.to_json()}
            for lv in chain.levels for t in lv.trials if t.witness is None
        ]
        report.add("strictness_witnesses",
                   holds({"levels": len(chain.levels)}) if not unwitnessed
                   else fails({"unwitnessed": unwitnessed}))
        report.add("witness_recheck", chain.recheck())
        return report

    if args.rado_command == "nbhd":
        vertices = _int_list(args.vertices)
        report = Report(command, {"graph": graph.descriptor(), "vertices": vertices,
                                  "window": window, "depth": args.depth})
        base = neighbourhood_filter(graph, vertices, window)
        report.add("filter_nontrivial",
                   base_is_nontrivial(base, sample_depth=args.depth, window=window))
        report.analysis["generators"] = [g.to_json() for g in base.generators]
        return report

    raise UsageError(f"unknown rado subcommand {args.rado_command!r}")


def cmd_mekler(args, command) -> Report:
    action = parse_action(args.action)
    moiety = parse_moiety(args.moiety)
    window = args.window if args.window is not None else _env_default("RADOLAB_WINDOW", 10**4)
    report = Report(command, {
        "action": args.action, "moiety": args.moiety, "mode": args.mode,
        "max_words": args.max_words, "max_n": args.max_n,
        "window": window, "threshold": args.threshold,
    })
    moiety.check_window(window, args.threshold)
    check = mekler_topology_check if args.mode == "topology" else mekler_filter_check
    verdict = check(moiety, action, args.max_words, args.max_n, window, args.threshold)
    report.add(f"mekler_{args.mode}", verdict)
    return report


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radolab",
        description="countable-combinatorics workbench with deterministic JSON reports",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("topo-roundtrip", help="enumerate preorders and round-trip the duality")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("group-analyze", help="primitivity and invariant topologies of a group")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--generators", required=True,
                   help='cycle notation, e.g. "(0 1 2),(0 1)"')

    p = sub.add_parser("rado", help="graph-oracle commands")
    rado_sub = p.add_subparsers(dest="rado_command", required=True)

    q = rado_sub.add_parser("extension", help="extension-property witness")
    q.add_argument("--graph", default="bitrado")
    q.add_argument("--u", default="", help="vertices to join, comma-separated")
    q.add_argument("--w", default="", help="vertices to avoid, comma-separated")
    q.add_argument("--bound", type=int)
    q.add_argument("--window", type=int)

    q = rado_sub.add_parser("embed", help="going-forth spanning embedding")
    q.add_argument("--graph", required=True)
    q.add_argument("--steps", type=int, default=200)
    q.add_argument("--bound", type=int)
    q.add_argument("--window", type=int)
    q.add_argument("--dot", help="write the placed subgraph as DOT")
    q.add_argument("--pairs", help="write the embedding as two-column text")

    q = rado_sub.add_parser("chain", help="strict filter chain from an edge colouring")
    q.add_argument("--graph", default="bitrado", help=argparse.SUPPRESS)
    q.add_argument("--colours", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--max-ws", type=int, default=4)
    q.add_argument("--window", type=int)
    q.add_argument("--bound", type=int)

    q = rado_sub.add_parser("nbhd", help="neighbourhood filter non-triviality")
    q.add_argument("--graph", required=True)
    q.add_argument("--vertices", required=True)
    q.add_argument("--window", type=int)
    q.add_argument("--depth", type=int, default=3)
    q.add_argument("--bound", type=int)

    p = sub.add_parser("mekler", help="moiety translate-intersection conditions")
    p.add_argument("--action", required=True)
    p.add_argument("--moiety", required=True)
    p.add_argument("--mode", choices=("topology", "filter"), required=True)
    p.add_argument("--max-words", type=int, default=4)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--window", type=int)
    p.add_argument("--threshold", type=int, default=100)

    return parser


def run(argv: list[str]) -> tuple[dict, int]:
    """Build the report for an argument list; returns (json dict, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"error": {"type": "usage", "note": "argument parsing failed"}}, (
            EXIT_USAGE if exc.code else EXIT_OK)

    handlers = {
        "topo-roundtrip": cmd_topo_roundtrip,
        "group-analyze": cmd_group_analyze,
        "rado": cmd_rado,
        "mekler": cmd_mekler,
    }
    try:
        report = handlers[args.subcommand](args, list(argv))
    except UsageError as exc:
        return {"error": {"type": "usage", "message": str(exc)}}, EXIT_USAGE
    except BoundedSearchError as exc:
        return {"error": {"type": "bounded-search", "message": str(exc),
                          "constraints": exc.constraints}}, EXIT_RESOURCE
    except ResourceLimitError as exc:
        return {"error": {"type": "resource", "message": str(exc)}}, EXIT_RESOURCE
    return report.to_json(), report.exit_code()


def main(argv: Optional[list[str]] = None) -> int:
    payload, code = run(sys.argv[1:] if argv is None else argv)
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
