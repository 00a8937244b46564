"""Command-line driver: check, enumerate, and explain litmus tests.

Exit codes for ``check``: 0 if the exists outcome is forbidden under the
chosen axioms, 1 if allowed, 2 on any error. The enumeration cap can be
overridden with the AXCAT_MAX_EVENTS environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .axioms import ARCHITECTURES, Axiom, AxiomVerdict, PatternInstance
from .collapse import collapse_cycle
from .enumeration import (
    DEFAULT_MAX_EVENTS,
    AxiomSet,
    CandidateResult,
    EnumerationReport,
    LitmusTest,
    allowed_outcomes,
)
from .execution import derive, execution_to_dict
from .parser import parse_litmus, parse_outcome_binding
from .relation import CycleWitness

SCHEMA_VERSION = 1


class CliError(Exception):
    pass


def _max_events() -> int:
    raw = os.environ.get("AXCAT_MAX_EVENTS")
    if raw is None:
        return DEFAULT_MAX_EVENTS
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"AXCAT_MAX_EVENTS must be an integer, got {raw!r}")


def _load_test(path: str) -> LitmusTest:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_litmus(fh.read())
    except OSError as err:
        raise CliError(str(err))
    except ValueError as err:
        raise CliError(f"{path}: {err}")


def _axiom_set(axioms: str, arch: Optional[str]) -> AxiomSet:
    if axioms == "sc":
        return AxiomSet.sc()
    if axioms == "scpl":
        return AxiomSet.sc_per_location_only()
    if axioms == "framework":
        name = arch or "sc-arch"
        if name not in ARCHITECTURES:
            raise CliError(
                f"unknown architecture {name!r}; known: {', '.join(sorted(ARCHITECTURES))}"
            )
        return AxiomSet.framework(ARCHITECTURES[name])
    raise CliError(f"unknown axiom set {axioms!r}")


def _witness_dict(witness: object) -> Optional[dict]:
    if witness is None:
        return None
    if isinstance(witness, CycleWitness):
        return {"kind": "cycle", "nodes": list(witness.nodes)}
    if isinstance(witness, PatternInstance):
        return {
            "kind": "pattern",
            "pattern": witness.pattern,
            "first": witness.first,
            "second": witness.second,
        }
    if isinstance(witness, tuple):
        return {"kind": "pair", "x": witness[0], "y": witness[1]}
    if isinstance(witness, int):
        return {"kind": "event", "id": witness}
    return {"kind": "other", "value": str(witness)}


def _verdict_dict(v: AxiomVerdict) -> dict:
    return {"axiom": v.axiom.value, "holds": v.holds, "witness": _witness_dict(v.witness)}


def _outcome_dict(outcome) -> dict:
    return {
        "registers": {f"P{p}:{r}": v for (p, r), v in outcome.registers},
        "memory": dict(outcome.final_memory),
    }


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _cmd_check(args: argparse.Namespace) -> int:
    test = _load_test(args.file)
    if test.condition is None:
        raise CliError("check requires an 'exists' condition in the litmus file")
    axiom_set = _axiom_set(args.axioms, args.arch)
    report = allowed_outcomes(test, axiom_set, _max_events())

    matching = [(o, ok) for o, ok in report.summary if test.condition.matches(o)]
    allowed = any(ok for _, ok in matching)
    result = "allowed" if allowed else "forbidden"

    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "test": test.name,
            "axioms": axiom_set.label(),
            "condition": str(test.condition),
            "result": result,
            "outcomes": [
                {
                    "outcome": _outcome_dict(o),
                    "allowed": ok,
                    "matches_condition": test.condition.matches(o),
                }
                for o, ok in report.summary
            ],
        }
        _emit_json(payload)
    else:
        print(f"test {test.name}: exists ({test.condition})")
        print(f"axioms: {axiom_set.label()}")
        for o, ok in report.summary:
            marker = "*" if test.condition.matches(o) else " "
            print(f" {marker} {o.label()} -> {'allowed' if ok else 'forbidden'}")
        print(f"result: {result}")
    return 1 if allowed else 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    test = _load_test(args.file)
    cap = _max_events()
    sc_report = allowed_outcomes(test, AxiomSet.sc(), cap)
    scpl_report = allowed_outcomes(test, AxiomSet.sc_per_location_only(), cap)
    sc_allowed = sc_report.allowed()
    scpl_allowed = scpl_report.allowed()

    if args.json:
        candidates = []
        for sc_cand, scpl_cand in zip(sc_report.candidates, scpl_report.candidates):
            entry = {
                "index": sc_cand.index,
                "outcome": _outcome_dict(sc_cand.outcome),
                "verdicts": [
                    _verdict_dict(v)
                    for v in (*sc_cand.verdicts, *scpl_cand.verdicts)
                ],
            }
            if args.dump_executions:
                entry["execution"] = execution_to_dict(sc_cand.execution)
            candidates.append(entry)
        payload = {
            "schema": SCHEMA_VERSION,
            "test": test.name,
            "candidate_count": len(sc_report.candidates),
            "outcomes": [
                {
                    "outcome": _outcome_dict(o),
                    "allowed_sc": o in sc_allowed,
                    "allowed_scpl": o in scpl_allowed,
                }
                for o, _ in sc_report.summary
            ],
            "candidates": candidates,
        }
        _emit_json(payload)
    else:
        print(f"test {test.name}: {len(sc_report.candidates)} candidate executions")
        for o, _ in sc_report.summary:
            print(
                f"  {o.label()} -> sc: {'allowed' if o in sc_allowed else 'forbidden'},"
                f" scpl: {'allowed' if o in scpl_allowed else 'forbidden'}"
            )
    return 0


def _explain_candidate(cand: CandidateResult) -> list[str]:
    lines = []
    e = cand.execution
    d = derive(e, check=False)
    po_com = e.po.union(d.com)
    cycle = po_com.find_cycle()
    if cycle is None:
        lines.append("    sequentially consistent (no cycle in po with com)")
        return lines
    lines.append(
        "    violates sequential consistency; cycle: "
        + " -> ".join(str(n) for n in cycle.nodes)
    )
    pol_com = d.pol.union(d.com)
    loc_cycle = pol_com.find_cycle()
    if loc_cycle is None:
        lines.append("    SC-Per-Location holds")
    else:
        pair = collapse_cycle(e, loc_cycle, d)
        lines.append(
            f"    violates SC-Per-Location; witness pair: {pair.x} ->pol {pair.y},"
            f" {pair.y} ->com+ {pair.x}"
        )
        from .axioms import find_forbidden_patterns

        for inst in find_forbidden_patterns(e, d):
            lines.append(
                f"    pattern {inst.pattern}: {inst.first} ->pol {inst.second}"
            )
    return lines


def _cmd_explain(args: argparse.Namespace) -> int:
    test = _load_test(args.file)
    try:
        binding = parse_outcome_binding(args.outcome, test)
    except ValueError as err:
        raise CliError(f"bad --outcome binding: {err}")
    report = allowed_outcomes(test, AxiomSet.sc(), _max_events())

    matching = [c for c in report.candidates if binding.matches(c.outcome)]
    print(f"test {test.name}: outcome {binding}")
    if not matching:
        print("no candidate execution produces this outcome")
        return 0
    for cand in matching:
        status = "passes" if cand.passes else "fails"
        print(f"  candidate {cand.index} ({cand.outcome.label()}) {status} full SC")
        for line in _explain_candidate(cand):
            print(line)
    if any(c.passes for c in matching):
        print("verdict: allowed under sequential consistency")
    else:
        print("verdict: forbidden under sequential consistency")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axcat", description="axiomatic weak-memory litmus checker"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether the exists outcome is allowed")
    check.add_argument("file")
    check.add_argument("--axioms", choices=("sc", "scpl", "framework"), default="sc")
    check.add_argument("--arch", default=None)
    check.add_argument("--json", action="store_true")
    check.set_defaults(func=_cmd_check)

    enum = sub.add_parser("enumerate", help="enumerate all candidate executions")
    enum.add_argument("file")
    enum.add_argument("--json", action="store_true")
    enum.add_argument("--dump-executions", action="store_true")
    enum.set_defaults(func=_cmd_enumerate)

    explain = sub.add_parser("explain", help="explain why an outcome is forbidden")
    explain.add_argument("file")
    explain.add_argument("--outcome", required=True)
    explain.set_defaults(func=_cmd_explain)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
