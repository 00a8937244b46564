"""The execution tuple (events, po, co, rf) and its derived relations.

Initial values are modeled as explicit init writes (process ``INIT_PROC``,
value from the program's initial state, co-minimal at their address, and
unordered by po against everything). Ill-formed executions are
representable; ``validate`` reports violations instead of raising so the
enumerator can construct-then-filter.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .relation import Relation

READ = "R"
WRITE = "W"

# Process index reserved for initial-value writes; po totality is not
# required for this pseudo-process.
INIT_PROC = -1


@dataclass(frozen=True)
class Event:
    id: int
    proc: int
    kind: str
    addr: str
    value: int

    def __post_init__(self) -> None:
        if self.kind not in (READ, WRITE):
            raise ValueError(f"event kind must be {READ!r} or {WRITE!r}, got {self.kind!r}")

    @property
    def is_read(self) -> bool:
        return self.kind == READ

    @property
    def is_write(self) -> bool:
        return self.kind == WRITE


@dataclass(frozen=True)
class WellFormednessViolation:
    code: str
    events: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class Execution:
    events: tuple[Event, ...]
    po: Relation
    co: Relation
    rf: Relation

    @cached_property
    def by_id(self) -> dict[int, Event]:
        return {e.id: e for e in self.events}

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(e.id for e in self.events)

    def reads(self) -> list[Event]:
        return [e for e in self.events if e.is_read]

    def writes(self) -> list[Event]:
        return [e for e in self.events if e.is_write]


def make_execution(
    events: Iterable[Event],
    po: Iterable[tuple[int, int]] = (),
    co: Iterable[tuple[int, int]] = (),
    rf: Iterable[tuple[int, int]] = (),
) -> Execution:
    """Build an Execution with each relation's universe set to the event ids."""
    events = tuple(events)
    universe = frozenset(e.id for e in events)
    return Execution(
        events,
        Relation.of(universe, po),
        Relation.of(universe, co),
        Relation.of(universe, rf),
    )


def _check_strict_order(
    rel: Relation, label: str, out: list[WellFormednessViolation]
) -> None:
    for x, y in rel.pairs:
        if x == y:
            out.append(
                WellFormednessViolation(f"{label}-reflexive", (x,), f"{label} relates {x} to itself")
            )
    pairs = rel.pairs
    for x, y in pairs:
        for y2, z in pairs:
            if y == y2 and (x, z) not in pairs and x != z:
                out.append(
                    WellFormednessViolation(
                        f"{label}-not-transitive",
                        (x, y, z),
                        f"{label} has {x}->{y}->{z} but not {x}->{z}",
                    )
                )


def validate(e: Execution) -> list[WellFormednessViolation]:
    """All well-formedness clauses, one machine-readable violation per break."""
    out: list[WellFormednessViolation] = []

    seen: dict[int, Event] = {}
    for ev in e.events:
        if ev.id in seen:
            out.append(
                WellFormednessViolation(
                    "duplicate-event-id", (ev.id,), f"event id {ev.id} used twice"
                )
            )
        seen[ev.id] = ev
    by_id = seen
    ids = frozenset(by_id)

    for label, rel in (("po", e.po), ("co", e.co), ("rf", e.rf)):
        if rel.universe != ids:
            out.append(
                WellFormednessViolation(
                    f"{label}-universe-mismatch",
                    (),
                    f"{label} universe differs from the event id set",
                )
            )
            return out  # nothing else is meaningful

    # po: same-process only, strict total order per (non-init) process
    for x, y in e.po.pairs:
        if by_id[x].proc != by_id[y].proc:
            out.append(
                WellFormednessViolation(
                    "po-cross-process", (x, y), f"po relates events of different processes"
                )
            )
    _check_strict_order(e.po, "po", out)
    procs = {ev.proc for ev in e.events if ev.proc != INIT_PROC}
    for p in procs:
        members = sorted(ev.id for ev in e.events if ev.proc == p)
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if (x, y) not in e.po.pairs and (y, x) not in e.po.pairs:
                    out.append(
                        WellFormednessViolation(
                            "po-not-total",
                            (x, y),
                            f"events {x}, {y} of process {p} are po-unordered",
                        )
                    )

    # co: writes only, equal address, strict total order per address
    for x, y in e.co.pairs:
        if not (by_id[x].is_write and by_id[y].is_write):
            out.append(
                WellFormednessViolation("co-non-write", (x, y), "co endpoint is not a write")
            )
        elif by_id[x].addr != by_id[y].addr:
            out.append(
                WellFormednessViolation(
                    "co-addr-mismatch", (x, y), "co relates writes to different addresses"
                )
            )
    _check_strict_order(e.co, "co", out)
    addrs = {ev.addr for ev in e.events if ev.is_write}
    for a in addrs:
        members = sorted(ev.id for ev in e.events if ev.is_write and ev.addr == a)
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if (x, y) not in e.co.pairs and (y, x) not in e.co.pairs:
                    out.append(
                        WellFormednessViolation(
                            "co-not-total",
                            (x, y),
                            f"writes {x}, {y} at {a} are co-unordered",
                        )
                    )

    # rf: write -> read, equal address, matching value, unique per read
    sources: dict[int, list[int]] = {ev.id: [] for ev in e.events if ev.is_read}
    for w, r in e.rf.pairs:
        if not by_id[w].is_write:
            out.append(
                WellFormednessViolation("rf-source-not-write", (w, r), "rf source is not a write")
            )
            continue
        if not by_id[r].is_read:
            out.append(
                WellFormednessViolation("rf-target-not-read", (w, r), "rf target is not a read")
            )
            continue
        if by_id[w].addr != by_id[r].addr:
            out.append(
                WellFormednessViolation(
                    "rf-addr-mismatch", (w, r), "rf relates different addresses"
                )
            )
        if by_id[w].value != by_id[r].value:
            out.append(
                WellFormednessViolation(
                    "rf-value-mismatch",
                    (w, r),
                    f"read {r} has value {by_id[r].value}, its source wrote {by_id[w].value}",
                )
            )
        sources[r].append(w)
    for r, ws in sources.items():
        if not ws:
            out.append(
                WellFormednessViolation(
                    "read-without-rf-source", (r,), f"read {r} has no rf source"
                )
            )
        elif len(ws) > 1:
            out.append(
                WellFormednessViolation(
                    "duplicate-rf-source",
                    (r, *sorted(ws)),
                    f"read {r} has {len(ws)} rf sources",
                )
            )
    return out


def rf_inv(e: Execution, r: int) -> int:
    """The unique write a read takes its value from."""
    ev = e.by_id.get(r)
    if ev is None or not ev.is_read:
        raise ValueError(f"event {r} is not a read of this execution")
    ws = [w for w, rr in e.rf.pairs if rr == r]
    if len(ws) != 1:
        raise ValueError(f"read {r} has {len(ws)} rf sources; execution is ill-formed")
    return ws[0]


@dataclass(frozen=True)
class DerivedRelations:
    fr: Relation
    com: Relation
    pol: Relation
    rfe: Relation
    fre: Relation
    com_plus: Relation


def derive(e: Execution, *, check: bool = True) -> DerivedRelations:
    """All communication relations of a well-formed execution."""
    if check:
        violations = validate(e)
        if violations:
            raise ValueError(
                "execution is ill-formed: " + "; ".join(v.code for v in violations)
            )
    by_id = e.by_id
    fr = e.rf.inverse().compose(e.co)
    com = e.co.union(e.rf).union(fr)
    pol = e.po.filter(lambda x, y: by_id[x].addr == by_id[y].addr)
    rfe = e.rf.filter(lambda x, y: by_id[x].proc != by_id[y].proc)
    fre = fr.filter(lambda x, y: by_id[x].proc != by_id[y].proc)
    return DerivedRelations(
        fr=fr,
        com=com,
        pol=pol,
        rfe=rfe,
        fre=fre,
        com_plus=com.transitive_closure(),
    )


def com_plus_rewrite(e: Execution, derived: Optional[DerivedRelations] = None) -> Relation:
    """com extended by co;rf and fr;rf; provably equal to com's closure."""
    d = derived if derived is not None else derive(e)
    return d.com.union(e.co.compose(e.rf)).union(d.fr.compose(e.rf))


def execution_to_dict(e: Execution) -> dict:
    return {
        "events": [
            {"id": ev.id, "proc": ev.proc, "kind": ev.kind, "addr": ev.addr, "value": ev.value}
            for ev in sorted(e.events, key=lambda ev: ev.id)
        ],
        "po": sorted(e.po.pairs),
        "co": sorted(e.co.pairs),
        "rf": sorted(e.rf.pairs),
    }


def execution_from_dict(d: dict) -> Execution:
    events = [
        Event(ev["id"], ev["proc"], ev["kind"], ev["addr"], ev["value"])
        for ev in d["events"]
    ]
    return make_execution(
        events,
        po=[tuple(p) for p in d["po"]],
        co=[tuple(p) for p in d["co"]],
        rf=[tuple(p) for p in d["rf"]],
    )


def execution_to_json(e: Execution) -> str:
    return json.dumps(execution_to_dict(e), sort_keys=True)


def execution_from_json(text: str) -> Execution:
    return execution_from_dict(json.loads(text))
