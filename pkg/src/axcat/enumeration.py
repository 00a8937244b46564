"""Litmus programs and exhaustive candidate-execution enumeration.

A candidate execution fixes one coherence order per address and one rf
source per read; enumeration ranges over all such choices, with read
values taken from the chosen source so well-formedness holds by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Mapping, Optional, Sequence, Union

from .axioms import (
    Architecture,
    AxiomVerdict,
    no_thin_air,
    observation,
    propagation,
    sc_full,
    sc_per_location_1,
)
from .execution import (
    INIT_PROC,
    READ,
    WRITE,
    Event,
    Execution,
    derive,
    make_execution,
    validate,
)

DEFAULT_MAX_EVENTS = 8


class CapExceededError(ValueError):
    """Program exceeds the enumeration event cap."""


@dataclass(frozen=True)
class WriteInstr:
    addr: str
    value: int


@dataclass(frozen=True)
class ReadInstr:
    addr: str
    register: str


Instruction = Union[WriteInstr, ReadInstr]


@dataclass(frozen=True)
class RegisterBinding:
    proc: int
    register: str
    value: int

    def __str__(self) -> str:
        return f"P{self.proc}:{self.register}={self.value}"


@dataclass(frozen=True)
class MemoryBinding:
    addr: str
    value: int

    def __str__(self) -> str:
        return f"{self.addr}={self.value}"


ConditionTerm = Union[RegisterBinding, MemoryBinding]


@dataclass(frozen=True)
class Condition:
    terms: tuple[ConditionTerm, ...]

    def matches(self, outcome: "Outcome") -> bool:
        for term in self.terms:
            if isinstance(term, RegisterBinding):
                if outcome.register(term.proc, term.register) != term.value:
                    return False
            else:
                if outcome.memory(term.addr) != term.value:
                    return False
        return True

    def __str__(self) -> str:
        return " /\\ ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class LitmusTest:
    name: str
    processes: tuple[tuple[Instruction, ...], ...]
    initial: tuple[tuple[str, int], ...] = ()
    condition: Optional[Condition] = None

    def addresses(self) -> list[str]:
        addrs = {a for a, _ in self.initial}
        for proc in self.processes:
            for instr in proc:
                addrs.add(instr.addr)
        return sorted(addrs)

    def initial_value(self, addr: str) -> int:
        for a, v in self.initial:
            if a == addr:
                return v
        return 0

    def event_count(self) -> int:
        return sum(len(p) for p in self.processes)


@dataclass(frozen=True)
class Outcome:
    registers: tuple[tuple[tuple[int, str], int], ...]
    final_memory: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, registers: Mapping[tuple[int, str], int], memory: Mapping[str, int]) -> "Outcome":
        return cls(tuple(sorted(registers.items())), tuple(sorted(memory.items())))

    def register(self, proc: int, register: str) -> Optional[int]:
        for (p, r), v in self.registers:
            if p == proc and r == register:
                return v
        return None

    def memory(self, addr: str) -> Optional[int]:
        for a, v in self.final_memory:
            if a == addr:
                return v
        return None

    def label(self) -> str:
        parts = [f"P{p}:{r}={v}" for (p, r), v in self.registers]
        parts += [f"{a}={v}" for a, v in self.final_memory]
        return "; ".join(parts)


# --- candidate construction -------------------------------------------------

# A skeleton fixes the program events (proc, kind, addr, value-or-None for
# reads) but not co or rf. Init writes are added per address.

SkeletonEvent = tuple[int, str, str, Optional[int]]


def build_candidate(
    skeleton: Sequence[SkeletonEvent],
    initial: Mapping[str, int],
    co_order: Mapping[str, Sequence[int]],
    rf_choice: Mapping[int, int],
) -> Execution:
    """Assemble one execution from a skeleton plus co/rf choices.

    ``co_order`` lists program write ids per address (init comes first
    implicitly); ``rf_choice`` maps each read id to its source write id.
    Event ids: init writes get 0..A-1 in sorted address order, program
    events follow in skeleton order.
    """
    addrs = sorted(initial)
    init_id = {a: i for i, a in enumerate(addrs)}
    base = len(addrs)

    values: dict[int, int] = {init_id[a]: initial[a] for a in addrs}
    for i, (_, kind, _, value) in enumerate(skeleton):
        if kind == WRITE:
            values[base + i] = value  # type: ignore[assignment]
    # Read values come from the chosen rf source; sources that are
    # themselves reads never occur in well-formed choices.
    read_values = {r: values[w] for r, w in rf_choice.items()}

    events = [Event(init_id[a], INIT_PROC, WRITE, a, initial[a]) for a in addrs]
    for i, (proc, kind, addr, value) in enumerate(skeleton):
        eid = base + i
        v = value if kind == WRITE else read_values[eid]
        events.append(Event(eid, proc, kind, addr, v))  # type: ignore[arg-type]

    po = []
    per_proc: dict[int, list[int]] = {}
    for i, (proc, _, _, _) in enumerate(skeleton):
        per_proc.setdefault(proc, []).append(base + i)
    for chain in per_proc.values():
        for i, x in enumerate(chain):
            for y in chain[i + 1 :]:
                po.append((x, y))

    co = []
    for a in addrs:
        order = [init_id[a], *co_order.get(a, ())]
        for i, x in enumerate(order):
            for y in order[i + 1 :]:
                co.append((x, y))

    rf = [(w, r) for r, w in rf_choice.items()]
    return make_execution(events, po=po, co=co, rf=rf)


def iter_candidates(
    skeleton: Sequence[SkeletonEvent], initial: Mapping[str, int]
) -> Iterator[Execution]:
    """All candidates of a skeleton: every co totalization times every rf
    assignment, in a deterministic order."""
    addrs = sorted(initial)
    init_id = {a: i for i, a in enumerate(addrs)}
    base = len(addrs)

    writes_at: dict[str, list[int]] = {a: [] for a in addrs}
    reads: list[tuple[int, str]] = []
    for i, (_, kind, addr, _) in enumerate(skeleton):
        if kind == WRITE:
            writes_at[addr].append(base + i)
        else:
            reads.append((base + i, addr))

    co_choices = [list(permutations(writes_at[a])) for a in addrs]
    rf_choices = [[init_id[a], *writes_at[a]] for _, a in reads]

    for co_pick in product(*co_choices):
        co_order = dict(zip(addrs, co_pick))
        for rf_pick in product(*rf_choices):
            rf_choice = {rid: w for (rid, _), w in zip(reads, rf_pick)}
            candidate = build_candidate(skeleton, initial, co_order, rf_choice)
            if not validate(candidate):
                yield candidate


def _skeleton_of(t: LitmusTest) -> tuple[list[SkeletonEvent], dict[str, int]]:
    skeleton: list[SkeletonEvent] = []
    for proc, instrs in enumerate(t.processes):
        for instr in instrs:
            if isinstance(instr, WriteInstr):
                skeleton.append((proc, WRITE, instr.addr, instr.value))
            else:
                skeleton.append((proc, READ, instr.addr, None))
    initial = {a: t.initial_value(a) for a in t.addresses()}
    return skeleton, initial


def enumerate_candidates(
    t: LitmusTest, max_events: int = DEFAULT_MAX_EVENTS
) -> list[Execution]:
    """Every well-formed candidate execution of the program."""
    if not t.processes:
        raise ValueError("litmus test has no processes")
    if t.event_count() > max_events:
        raise CapExceededError(
            f"program has {t.event_count()} events, cap is {max_events}"
        )
    skeleton, initial = _skeleton_of(t)
    return list(iter_candidates(skeleton, initial))


def outcome_of(t: LitmusTest, e: Execution) -> Outcome:
    """Final register and memory state of one candidate."""
    addrs = t.addresses()
    base = len(addrs)
    registers: dict[tuple[int, str], int] = {}
    i = 0
    by_id = e.by_id
    for proc, instrs in enumerate(t.processes):
        for instr in instrs:
            if isinstance(instr, ReadInstr):
                registers[(proc, instr.register)] = by_id[base + i].value
            i += 1
    memory: dict[str, int] = {}
    co_sources = {x for x, _ in e.co.pairs}
    for a in addrs:
        writes = [ev for ev in e.events if ev.is_write and ev.addr == a]
        co_max = [w for w in writes if w.id not in co_sources]
        if len(co_max) != 1:
            raise ValueError(f"no unique co-maximal write at {a}")
        memory[a] = co_max[0].value
    return Outcome.make(registers, memory)


# --- axiom sets and reports -------------------------------------------------


@dataclass(frozen=True)
class AxiomSet:
    kind: str  # "sc" | "scpl" | "framework"
    architecture: Optional[Architecture] = None

    @classmethod
    def sc(cls) -> "AxiomSet":
        return cls("sc")

    @classmethod
    def sc_per_location_only(cls) -> "AxiomSet":
        return cls("scpl")

    @classmethod
    def framework(cls, architecture: Architecture) -> "AxiomSet":
        return cls("framework", architecture)

    def label(self) -> str:
        if self.kind == "framework":
            assert self.architecture is not None
            return f"framework({self.architecture.name})"
        return self.kind

    def verdicts(self, e: Execution, derived=None) -> list[AxiomVerdict]:
        d = derived if derived is not None else derive(e)
        if self.kind == "sc":
            return [sc_full(e, d)]
        if self.kind == "scpl":
            return [sc_per_location_1(e, d)]
        if self.kind == "framework":
            assert self.architecture is not None
            return [
                sc_per_location_1(e, d),
                no_thin_air(e, self.architecture, d),
                observation(e, self.architecture, d),
                propagation(e, self.architecture, d),
            ]
        raise ValueError(f"unknown axiom set kind {self.kind!r}")


@dataclass(frozen=True)
class CandidateResult:
    index: int
    execution: Execution
    outcome: Outcome
    verdicts: tuple[AxiomVerdict, ...]

    @property
    def passes(self) -> bool:
        return all(v.holds for v in self.verdicts)


@dataclass(frozen=True)
class EnumerationReport:
    test_name: str
    axiom_set: AxiomSet
    candidates: tuple[CandidateResult, ...]
    summary: tuple[tuple[Outcome, bool], ...] = field(default=())

    def allowed(self) -> set[Outcome]:
        return {o for o, ok in self.summary if ok}

    def outcomes(self) -> set[Outcome]:
        return {o for o, _ in self.summary}


def allowed_outcomes(
    t: LitmusTest, axiom_set: AxiomSet, max_events: int = DEFAULT_MAX_EVENTS
) -> EnumerationReport:
    """Enumerate, check each candidate, and mark each outcome allowed iff
    some passing candidate produces it."""
    results = []
    allowed: dict[Outcome, bool] = {}
    for i, e in enumerate(enumerate_candidates(t, max_events)):
        d = derive(e, check=False)
        verdicts = tuple(axiom_set.verdicts(e, d))
        outcome = outcome_of(t, e)
        result = CandidateResult(i, e, outcome, verdicts)
        results.append(result)
        allowed[outcome] = allowed.get(outcome, False) or result.passes
    summary = tuple(sorted(allowed.items(), key=lambda kv: kv[0].label()))
    return EnumerationReport(t.name, axiom_set, tuple(results), summary)
