"""Random and exhaustive well-formed execution generation.

Both generators mirror the enumerator's choice points: pick an event
skeleton, then a coherence permutation per address and an rf source per
read, so every well-formed shape is reachable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .enumeration import SkeletonEvent, build_candidate, iter_candidates
from .execution import READ, WRITE, Execution

EXHAUSTIVE_MAX = 5


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_events: int = 8
    max_procs: int = 3
    max_addrs: int = 3
    read_fraction: float = 0.5

    def __post_init__(self) -> None:
        if self.max_events < 0:
            raise ValueError("max_events must be >= 0")
        if self.max_procs < 1 or self.max_addrs < 1:
            raise ValueError("max_procs and max_addrs must be >= 1")
        if not 0.0 <= self.read_fraction <= 1.0:
            raise ValueError("read_fraction must be in [0, 1]")


def gen_execution(cfg: GenConfig, rng: Optional[random.Random] = None) -> Execution:
    """One random well-formed execution; deterministic given cfg.seed."""
    rng = rng if rng is not None else random.Random(cfg.seed)
    n_procs = rng.randint(1, cfg.max_procs)
    n_addrs = rng.randint(1, cfg.max_addrs)
    addrs = [f"a{i}" for i in range(n_addrs)]
    n_events = rng.randint(0, cfg.max_events)

    skeleton: list[SkeletonEvent] = []
    next_value = 1
    for _ in range(n_events):
        proc = rng.randrange(n_procs)
        addr = rng.choice(addrs)
        if rng.random() < cfg.read_fraction:
            skeleton.append((proc, READ, addr, None))
        else:
            skeleton.append((proc, WRITE, addr, next_value))
            next_value += 1

    initial = {a: 0 for a in addrs}
    base = n_addrs
    init_id = {a: i for i, a in enumerate(addrs)}
    writes_at: dict[str, list[int]] = {a: [] for a in addrs}
    for i, (_, kind, addr, _) in enumerate(skeleton):
        if kind == WRITE:
            writes_at[addr].append(base + i)

    co_order = {}
    for a in addrs:
        order = list(writes_at[a])
        rng.shuffle(order)
        co_order[a] = order

    rf_choice = {}
    for i, (_, kind, addr, _) in enumerate(skeleton):
        if kind == READ:
            rf_choice[base + i] = rng.choice([init_id[addr], *writes_at[addr]])

    return build_candidate(skeleton, initial, co_order, rf_choice)


def gen_executions(cfg: GenConfig) -> Iterator[Execution]:
    """Infinite deterministic stream seeded by cfg.seed."""
    rng = random.Random(cfg.seed)
    while True:
        yield gen_execution(cfg, rng)


def _growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Canonical labelings: each label appears in order of first use."""
    if n == 0:
        yield ()
        return

    def rec(prefix: list[int], maxv: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(maxv + 2):
            prefix.append(v)
            yield from rec(prefix, max(maxv, v))
            prefix.pop()

    yield from rec([], -1)


def exhaustive_executions(max_events: int) -> Iterator[Execution]:
    """Every well-formed execution up to canonical relabeling of processes
    and addresses, with at most max_events program events."""
    if max_events > EXHAUSTIVE_MAX:
        raise ValueError(f"exhaustive bound is capped at {EXHAUSTIVE_MAX}")
    for n in range(max_events + 1):
        for procs in _growth_strings(n):
            for addr_labels in _growth_strings(n):
                addrs = [f"a{j}" for j in addr_labels]
                initial = {a: 0 for a in sorted(set(addrs))}
                if n == 0:
                    # the empty execution, once
                    yield from iter_candidates([], {})
                    continue
                for kinds in product((READ, WRITE), repeat=n):
                    skeleton: list[SkeletonEvent] = []
                    for i in range(n):
                        value = len(initial) + i + 1 if kinds[i] == WRITE else None
                        skeleton.append((procs[i], kinds[i], addrs[i], value))
                    yield from iter_candidates(skeleton, initial)
