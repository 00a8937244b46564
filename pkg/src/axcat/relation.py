"""Finite binary relations over dense integer event ids.

Everything downstream (communication relations, axioms, witnesses) is
built out of these. Relations are immutable and carry their universe
explicitly so the identity relation is well-defined.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

Pair = tuple[int, int]


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle, stored with the minimal id first so output is stable."""

    nodes: tuple[int, ...]

    @classmethod
    def canonical(cls, nodes: Iterable[int]) -> "CycleWitness":
        nodes = tuple(nodes)
        if not nodes:
            raise ValueError("a cycle witness needs at least one node")
        k = nodes.index(min(nodes))
        return cls(nodes[k:] + nodes[:k])

    def validates_against(self, relation: "Relation") -> bool:
        n = self.nodes
        return all(
            (n[i], n[(i + 1) % len(n)]) in relation.pairs for i in range(len(n))
        )


@dataclass(frozen=True)
class Relation:
    universe: frozenset[int]
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        for x, y in self.pairs:
            if x not in self.universe or y not in self.universe:
                raise ValueError(f"pair ({x}, {y}) mentions ids outside the universe")

    @classmethod
    def of(cls, universe: Iterable[int], pairs: Iterable[Pair] = ()) -> "Relation":
        return cls(frozenset(universe), frozenset(pairs))

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def _require_same_universe(self, other: "Relation") -> None:
        if self.universe != other.universe:
            raise ValueError("relations are over different universes")

    def union(self, other: "Relation") -> "Relation":
        self._require_same_universe(other)
        return Relation(self.universe, self.pairs | other.pairs)

    def compose(self, other: "Relation") -> "Relation":
        """Sequencing: (x, y) iff some p has (x, p) here and (p, y) in other."""
        self._require_same_universe(other)
        succ: dict[int, set[int]] = {}
        for p, y in other.pairs:
            succ.setdefault(p, set()).add(y)
        pairs = {(x, y) for x, p in self.pairs for y in succ.get(p, ())}
        return Relation(self.universe, frozenset(pairs))

    def inverse(self) -> "Relation":
        return Relation(self.universe, frozenset((y, x) for x, y in self.pairs))

    def filter(self, keep: Callable[[int, int], bool]) -> "Relation":
        return Relation(self.universe, frozenset(p for p in self.pairs if keep(*p)))

    def _closure_rows(self) -> tuple[list[int], list[int]]:
        ids = sorted(self.universe)
        index = {v: i for i, v in enumerate(ids)}
        rows = [0] * len(ids)
        for x, y in self.pairs:
            rows[index[x]] |= 1 << index[y]
        n = len(ids)
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= rows[k]
        return ids, rows

    def transitive_closure(self) -> "Relation":
        """Smallest transitive superset; adds no reflexive pairs beyond cycles."""
        ids, rows = self._closure_rows()
        pairs = set()
        for i, row in enumerate(rows):
            while row:
                low = row & -row
                pairs.add((ids[i], ids[low.bit_length() - 1]))
                row ^= low
        return Relation(self.universe, frozenset(pairs))

    def reflexive_transitive_closure(self) -> "Relation":
        closed = self.transitive_closure()
        identity = frozenset((v, v) for v in self.universe)
        return Relation(self.universe, closed.pairs | identity)

    def is_irreflexive(self) -> bool:
        return all(x != y for x, y in self.pairs)

    def is_acyclic(self) -> bool:
        ids, rows = self._closure_rows()
        return not any(rows[i] >> i & 1 for i in range(len(ids)))

    def find_cycle(self) -> Optional[CycleWitness]:
        """Shortest cycle in canonical rotation, or None if acyclic."""
        succ: dict[int, list[int]] = {}
        for x, y in self.pairs:
            succ.setdefault(x, []).append(y)
        for ys in succ.values():
            ys.sort()

        best: Optional[tuple[int, tuple[int, ...]]] = None
        for start in sorted(self.universe):
            found = self._shortest_cycle_through(start, succ)
            if found is None:
                continue
            witness = CycleWitness.canonical(found)
            key = (len(witness.nodes), witness.nodes)
            if best is None or key < best:
                best = key
        return CycleWitness(best[1]) if best is not None else None

    def _shortest_cycle_through(
        self, start: int, succ: dict[int, list[int]]
    ) -> Optional[tuple[int, ...]]:
        if start in succ.get(start, ()):
            return (start,)
        parent: dict[int, int] = {start: start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in succ.get(u, ()):
                if v == start:
                    path = [u]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        return None
