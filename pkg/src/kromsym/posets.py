"""Finite posets stored as strict order relations on ``0..n-1``."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .graphs import Graph

__all__ = [
    "Poset",
    "InvalidPosetError",
    "from_relations",
    "chain",
    "antichain",
    "poset_sum",
    "incomparability_graph",
    "is_31_free",
    "all_posets",
    "parse_poset",
]


class InvalidPosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    n: int
    less: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "less", frozenset((int(a), int(b)) for a, b in self.less))

    def lt(self, a: int, b: int) -> bool:
        return (a, b) in self.less

    def comparable(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.less or (b, a) in self.less

    def to_json(self) -> dict:
        return {"n": self.n, "less": [list(p) for p in sorted(self.less)]}


def from_relations(n: int, pairs: Iterable[Sequence[int]]) -> Poset:
    """Transitive closure of the given strict relations; cycles are rejected."""
    reach = [[False] * n for _ in range(n)]
    for a, b in pairs:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidPosetError(f"relation {(a, b)} out of range")
        if a == b:
            raise InvalidPosetError(f"element {a} cannot be below itself")
        reach[a][b] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    if any(reach[i][i] for i in range(n)):
        raise InvalidPosetError("relations contain a cycle")
    return Poset(n, frozenset((i, j) for i in range(n) for j in range(n) if reach[i][j]))


def chain(n: int) -> Poset:
    return from_relations(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset(n)


def poset_sum(p: Poset, q: Poset) -> Poset:
    """Disjoint union; elements of ``q`` are shifted by ``p.n``."""
    shifted = {(a + p.n, b + p.n) for a, b in q.less}
    return Poset(p.n + q.n, p.less | shifted)


def incomparability_graph(p: Poset) -> Graph:
    return Graph(p.n, [(a, b) for a, b in itertools.combinations(range(p.n), 2) if not p.comparable(a, b)])


def is_31_free(p: Poset) -> bool:
    """No induced copy of a 3-chain plus an element incomparable to all of it."""
    for quad in itertools.combinations(range(p.n), 4):
        for x in quad:
            rest = [y for y in quad if y != x]
            if any(p.comparable(x, y) for y in rest):
                continue
            if all(p.comparable(a, b) for a, b in itertools.combinations(rest, 2)):
                return False
    return True


def _canonical(p: Poset) -> Tuple:
    return min(
        tuple(sorted((perm[a], perm[b]) for a, b in p.less))
        for perm in itertools.permutations(range(p.n))
    )


def all_posets(n: int) -> List[Poset]:
    """One poset per isomorphism class on ``n`` elements (n <= 5)."""
    if n > 5:
        raise ValueError("all_posets is limited to 5 elements")
    # every poset has a natural labelling, so relations i<j suffice
    pairs = list(itertools.combinations(range(n), 2))
    seen: Dict[Tuple, Poset] = {}
    for bits in range(1 << len(pairs)):
        rel = frozenset(pr for i, pr in enumerate(pairs) if bits >> i & 1)
        closed = all(
            (a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2
        )
        if not closed:
            continue
        p = Poset(n, rel)
        seen.setdefault(_canonical(p), p)
    return sorted(seen.values(), key=lambda p: (len(p.less), sorted(p.less)))


def parse_poset(text: str) -> Poset:
    """Parse ``{"n":..,"less":[..]}``, ``@file``, or ``chain:n`` / ``antichain:n`` / ``chains:a,b,..``."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    if text.startswith("{"):
        obj = json.loads(text)
        return from_relations(int(obj["n"]), obj.get("less", []))
    if text.startswith("name:"):
        text = text[5:]
    kind, _, arg = text.partition(":")
    try:
        if kind == "chain":
            return chain(int(arg))
        if kind == "antichain":
            return antichain(int(arg))
        if kind == "chains":
            out = Poset(0)
            for part in arg.split(","):
                out = poset_sum(out, chain(int(part)))
            return out
    except ValueError:
        pass
    raise ValueError(f"unknown poset spec {text!r}")
