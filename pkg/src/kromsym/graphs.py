"""Simple graphs with positive vertex weights.

Vertices are ``0..n-1``.  Vertex subsets are handled internally as integer
bitmasks and exposed as frozensets.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Graph",
    "WeightedGraph",
    "DelconChildren",
    "as_weighted",
    "stable_sets",
    "stable_set_covers",
    "cover_partition",
    "total_stability",
    "delcon_children",
    "clan_graph",
    "is_claw_free",
    "named_graph",
    "parse_graph",
    "canonical_form",
    "is_isomorphic",
    "trees_up_to",
    "all_graphs",
    "random_graph",
    "NAMED_GRAPHS",
]


def _norm_edges(edges: Iterable[Sequence[int]]) -> FrozenSet[Tuple[int, int]]:
    out = set()
    for e in edges:
        u, v = (int(x) for x in e)
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        edges = _norm_edges(self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for {self.n} vertices")
        object.__setattr__(self, "edges", edges)
        adj = [0] * self.n
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(adj))

    @property
    def adj(self) -> Tuple[int, ...]:
        """Neighbourhood bitmasks."""
        return self._adj  # type: ignore[attr-defined]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return frozenset(i for i in range(self.n) if self.adj[v] >> i & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted((self.degree(v) for v in range(self.n)), reverse=True))

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def nonedges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)]

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    def weighted(self, weights: Optional[Sequence[int]] = None) -> "WeightedGraph":
        return WeightedGraph(self, tuple(weights) if weights is not None else (1,) * self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights) if self.weights else (1,) * self.graph.n
        if len(w) != self.graph.n:
            raise ValueError("one weight per vertex required")
        if any(x < 1 for x in w):
            raise ValueError("vertex weights must be positive integers")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def mask_weight(self, mask: int) -> int:
        return sum(self.weights[v] for v in range(self.n) if mask >> v & 1)

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["weights"] = list(self.weights)
        return out


def as_weighted(g) -> WeightedGraph:
    if isinstance(g, WeightedGraph):
        return g
    if isinstance(g, Graph):
        return g.weighted()
    raise TypeError(f"expected Graph or WeightedGraph, got {type(g).__name__}")


def _graph(g) -> Graph:
    return g.graph if isinstance(g, WeightedGraph) else g


# ---------------------------------------------------------------------------
# stable sets and covers
# ---------------------------------------------------------------------------

def _stable_masks(g: Graph) -> List[int]:
    """Nonempty stable sets as bitmasks."""
    adj = g.adj
    out: List[int] = []

    def rec(v: int, mask: int, forbidden: int):
        if v == g.n:
            if mask:
                out.append(mask)
            return
        rec(v + 1, mask, forbidden)
        if not forbidden >> v & 1:
            rec(v + 1, mask | 1 << v, forbidden | adj[v])

    rec(0, 0, 0)
    return out


def _mask_to_set(mask: int) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _set_key(s: FrozenSet[int]):
    return (len(s), sorted(s))


def stable_sets(g) -> List[FrozenSet[int]]:
    """All nonempty stable sets, ordered by size then lexicographically."""
    g = _graph(g)
    return sorted((_mask_to_set(m) for m in _stable_masks(g)), key=_set_key)


def stable_set_covers(g) -> List[Tuple[FrozenSet[int], ...]]:
    """Every family of distinct stable sets whose union is the vertex set.

    Depth-first include/exclude over the stable sets, pruning once the
    remaining sets can no longer cover the uncovered vertices.
    """
    g = _graph(g)
    if g.n < 1:
        raise ValueError("stable set covers need at least one vertex")
    masks = sorted(_stable_masks(g), key=lambda m: _set_key(_mask_to_set(m)))
    full = (1 << g.n) - 1
    suffix = [0] * (len(masks) + 1)
    for i in range(len(masks) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    out = []
    chosen: List[int] = []

    def rec(i: int, covered: int):
        if covered | suffix[i] != full:
            return
        if i == len(masks):
            out.append(tuple(_mask_to_set(m) for m in chosen))
            return
        chosen.append(masks[i])
        rec(i + 1, covered | masks[i])
        chosen.pop()
        rec(i + 1, covered)

    rec(0, 0)
    return sorted(out, key=lambda c: [(_set_key(s)) for s in c])


def cover_partition(g, cover: Iterable[FrozenSet[int]]) -> Tuple[int, ...]:
    """The partition formed by the total weights of the cover's members."""
    wg = as_weighted(g)
    return tuple(sorted((sum(wg.weights[v] for v in s) for s in cover), reverse=True))


def total_stability(g) -> int:
    g = _graph(g)
    return len(_stable_masks(g)) - g.n


# ---------------------------------------------------------------------------
# deletion-contraction children
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DelconChildren:
    """The five graphs of the deletion-contraction relation for a nonedge ``vw``.

    ``contraction_map`` sends each old vertex to its index in ``contracted``;
    ``v`` and ``w`` both map to the merged vertex, which is last.
    """

    contracted: WeightedGraph
    added: WeightedGraph
    first: WeightedGraph
    second: WeightedGraph
    star: WeightedGraph
    contraction_map: Tuple[int, ...]

    def as_tuple(self) -> Tuple[WeightedGraph, ...]:
        return (self.contracted, self.added, self.first, self.second, self.star)


def delcon_children(g, v: int, w: int) -> DelconChildren:
    wg = as_weighted(g)
    G, om = wg.graph, wg.weights
    n = G.n
    if v == w:
        raise ValueError("delcon_children needs two distinct vertices")
    if not (0 <= v < n and 0 <= w < n):
        raise ValueError("vertex out of range")
    if G.has_edge(v, w):
        raise ValueError(f"{(v, w)} is an edge; deletion-contraction needs a nonedge")
    merged = om[v] + om[w]
    Nv, Nw = G.neighbors(v), G.neighbors(w)
    E = set(G.edges)

    keep = [u for u in range(n) if u not in (v, w)]
    cmap = [0] * n
    for i, u in enumerate(keep):
        cmap[u] = i
    z = len(keep)
    cmap[v] = cmap[w] = z
    c_edges = {(cmap[a], cmap[b]) for a, b in E}
    contracted = WeightedGraph(Graph(z + 1, c_edges), tuple(om[u] for u in keep) + (merged,))

    added = WeightedGraph(Graph(n, E | {(v, w)}), om)

    e1 = E | {(v, w)} | {(v, u) for u in Nw}
    w1 = list(om)
    w1[v] = merged
    first = WeightedGraph(Graph(n, e1), tuple(w1))

    e2 = E | {(v, w)} | {(w, u) for u in Nv}
    w2 = list(om)
    w2[w] = merged
    second = WeightedGraph(Graph(n, e2), tuple(w2))

    zs = n
    es = E | {(v, w), (v, zs), (w, zs)} | {(zs, u) for u in Nv | Nw}
    star = WeightedGraph(Graph(n + 1, es), om + (merged,))
    return DelconChildren(contracted, added, first, second, star, tuple(cmap))


# ---------------------------------------------------------------------------
# constructions and predicates
# ---------------------------------------------------------------------------

def clan_graph(g, alpha: Sequence[int]) -> Graph:
    """Blow each vertex ``v`` up into a clique of ``alpha[v]`` vertices.

    Vertex ``(v, i)`` gets index ``sum(alpha[:v]) + i``.
    """
    G = _graph(g)
    if len(alpha) != G.n or any(a < 1 for a in alpha):
        raise ValueError("alpha must give a positive size for every vertex")
    offset = [0]
    for a in alpha:
        offset.append(offset[-1] + a)
    edges = set()
    for v in range(G.n):
        for i, j in itertools.combinations(range(alpha[v]), 2):
            edges.add((offset[v] + i, offset[v] + j))
    for u, v in G.edges:
        for i in range(alpha[u]):
            for j in range(alpha[v]):
                edges.add((offset[u] + i, offset[v] + j))
    return Graph(offset[-1], edges)


def is_claw_free(g) -> bool:
    G = _graph(g)
    for quad in itertools.combinations(range(G.n), 4):
        for c in quad:
            leaves = [x for x in quad if x != c]
            if all(G.has_edge(c, x) for x in leaves) and not any(
                G.has_edge(a, b) for a, b in itertools.combinations(leaves, 2)
            ):
                return False
    return True


# Unit-weight fixtures.  The example pairs are read off the drawn figures
# (labels there are 1-based; here 0-based).
_EX_PAIRS = {
    # bowtie: two triangles sharing the centre vertex
    "ex1G": (5, [(2, 0), (2, 3), (0, 3), (2, 4), (2, 1), (4, 1)]),
    # K4 minus the edge {0,2}, pendant 4 on vertex 2
    "ex1H": (5, [(3, 1), (3, 2), (1, 0), (1, 2), (0, 3), (2, 4)]),
    "ex2G": (6, [(0, 3), (0, 5), (1, 5), (2, 4), (2, 5), (3, 5)]),
    "ex2H": (6, [(0, 2), (0, 3), (0, 5), (1, 5), (2, 4), (2, 5)]),
    "ex3G": (8, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 7), (4, 7), (5, 1), (5, 2),
                 (6, 0), (6, 2), (6, 3), (6, 4), (6, 5)]),
    "ex3H": (8, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 7), (4, 7), (5, 0), (5, 1),
                 (5, 2), (5, 3), (6, 2), (6, 4), (6, 5)]),
}

# Table of small graphs: star P3, triangle, 4-cycle, K4 minus an edge, claw.
_TABLE1 = {
    1: (3, [(0, 1), (0, 2)]),
    2: (3, [(0, 1), (0, 2), (1, 2)]),
    3: (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    4: (4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
    5: (4, [(0, 1), (0, 2), (0, 3)]),
}

NAMED_GRAPHS = ("path:n", "cycle:n", "complete:n", "empty:n", "star:n", "claw",
                "table1:k", "ex1G", "ex1H", "ex2G", "ex2H", "ex3G", "ex3H")


def named_graph(spec: str) -> WeightedGraph:
    """Build a unit-weight fixture from a name such as ``"path:4"`` or ``"ex1G"``."""
    spec = spec.strip()
    if spec in _EX_PAIRS:
        n, edges = _EX_PAIRS[spec]
        return Graph(n, edges).weighted()
    if spec == "claw":
        return Graph(4, [(0, 1), (0, 2), (0, 3)]).weighted()
    kind, _, arg = spec.partition(":")
    try:
        k = int(arg)
    except ValueError:
        raise ValueError(f"unknown graph spec {spec!r}") from None
    if k < 0:
        raise ValueError(f"negative size in {spec!r}")
    if kind == "path":
        return Graph(k, [(i, i + 1) for i in range(k - 1)]).weighted()
    if kind == "cycle":
        if k < 3:
            raise ValueError("cycles need at least 3 vertices")
        return Graph(k, [(i, (i + 1) % k) for i in range(k)]).weighted()
    if kind == "complete":
        return Graph(k, itertools.combinations(range(k), 2)).weighted()
    if kind == "empty":
        return Graph(k).weighted()
    if kind == "star":
        return Graph(k, [(0, i) for i in range(1, k)]).weighted()
    if kind == "table1":
        if k not in _TABLE1:
            raise ValueError("table1 rows are numbered 1..5")
        n, edges = _TABLE1[k]
        return Graph(n, edges).weighted()
    raise ValueError(f"unknown graph spec {spec!r}")


def parse_graph(text: str) -> WeightedGraph:
    """Parse inline JSON, ``@path`` to a JSON file, or a fixture name."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    if text.startswith("{"):
        obj = json.loads(text)
        g = Graph(int(obj["n"]), [tuple(e) for e in obj.get("edges", [])])
        return g.weighted(obj.get("weights"))
    if text.startswith("name:"):
        text = text[5:]
    return named_graph(text)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def _refine(G: Graph, colors: List[int]) -> List[int]:
    """Colour refinement to a stable partition; colours are canonical ranks."""
    n = G.n
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in range(n) if G.adj[v] >> u & 1)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g) -> Tuple:
    """Canonical labeling invariant of a weighted graph (individualise-refine search).

    Intended for the small graphs used here (up to about 10 vertices); the
    search is exhaustive over the refinement tree.
    """
    wg = as_weighted(g)
    G = wg.graph
    n = G.n
    if n == 0:
        return (0, (), ())
    base = sorted(set(wg.weights))
    colors = _refine(G, [base.index(w) for w in wg.weights])
    best = None

    def encode(order: List[int]):
        pos = {v: i for i, v in enumerate(order)}
        edges = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in G.edges))
        return (n, tuple(wg.weights[v] for v in order), edges)

    def search(cols: List[int]):
        nonlocal best
        if len(set(cols)) == n:
            order = sorted(range(n), key=lambda v: cols[v])
            code = encode(order)
            if best is None or code < best:
                best = code
            return
        # first smallest non-singleton cell
        counts: Dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if cols[v] == target:
                ind = [2 * c + (1 if c >= target else 0) for c in cols]
                ind[v] = 2 * target
                search(_refine(G, ind))

    search(colors)
    return best


def is_isomorphic(g, h) -> bool:
    if _graph(g).n != _graph(h).n:
        return False
    return canonical_form(g) == canonical_form(h)


def _tree_code(G: Graph) -> str:
    """AHU string of a tree, rooted at its centre(s)."""
    n = G.n
    if n <= 2:
        return "(" * n + ")" * n
    deg = [G.degree(v) for v in range(n)]
    leaves = [v for v in range(n) if deg[v] == 1]
    remaining = n
    removed = [False] * n
    while remaining > 2:
        nxt = []
        for v in leaves:
            removed[v] = True
            remaining -= 1
            for u in G.neighbors(v):
                if not removed[u]:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        leaves = nxt
    centres = [v for v in range(n) if not removed[v]]

    def code(v, parent):
        return "(" + "".join(sorted(code(u, v) for u in G.neighbors(v) if u != parent)) + ")"

    return min(code(c, -1) for c in centres)


def trees_up_to(n: int, min_n: int = 1) -> List[Graph]:
    """One representative of each isomorphism class of trees with ``min_n..n`` vertices."""
    if n > 10:
        raise ValueError("trees_up_to is limited to 10 vertices")
    levels = [[Graph(1)]]
    for size in range(2, n + 1):
        seen: Dict[str, Graph] = {}
        for t in levels[-1]:
            for v in range(t.n):
                child = Graph(size, set(t.edges) | {(v, size - 1)})
                seen.setdefault(_tree_code(child), child)
        levels.append([seen[k] for k in sorted(seen)])
    return [t for level in levels[max(min_n, 1) - 1:] for t in level]


def all_graphs(n: int) -> List[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices."""
    if n > 6:
        raise ValueError("all_graphs is limited to 6 vertices")
    pairs = list(itertools.combinations(range(n), 2))
    seen: Dict[Tuple, Graph] = {}
    for bits in range(1 << len(pairs)):
        g = Graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
        seen.setdefault(canonical_form(g), g)
    return sorted(seen.values(), key=lambda g: (len(g.edges), g.sorted_edges()))


def random_graph(rng, n: int, p: float = 0.5, max_weight: int = 1) -> WeightedGraph:
    """Random weighted graph from a :class:`random.Random`-like generator."""
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    weights = tuple(rng.randint(1, max_weight) for _ in range(n))
    return Graph(n, edges).weighted(weights)
