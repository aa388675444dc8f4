"""Kromatic symmetric functions of vertex-weighted graphs.

Three engines are provided and cross-checked in the tests:

* ``kromatic_direct`` counts proper set colorings with a bounded degree,
* ``kromatic_covers`` expands over stable set covers,
* ``kromatic_delcon`` runs the deletion-contraction recursion down to
  weighted complete graphs.

The covers and deletion-contraction engines return the exact, finite
expansion in the K-theoretic augmented monomial basis (basis id ``km``) as a
``{Partition: int}`` map; ``realize`` turns such a map into an m-basis
truncation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .graphs import (
    WeightedGraph,
    as_weighted,
    canonical_form,
    delcon_children,
    stable_set_covers,
    cover_partition,
    _stable_masks,
)
from .kbases import dual_groth_s, k_monomial
from .symcore import (
    Partition,
    TruncatedSeries,
    canonical_key,
    format_coeff,
    hall_inner,
    partitions_up_to,
)

__all__ = [
    "chromatic_sym",
    "kromatic_direct",
    "CoverProfile",
    "cover_profile",
    "kromatic_covers",
    "kromatic_delcon",
    "realize",
    "kromatic",
    "groth_coefficient",
    "groth_expansion",
    "max_min_part",
    "expansion_to_json",
    "ENGINES",
]

ENGINES = ("direct", "covers", "delcon")


def _weighted_stable(wg: WeightedGraph) -> Dict[int, List[int]]:
    """Stable-set bitmasks grouped by total weight."""
    by_weight: Dict[int, List[int]] = {}
    for m in _stable_masks(wg.graph):
        by_weight.setdefault(wg.mask_weight(m), []).append(m)
    return by_weight


def _sequence_counts(wg: WeightedGraph, cap: int, disjoint: bool, exact_total: bool) -> Dict[Partition, int]:
    """Count sequences of nonempty stable sets with weakly decreasing weights.

    A sequence with weights ``nu`` whose union is the vertex set is exactly a
    proper (set) coloring whose monomial is ``x^nu``, so the counts are the
    m-coefficients.  With ``disjoint`` the sets must partition the vertices.
    """
    full = (1 << wg.n) - 1
    by_weight = _weighted_stable(wg)
    weights = sorted(by_weight, reverse=True)
    out: Dict[Partition, int] = {}

    def rec(parts: List[int], budget: int, states: Dict[int, int]):
        if parts and states.get(full):
            if not exact_total or budget == 0:
                out[Partition(parts)] = states[full]
        last = parts[-1] if parts else None
        for j in weights:
            if j > budget or (last is not None and j > last):
                continue
            nxt: Dict[int, int] = {}
            for mask, cnt in states.items():
                for s in by_weight[j]:
                    if disjoint and mask & s:
                        continue
                    key = mask | s
                    nxt[key] = nxt.get(key, 0) + cnt
            if nxt:
                parts.append(j)
                rec(parts, budget - j, nxt)
                parts.pop()

    rec([], cap, {0: 1})
    return out


def chromatic_sym(g, cap: Optional[int] = None) -> TruncatedSeries:
    """Chromatic symmetric function in the m-basis.

    Homogeneous of degree ``total_weight``; exact whenever the cap reaches it.
    """
    wg = as_weighted(g)
    total = wg.total_weight
    if cap is None:
        cap = total
    if wg.n == 0:
        return TruncatedSeries.one(cap)
    if cap < total:
        return TruncatedSeries(cap, {}, False)
    terms = _sequence_counts(wg, total, disjoint=True, exact_total=True)
    return TruncatedSeries(cap, terms, True)


def kromatic_direct(g, cap: int) -> TruncatedSeries:
    """Kromatic function through degree ``cap`` by counting proper set colorings."""
    wg = as_weighted(g)
    if wg.n == 0:
        return TruncatedSeries(cap, {(): 1}, False)
    if cap < wg.total_weight:
        return TruncatedSeries(cap, {}, False)
    return TruncatedSeries(cap, _sequence_counts(wg, cap, disjoint=False, exact_total=False), False)


# ---------------------------------------------------------------------------
# stable set covers
# ---------------------------------------------------------------------------

class CoverProfile:
    """Lossless compressed form of the cover expansion.

    Inclusion-exclusion over the set ``U`` of uncovered vertices gives

        sum over covers C of y^{lambda(C)} = sum_U (-1)^{|U|} prod_j (1 + y_j)^{a_j(U)},

    where ``a_j(U)`` counts stable sets of ``G - U`` of weight ``j``.  The
    profile is the signed multiset of vectors ``a(U)``.  Since the functions
    ``prod_j z_j^{a_j}`` are linearly independent, two graphs have the same
    expansion exactly when their (cancelled) profiles agree.
    """

    def __init__(self, counts: Mapping[Tuple[int, ...], int]):
        self.counts = {a: c for a, c in counts.items() if c}
        width = max((len(a) for a in self.counts), default=0)
        self.width = width
        self.bounds = tuple(max((a[j] if j < len(a) else 0) for a in self.counts) for j in range(width))

    def __eq__(self, other):
        if not isinstance(other, CoverProfile):
            return NotImplemented
        return self._normal() == other._normal()

    def __hash__(self):
        return hash(frozenset(self._normal().items()))

    def _normal(self) -> Dict[Tuple[int, ...], int]:
        def strip(a):
            a = list(a)
            while a and a[-1] == 0:
                a.pop()
            return tuple(a)

        out: Counter = Counter()
        for a, c in self.counts.items():
            out[strip(a)] += c
        return {a: c for a, c in out.items() if c}

    def coefficient(self, lam: Sequence[int]) -> int:
        k = Counter(lam)
        if any(j < 1 or j > self.width for j in k):
            return 0
        total = 0
        for a, c in self.counts.items():
            prod = c
            for j, kj in k.items():
                prod *= comb(a[j - 1], kj)
                if not prod:
                    break
            total += prod
        return total

    def total(self) -> int:
        """Number of covers."""
        return sum(c * 2 ** sum(a) for a, c in self.counts.items())

    def terms(self, max_size: Optional[int] = None) -> Dict[Partition, int]:
        """Nonzero coefficients, optionally only for partitions of size at most ``max_size``."""
        items = list(self.counts.items())
        out: Dict[Partition, int] = {}

        def rec(j: int, size: int, mult: List[int], partial: List[int]):
            if j == 0:
                c = sum(partial)
                if c:
                    parts = []
                    for w in range(self.width, 0, -1):
                        parts += [w] * mult[w - 1]
                    out[Partition(parts)] = c
                return
            for kj in range(self.bounds[j - 1] + 1):
                if max_size is not None and size + kj * j > max_size:
                    break
                nxt = [p * comb(a[j - 1], kj) for p, (a, _) in zip(partial, items)]
                if not any(nxt):
                    break
                mult[j - 1] = kj
                rec(j - 1, size + kj * j, mult, nxt)
            mult[j - 1] = 0

        if items:
            rec(self.width, 0, [0] * self.width, [c for _, c in items])
        return dict(sorted(out.items(), key=lambda kv: canonical_key(kv[0])))


def cover_profile(g) -> CoverProfile:
    wg = as_weighted(g)
    if wg.n < 1:
        raise ValueError("cover expansion needs at least one vertex")
    masks = [(m, wg.mask_weight(m)) for m in _stable_masks(wg.graph)]
    width = max(w for _, w in masks)
    counts: Counter = Counter()
    for u in range(1 << wg.n):
        a = [0] * width
        for m, w in masks:
            if not m & u:
                a[w - 1] += 1
        counts[tuple(a)] += -1 if bin(u).count("1") % 2 else 1
    return CoverProfile(counts)


def kromatic_covers(g, method: str = "count") -> Dict[Partition, int]:
    """Exact expansion in the ``km`` basis: the multiset of cover partitions.

    ``method="enumerate"`` lists every cover explicitly; ``"count"`` uses the
    inclusion-exclusion profile and scales to far more covers.
    """
    wg = as_weighted(g)
    if method == "enumerate":
        out = Counter(Partition(cover_partition(wg, c)) for c in stable_set_covers(wg.graph))
        return dict(sorted(out.items(), key=lambda kv: canonical_key(kv[0])))
    if method == "count":
        return cover_profile(wg).terms()
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# deletion-contraction
# ---------------------------------------------------------------------------

_DELCON_MEMO: Dict[Tuple, Dict[Partition, int]] = {}


def _memo_key(wg: WeightedGraph) -> Tuple:
    if wg.n <= 8:
        return ("c",) + canonical_form(wg)
    return ("l", wg.n, wg.weights, tuple(wg.graph.sorted_edges()))


def kromatic_delcon(g, chooser: Optional[Callable[[WeightedGraph], Tuple[int, int]]] = None,
                    memo: Optional[Dict[Tuple, Dict[Partition, int]]] = None) -> Dict[Partition, int]:
    """Exact ``km`` expansion by deletion-contraction on nonedges.

    ``chooser`` picks the nonedge to split on (default: lexicographically
    smallest).  Results are memoized on canonical forms; a custom chooser
    gets a private memo unless one is passed in.
    """
    wg = as_weighted(g)
    if wg.n < 1:
        raise ValueError("deletion-contraction needs at least one vertex")
    if memo is None:
        memo = _DELCON_MEMO if chooser is None else {}

    def rec(h: WeightedGraph) -> Dict[Partition, int]:
        if h.graph.is_complete():
            return {Partition.from_parts(h.weights): 1}
        key = _memo_key(h)
        hit = memo.get(key)
        if hit is not None:
            return hit
        v, w = chooser(h) if chooser is not None else h.graph.nonedges()[0]
        acc: Counter = Counter()
        for child in delcon_children(h, v, w).as_tuple():
            acc.update(rec(child))
        result = dict(sorted(((k, c) for k, c in acc.items() if c), key=lambda kv: canonical_key(kv[0])))
        memo[key] = result
        return result

    return rec(wg)


# ---------------------------------------------------------------------------
# realization and derived quantities
# ---------------------------------------------------------------------------

def realize(expansion: Mapping[Sequence[int], int], cap: int) -> TruncatedSeries:
    """m-basis truncation at ``cap`` of a ``km`` expansion."""
    acc: Dict[Partition, int] = {}
    for lam, c in expansion.items():
        if sum(lam) > cap:
            continue
        for mu, d in k_monomial(lam, cap).terms.items():
            acc[mu] = acc.get(mu, 0) + c * d
    return TruncatedSeries(cap, acc, False)


def kromatic(g, cap: int, engine: str = "covers") -> TruncatedSeries:
    """Kromatic function through degree ``cap`` using the chosen engine."""
    wg = as_weighted(g)
    if engine == "direct":
        return kromatic_direct(wg, cap)
    if engine == "covers":
        return realize(cover_profile(wg).terms(max_size=cap), cap)
    if engine == "delcon":
        return realize(kromatic_delcon(wg), cap)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def groth_coefficient(f: TruncatedSeries, lam: Sequence[int]) -> Fraction:
    """Coefficient of the symmetric Grothendieck function ``lam`` in ``f``."""
    lam = Partition(lam)
    if f.cap < lam.size():
        raise ValueError(f"series known only through degree {f.cap}, need {lam.size()}")
    return hall_inner(dual_groth_s(lam), f)


def groth_expansion(f: TruncatedSeries) -> Dict[Partition, Fraction]:
    """All Grothendieck coefficients for partitions of size at most the cap."""
    out = {}
    for lam in partitions_up_to(f.cap):
        if lam.size() == 0:
            continue
        c = groth_coefficient(f, lam)
        if c:
            out[lam] = c
    return out


def max_min_part(g) -> int:
    """Largest possible smallest part over all cover partitions.

    Equals the minimum over vertices of the heaviest stable set through it.
    """
    wg = as_weighted(g)
    best = [0] * wg.n
    for m in _stable_masks(wg.graph):
        w = wg.mask_weight(m)
        for v in range(wg.n):
            if m >> v & 1 and w > best[v]:
                best[v] = w
    return min(best)


def expansion_to_json(expansion: Mapping[Sequence[int], object], basis: str = "km", engine: Optional[str] = None) -> dict:
    terms = [
        {"partition": list(lam), "coeff": format_coeff(c)}
        for lam, c in sorted(expansion.items(), key=lambda kv: canonical_key(kv[0]))
    ]
    out = {"expansion": {"basis": basis, "terms": terms}}
    if engine is not None:
        out["engine"] = engine
    return out
