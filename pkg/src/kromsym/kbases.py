"""K-theoretic basis families, all realized in monomial form.

* ``groth_s``: symmetric Grothendieck functions via set-valued tableaux,
  signed by ``(-1)^(|T| - |lam|)`` so the lowest part is ``s_lam``.
* ``dual_groth_s``: dual Grothendieck functions via the flagged
  Jacobi-Trudi sum, exact of degree at most ``|lam|``.
* ``k_monomial``: Kromatic function of the weighted complete graph ``K_lam``.
* ``k_elem_tableau`` / ``k_elem_graph`` / ``k_power``: products of one-part
  members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .symcore import (
    CLASSICAL_BASES,
    Partition,
    TruncatedSeries,
    _horizontal_strips,
    _partitions,
    generator,
    multiply,
)

__all__ = [
    "SetValuedTableau",
    "enumerate_svt",
    "groth_s",
    "dual_groth_s",
    "dual_groth_h_expansion",
    "k_monomial",
    "k_elem_tableau",
    "k_elem_graph",
    "k_power",
    "stirling2",
    "surjections",
    "multichoose",
    "BASIS_IDS",
    "family",
]


@dataclass(frozen=True)
class SetValuedTableau:
    shape: Partition
    rows: Tuple[Tuple[frozenset, ...], ...]

    @property
    def total_size(self) -> int:
        return sum(len(c) for row in self.rows for c in row)

    def content(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for row in self.rows:
            for cell in row:
                for x in cell:
                    out[x] = out.get(x, 0) + 1
        return out

    def is_semistandard(self) -> bool:
        for i, row in enumerate(self.rows):
            for j, cell in enumerate(row):
                if not cell:
                    return False
                if j + 1 < len(row) and max(cell) > min(row[j + 1]):
                    return False
                if i + 1 < len(self.rows) and j < len(self.rows[i + 1]) and max(cell) >= min(self.rows[i + 1][j]):
                    return False
        return True


def enumerate_svt(lam: Sequence[int], max_entry: int, max_size: int) -> List[SetValuedTableau]:
    """Semistandard set-valued tableaux of shape ``lam``, entries in ``[max_entry]``, ``|T| <= max_size``.

    Cells are filled in row-reading order; a cell's minimum is bounded below
    by its left neighbour's maximum and strictly by the maximum above it.
    """
    lam = Partition(lam)
    cells = [(i, j) for i, r in enumerate(lam) for j in range(r)]
    if not cells:
        return [SetValuedTableau(lam, ())]
    if max_size < len(cells):
        return []
    out = []
    fill: Dict[Tuple[int, int], Tuple[int, ...]] = {}

    def rec(k: int, budget: int):
        if k == len(cells):
            rows = tuple(tuple(frozenset(fill[(i, j)]) for j in range(r)) for i, r in enumerate(lam))
            out.append(SetValuedTableau(lam, rows))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, fill[(i, j - 1)][-1])
        if i > 0:
            lo = max(lo, fill[(i - 1, j)][-1] + 1)
        # each later cell needs at least one entry
        spare = budget - (len(cells) - k - 1)
        for size in range(1, spare + 1):
            for subset in itertools.combinations(range(lo, max_entry + 1), size):
                fill[(i, j)] = subset
                rec(k + 1, budget - size)
        fill.pop((i, j), None)

    rec(0, max_size)
    return out


@lru_cache(maxsize=None)
def _svt_count(shape: Tuple[int, ...], content: Tuple[int, ...]) -> int:
    """Number of set-valued tableaux of ``shape`` whose letter ``i`` occurs ``content[i-1]`` times.

    The largest letter ``k`` sits at the end of each cell containing it.
    Cells equal to ``{k}`` form a horizontal strip ``shape/nu``; the other
    cells containing ``k`` are row-ends of ``nu`` with nothing below them in
    ``shape``, and any subset of those may receive ``k``.
    """
    if not content:
        return 1 if not shape else 0
    if sum(content) < sum(shape):
        return 0
    k = content[-1]
    total = 0
    for t in range(min(k, sum(shape)) + 1):
        for nu in _horizontal_strips(shape, t):
            eligible = 0
            for i, p in enumerate(nu):
                below = shape[i + 1] if i + 1 < len(shape) else 0
                if below < p:
                    eligible += 1
            extra = k - t
            if extra > eligible:
                continue
            sub = _svt_count(nu, content[:-1])
            if sub:
                total += sub * comb(eligible, extra)
    return total


@lru_cache(maxsize=None)
def _groth_terms(lam: Tuple[int, ...], cap: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    n = sum(lam)
    out = []
    for d in range(n, cap + 1):
        for nu in _partitions(d, d):
            c = _svt_count(lam, nu)
            if c:
                out.append((nu, c if (d - n) % 2 == 0 else -c))
    return tuple(out)


def groth_s(lam: Sequence[int], cap: int) -> TruncatedSeries:
    """Symmetric Grothendieck function of shape ``lam``, truncated at ``cap``."""
    lam = Partition(lam)
    if cap < lam.size():
        return TruncatedSeries(cap, {}, False)
    return TruncatedSeries(cap, dict(_groth_terms(tuple(lam), cap)), False)


def multichoose(n: int, k: int) -> int:
    """Number of ``k``-element multisets drawn from ``n`` types."""
    if k == 0:
        return 1
    if n <= 0:
        return 0
    return comb(n + k - 1, k)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def dual_groth_h_expansion(lam: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Dual Grothendieck function in the h-basis, as (partition, integer) pairs.

    Sum over permutations ``pi`` of ``S_k`` (``k = len(lam)``) of
    ``sgn(pi) * prod_i sum_l multichoose(i-1, l) h_{lam_i - i + pi(i) - l}``.
    """
    lam = tuple(lam)
    k = len(lam)
    acc: Dict[Tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(1, k + 1)):
        tops = [lam[i - 1] - i + perm[i - 1] for i in range(1, k + 1)]
        if min(tops, default=0) < 0:
            continue
        sign = _perm_sign(perm)
        choices = []
        for i, top in enumerate(tops, start=1):
            row = [(top - l, multichoose(i - 1, l)) for l in range(top + 1)]
            choices.append([(deg, w) for deg, w in row if w])
        for combo in itertools.product(*choices):
            weight = sign
            for _, w in combo:
                weight *= w
            key = tuple(sorted((deg for deg, _ in combo if deg > 0), reverse=True))
            acc[key] = acc.get(key, 0) + weight
    return tuple(sorted(((k_, v) for k_, v in acc.items() if v), key=lambda kv: (sum(kv[0]), kv[0])))


def dual_groth_s(lam: Sequence[int]) -> TruncatedSeries:
    """Dual symmetric Grothendieck function, exact with cap ``|lam|``."""
    lam = Partition(lam)
    n = lam.size()
    acc = TruncatedSeries(n, {}, True)
    for mu, c in dual_groth_h_expansion(tuple(lam)):
        acc = acc + generator("h", mu, n).scale(c)
    return acc


def stirling2(n: int, k: int) -> int:
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def surjections(a: int, b: int) -> int:
    """Number of surjections from an ``a``-set onto a ``b``-set."""
    return factorial(b) * _stirling2(a, b)


def _multiplicities(lam: Sequence[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


@lru_cache(maxsize=None)
def _k_monomial_terms(lam: Tuple[int, ...], cap: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    r = _multiplicities(lam)
    values = sorted(r, reverse=True)
    out = []

    def rec(idx: int, budget: int, counts: List[int]):
        if idx == len(values):
            parts = []
            coeff = 1
            for v, c in zip(values, counts):
                parts += [v] * c
                coeff *= surjections(c, r[v])
            out.append((tuple(sorted(parts, reverse=True)), coeff))
            return
        v = values[idx]
        need = sum(values[j] * r[values[j]] for j in range(idx + 1, len(values)))
        c = r[v]
        while v * c + need <= budget:
            rec(idx + 1, budget - v * c, counts + [c])
            c += 1

    rec(0, cap, [])
    return tuple(sorted(out))


def k_monomial(lam: Sequence[int], cap: int) -> TruncatedSeries:
    """K-theoretic augmented monomial function: Kromatic function of ``K_lam``.

    Colors used by vertex ``v`` carry exponent ``lam_v`` and are disjoint from
    every other vertex's colors, so the coefficient of ``m_mu`` is the number
    of ways to hand the parts of ``mu`` equal to ``j`` surjectively to the
    vertices of weight ``j``.
    """
    lam = Partition(lam)
    if cap < lam.size():
        return TruncatedSeries(cap, {}, False)
    return TruncatedSeries(cap, dict(_k_monomial_terms(tuple(lam), cap)), False)


def _product(factors: List[TruncatedSeries], cap: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(cap)
    for f in factors:
        acc = multiply(acc, f, cap=cap)
    if acc.exact:
        acc = TruncatedSeries(cap, acc.terms, False) if factors else acc
    return acc


@lru_cache(maxsize=None)
def _k_elem_tableau(lam: Tuple[int, ...], cap: int) -> TruncatedSeries:
    return _product([groth_s((1,) * p, cap) for p in lam], cap)


@lru_cache(maxsize=None)
def _k_elem_graph(lam: Tuple[int, ...], cap: int) -> TruncatedSeries:
    return _product([k_monomial((1,) * p, cap).scale(Fraction(1, factorial(p))) for p in lam], cap)


@lru_cache(maxsize=None)
def _k_power(lam: Tuple[int, ...], cap: int) -> TruncatedSeries:
    def single(n):
        return TruncatedSeries(cap, {(n,) * k: 1 for k in range(1, cap // n + 1)}, False)

    return _product([single(p) for p in lam], cap)


def k_elem_tableau(lam: Sequence[int], cap: int) -> TruncatedSeries:
    """Tableau K-elementary function: product of ``groth_s(1^k)`` over parts."""
    lam = Partition(lam)
    if cap < lam.size():
        return TruncatedSeries(cap, {}, False)
    return _k_elem_tableau(tuple(lam), cap)


def k_elem_graph(lam: Sequence[int], cap: int) -> TruncatedSeries:
    """Graph K-elementary function: product of ``X(K_k) / k!`` over parts."""
    lam = Partition(lam)
    if cap < lam.size():
        return TruncatedSeries(cap, {}, False)
    return _k_elem_graph(tuple(lam), cap)


def k_power(lam, cap: int) -> TruncatedSeries:
    """Kromatic function of a single vertex of weight ``n`` (or a product over parts).

    Accepts a positive integer ``n`` or a partition.
    """
    lam = Partition((lam,)) if isinstance(lam, int) else Partition(lam)
    if cap < lam.size():
        return TruncatedSeries(cap, {}, False)
    return _k_power(tuple(lam), cap)


def _classical(basis: str) -> Callable[[Partition, int], TruncatedSeries]:
    return lambda lam, cap: generator(basis, lam, cap)


BASIS_IDS = {
    "m": "m", "maug": "mAug", "e": "e", "h": "h", "p": "p", "s": "s",
    "gs": "grothS", "gsd": "dualGrothS", "km": "kMonomial",
    "ket": "kElemTableau", "keg": "kElemGraph", "kp": "kPower",
}


def family(basis_id: str) -> Callable[[Partition, int], TruncatedSeries]:
    """Generator callback ``(lam, cap) -> series`` for a CLI basis id."""
    if basis_id in CLASSICAL_BASES:
        return _classical(basis_id)
    table = {
        "gs": groth_s,
        "gsd": lambda lam, cap: dual_groth_s(lam),
        "km": k_monomial,
        "ket": k_elem_tableau,
        "keg": k_elem_graph,
        "kp": k_power,
    }
    try:
        return table[basis_id]
    except KeyError:
        raise ValueError(f"unknown basis id {basis_id!r}; expected one of {sorted(BASIS_IDS)}") from None
