"""Grothendieck P-tableaux, P-arrays and the sign-reversing involution on arrays.

Entries of tableaux and arrays are either :class:`PosetEntry` (an element of
the poset) or a plain positive ``int``.  Rows and columns are 0-indexed
throughout, so the integer bound "row i holds integers at most i - 1" reads
``value <= r`` for tableau row ``r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .kromatic import cover_profile, groth_coefficient, realize
from .posets import Poset, incomparability_graph, is_31_free
from .symcore import Partition, format_coeff

__all__ = [
    "PosetEntry",
    "GrothPTableau",
    "GrothPArray",
    "GuardrailError",
    "enumerate_p_tableaux",
    "enumerate_p_arrays",
    "find_flaw",
    "psi",
    "TheoremReport",
    "verify_theorem",
]

MAX_POSET = 5
MAX_SIZE = 6


class GuardrailError(ValueError):
    """Input too large for exhaustive enumeration."""


@dataclass(frozen=True, order=True)
class PosetEntry:
    elem: int

    def __repr__(self) -> str:
        return f"p{self.elem}"


Entry = Union[PosetEntry, int]


def _is_p(x) -> bool:
    return isinstance(x, PosetEntry)


def _fmt_entry(x: Entry):
    return f"p{x.elem}" if _is_p(x) else x


@dataclass(frozen=True)
class GrothPTableau:
    shape: Partition
    rows: Tuple[Tuple[Entry, ...], ...]

    @property
    def poset_part(self) -> Dict[Tuple[int, int], int]:
        return {(r, c): x.elem for r, row in enumerate(self.rows) for c, x in enumerate(row) if _is_p(x)}

    @property
    def int_part(self) -> Dict[Tuple[int, int], int]:
        return {(r, c): x for r, row in enumerate(self.rows) for c, x in enumerate(row) if not _is_p(x)}

    def inner_shape(self) -> Partition:
        return Partition.from_parts(sum(1 for x in row if _is_p(x)) for row in self.rows)

    def to_array(self) -> "GrothPArray":
        return GrothPArray(tuple(range(1, len(self.rows) + 1)), self.rows)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "rows": [[_fmt_entry(x) for x in row] for row in self.rows]}


@dataclass(frozen=True)
class GrothPArray:
    """A permutation (one-line, values ``1..k``) with left-justified rows.

    Row ``r`` has length ``lam[perm[r]-1] - perm[r] + r + 1`` and holds a
    strict chain of poset elements followed by weakly increasing integers
    bounded by ``perm[r] - 1``.
    """

    perm: Tuple[int, ...]
    rows: Tuple[Tuple[Entry, ...], ...]

    def sign(self) -> int:
        inversions = sum(1 for i, j in itertools.combinations(range(len(self.perm)), 2) if self.perm[i] > self.perm[j])
        return -1 if inversions % 2 else 1

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "rows": [[_fmt_entry(x) for x in row] for row in self.rows]}


def _check_sizes(poset: Poset, lam: Partition, max_poset: int, max_size: int):
    if poset.n < 1:
        raise ValueError("the poset must have at least one element")
    if poset.n > max_poset or lam.size() > max_size:
        raise GuardrailError(
            f"exhaustive enumeration limited to |P| <= {max_poset} and |lambda| <= {max_size}"
        )


def _chains(poset: Poset, max_len: int) -> List[List[Tuple[int, ...]]]:
    """``out[c]`` lists strict chains of length ``c`` as increasing sequences."""
    out: List[List[Tuple[int, ...]]] = [[()]]
    for c in range(1, max_len + 1):
        nxt = [ch + (p,) for ch in out[-1] for p in range(poset.n) if not ch or poset.lt(ch[-1], p)]
        out.append(nxt)
    return out


def _weak_sequences(length: int, top: int) -> List[Tuple[int, ...]]:
    if length == 0:
        return [()]
    if top < 1:
        return []
    return list(itertools.combinations_with_replacement(range(1, top + 1), length))


# ---------------------------------------------------------------------------
# tableaux
# ---------------------------------------------------------------------------

def _sub_shapes(lam: Partition) -> List[Tuple[int, ...]]:
    out = []

    def rec(i: int, prev: int, acc: List[int]):
        if i == len(lam):
            out.append(tuple(acc))
            return
        for v in range(min(prev, lam[i]), -1, -1):
            rec(i + 1, v, acc + [v])

    rec(0, lam[0] if lam else 0, [])
    return out


def _flagged_fillings(lam: Partition, mu: Sequence[int]) -> List[Tuple[Tuple[int, ...], ...]]:
    """Semistandard fillings of ``lam/mu`` with row ``r`` entries at most ``r``."""
    out = []
    k = len(lam)

    def rec(r: int, acc: List[Tuple[int, ...]]):
        if r == k:
            out.append(tuple(acc))
            return
        width = lam[r] - mu[r]
        for seq in _weak_sequences(width, r):
            ok = True
            for j, v in enumerate(seq):
                col = mu[r] + j
                if r > 0 and col >= mu[r - 1] and col < lam[r - 1]:
                    above = acc[r - 1][col - mu[r - 1]]
                    if above >= v:
                        ok = False
                        break
            if ok:
                rec(r + 1, acc + [seq])

    rec(0, [])
    return out


def _poset_fillings(poset: Poset, mu: Sequence[int]) -> List[Tuple[Tuple[int, ...], ...]]:
    """Rows are strict chains, columns never decrease, every element used."""
    chains = _chains(poset, max(mu) if mu else 0)
    out = []
    full = (1 << poset.n) - 1

    def rec(r: int, acc: List[Tuple[int, ...]], used: int):
        if r == len(mu):
            if used == full:
                out.append(tuple(acc))
            return
        for ch in chains[mu[r]]:
            if r > 0 and any(poset.lt(ch[c], acc[r - 1][c]) for c in range(mu[r])):
                continue
            mask = used
            for p in ch:
                mask |= 1 << p
            rec(r + 1, acc + [ch], mask)

    rec(0, [], 0)
    return out


def enumerate_p_tableaux(poset: Poset, lam: Sequence[int], max_poset: int = MAX_POSET,
                         max_size: int = MAX_SIZE) -> List[GrothPTableau]:
    """All Grothendieck P-tableaux of shape ``lam``.

    Built straight from the definition: a poset-filled subshape ``mu`` glued
    to a flagged semistandard filling of ``lam/mu``.
    """
    lam = Partition(lam)
    _check_sizes(poset, lam, max_poset, max_size)
    out = []
    for mu in _sub_shapes(lam):
        if sum(mu) < poset.n:
            continue
        for pf in _poset_fillings(poset, mu):
            for nf in _flagged_fillings(lam, mu):
                rows = tuple(
                    tuple(PosetEntry(p) for p in pf[r]) + nf[r] for r in range(len(lam))
                )
                out.append(GrothPTableau(lam, rows))
    return out


# ---------------------------------------------------------------------------
# arrays
# ---------------------------------------------------------------------------

def _row_lengths(lam: Partition, perm: Sequence[int]) -> List[int]:
    return [lam[p - 1] - p + r + 1 for r, p in enumerate(perm)]


def enumerate_p_arrays(poset: Poset, lam: Sequence[int], max_poset: int = MAX_POSET,
                       max_size: int = MAX_SIZE) -> List[GrothPArray]:
    """All Grothendieck P-arrays of type ``lam`` over permutations of ``1..len(lam)``.

    Permutations giving a negative row length contribute nothing (the matching
    complete homogeneous factor vanishes) and produce no arrays.
    """
    lam = Partition(lam)
    _check_sizes(poset, lam, max_poset, max_size)
    k = len(lam)
    chains = _chains(poset, max(lam) + k if lam else 0)
    full = (1 << poset.n) - 1
    out = []
    for perm in itertools.permutations(range(1, k + 1)):
        lengths = _row_lengths(lam, perm)
        if any(L < 0 for L in lengths):
            continue
        row_options = []
        for r, L in enumerate(lengths):
            opts = []
            for c in range(L + 1):
                for ch in chains[c] if c < len(chains) else []:
                    mask = 0
                    for p in ch:
                        mask |= 1 << p
                    for tail in _weak_sequences(L - c, perm[r] - 1):
                        opts.append((tuple(PosetEntry(p) for p in ch) + tail, mask))
            row_options.append(opts)
        for combo in itertools.product(*row_options):
            used = 0
            for _, m in combo:
                used |= m
            if used == full:
                out.append(GrothPArray(tuple(perm), tuple(row for row, _ in combo)))
    return out


def _is_flaw(poset: Poset, rows, r: int, c: int) -> bool:
    x = rows[r][c]
    above = rows[r - 1][c] if c < len(rows[r - 1]) else None
    if _is_p(x):
        return above is None or not _is_p(above) or poset.lt(x.elem, above.elem)
    return above is None or (not _is_p(above) and x <= above)


def find_flaw(poset: Poset, array: GrothPArray) -> Optional[Tuple[int, int]]:
    """Leftmost flawed column, bottom-most flawed row in it, as ``(row, col)``."""
    rows = array.rows
    width = max((len(row) for row in rows), default=0)
    for c in range(width):
        for r in range(len(rows) - 1, 0, -1):
            if c < len(rows[r]) and _is_flaw(poset, rows, r, c):
                return (r, c)
    return None


def psi(poset: Poset, array: GrothPArray) -> GrothPArray:
    """Swap the tails of rows ``r-1`` and ``r`` at the chosen flaw ``(r, c)``."""
    flaw = find_flaw(poset, array)
    if flaw is None:
        raise ValueError("psi needs an array with a flaw")
    r, c = flaw
    rows = list(array.rows)
    upper, lower = rows[r - 1], rows[r]
    rows[r - 1] = upper[:c] + lower[c + 1:]
    rows[r] = lower[:c + 1] + upper[c:]
    perm = list(array.perm)
    perm[r - 1], perm[r] = perm[r], perm[r - 1]
    return GrothPArray(tuple(perm), tuple(rows))


# ---------------------------------------------------------------------------
# the positivity statement
# ---------------------------------------------------------------------------

@dataclass
class TheoremReport:
    poset: Poset
    shape: Partition
    signed_sum: int
    tableau_count: int
    groth_coeff: Fraction
    is_31_free: bool
    all_equal: bool = field(init=False)

    def __post_init__(self):
        self.all_equal = self.signed_sum == self.tableau_count == self.groth_coeff

    def to_json(self) -> dict:
        return {
            "poset": self.poset.to_json(),
            "shape": list(self.shape),
            "signedSum": self.signed_sum,
            "tableauCount": self.tableau_count,
            "grothCoeff": format_coeff(self.groth_coeff),
            "is31Free": self.is_31_free,
            "allEqual": self.all_equal,
        }


def verify_theorem(poset: Poset, lam: Sequence[int]) -> TheoremReport:
    """Compute the array sum, the tableau count and the Grothendieck coefficient independently."""
    lam = Partition(lam)
    arrays = enumerate_p_arrays(poset, lam)
    signed = sum(a.sign() for a in arrays)
    count = len(enumerate_p_tableaux(poset, lam))
    g = incomparability_graph(poset)
    cap = lam.size()
    series = realize(cover_profile(g).terms(max_size=cap), cap)
    coeff = groth_coefficient(series, lam)
    return TheoremReport(poset, lam, signed, count, coeff, is_31_free(poset))
