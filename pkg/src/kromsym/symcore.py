"""Exact truncated symmetric-function arithmetic.

Every series is stored in the monomial basis: a map from partitions to
exact rational coefficients, valid through a degree cap.  All other bases
are defined by their monomial expansions, so basis changes reduce to
per-degree linear algebra over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Partition",
    "TruncatedSeries",
    "CLASSICAL_BASES",
    "partitions",
    "partitions_up_to",
    "canonical_key",
    "generator",
    "multiply",
    "convert_classical",
    "from_basis",
    "hall_inner",
    "expand_filtered",
    "solve_linear",
    "invert_matrix",
    "NonTriangularError",
    "format_coeff",
    "parse_coeff",
]

CLASSICAL_BASES = ("m", "maug", "e", "h", "p", "s")


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Subclasses ``tuple`` so partitions hash and compare equal to the plain
    tuples used in hot loops.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Sort an arbitrary multiset of positive parts into a partition."""
        return cls(sorted((p for p in parts if p), reverse=True))

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def mult(self, j: int) -> int:
        return self.count(j)

    def transpose(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def contains(self, mu: Sequence[int]) -> bool:
        """Whether the Young diagram of ``mu`` fits inside this one."""
        if len(mu) > len(self):
            return False
        return all(m <= p for m, p in zip(mu, self))

    def aug_factor(self) -> int:
        """Product of factorials of part multiplicities."""
        return prod(factorial(self.count(j)) for j in set(self))

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


@lru_cache(maxsize=None)
def _partitions(n: int, maxpart: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> List[Partition]:
    """Partitions of ``n`` in descending lexicographic order."""
    if n < 0:
        return []
    return [Partition(p) for p in _partitions(n, n)]


def partitions_up_to(d: int) -> List[Partition]:
    """All partitions of size at most ``d`` in canonical term order."""
    return [lam for n in range(d + 1) for lam in partitions(n)]


def canonical_key(lam: Sequence[int]):
    """Sort key: ascending size, then descending lexicographic on parts."""
    return (sum(lam), tuple(-p for p in lam), -len(lam))


def format_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_coeff(s) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class TruncatedSeries:
    """Symmetric series in monomial form, known through degree ``cap``.

    ``exact`` means the series has no terms above ``cap`` at all (it is a
    genuine bounded-degree symmetric function).  Otherwise terms above the
    cap are unknown and have been dropped.
    """

    cap: int
    terms: Dict[Partition, Fraction] = field(default_factory=dict)
    exact: bool = False

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("degree cap must be nonnegative")
        clean: Dict[Partition, Fraction] = {}
        for lam, c in self.terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if sum(lam) > self.cap:
                if self.exact:
                    raise ValueError(f"exact series has term {lam} above cap {self.cap}")
                continue
            clean[lam] = c
        object.__setattr__(self, "terms", clean)

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, cap: int, exact: bool = True) -> "TruncatedSeries":
        return cls(cap, {}, exact)

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls(cap, {Partition(): Fraction(1)}, True)

    # -- queries ------------------------------------------------------
    def __getitem__(self, lam: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def __iter__(self) -> Iterator[Partition]:
        return iter(sorted(self.terms, key=canonical_key))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> List[Tuple[Partition, Fraction]]:
        return [(lam, self.terms[lam]) for lam in self]

    def degrees(self) -> List[int]:
        return sorted({sum(lam) for lam in self.terms})

    def min_degree(self) -> Optional[int]:
        return min((sum(lam) for lam in self.terms), default=None)

    def max_degree(self) -> Optional[int]:
        return max((sum(lam) for lam in self.terms), default=None)

    def degree_part(self, d: int) -> Dict[Partition, Fraction]:
        return {lam: c for lam, c in self.terms.items() if sum(lam) == d}

    def homogeneous(self, d: int) -> "TruncatedSeries":
        """The degree-``d`` component as an exact series."""
        if d > self.cap:
            raise ValueError(f"degree {d} is above the cap {self.cap}")
        return TruncatedSeries(d, self.degree_part(d), True)

    def truncate(self, cap: int) -> "TruncatedSeries":
        if cap >= self.cap:
            return self
        exact = self.exact and (self.max_degree() or 0) <= cap
        return TruncatedSeries(cap, {l: c for l, c in self.terms.items() if sum(l) <= cap}, exact)

    def same_terms(self, other: "TruncatedSeries", cap: Optional[int] = None) -> bool:
        """Compare coefficients through ``cap`` (default: the smaller cap)."""
        if cap is None:
            cap = min(self.cap, other.cap)
        a = {l: c for l, c in self.terms.items() if sum(l) <= cap}
        b = {l: c for l, c in other.terms.items() if sum(l) <= cap}
        return a == b

    # -- arithmetic ---------------------------------------------------
    def _joint_cap(self, other: "TruncatedSeries") -> Tuple[int, bool]:
        if self.exact and other.exact:
            return max(self.cap, other.cap), True
        caps = [s.cap for s in (self, other) if not s.exact]
        return min(caps), False

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap, exact = self._joint_cap(other)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, 0) + c
        return TruncatedSeries(cap, terms if exact else _below(terms, cap), exact)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.cap, {l: -c for l, c in self.terms.items()}, self.exact)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.cap, {l: c * v for l, v in self.terms.items()}, self.exact)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {
            "degreeCap": self.cap,
            "exact": self.exact,
            "terms": [{"partition": list(l), "coeff": format_coeff(c)} for l, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TruncatedSeries":
        terms = {Partition(t["partition"]): parse_coeff(t["coeff"]) for t in obj["terms"]}
        return cls(int(obj["degreeCap"]), terms, bool(obj["exact"]))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{format_coeff(c)}*m{l!r}" for l, c in self.items())
        tail = "" if self.exact else f" + O(deg>{self.cap})"
        return f"<{body}{tail}>"


def _below(terms, cap):
    return {l: c for l, c in terms.items() if sum(l) <= cap}


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

def _splits(nu: Tuple[int, ...]):
    """All componentwise splittings nu = a + b of an exponent vector."""
    return itertools.product(*(range(k + 1) for k in nu))


def _sorted_key(vec) -> Tuple[int, ...]:
    return tuple(sorted((v for v in vec if v), reverse=True))


def multiply(f: TruncatedSeries, g: TruncatedSeries, cap: Optional[int] = None) -> TruncatedSeries:
    """Product of two series, truncated at the joint cap.

    Symmetry means the coefficient of ``m_nu`` in ``f*g`` is the coefficient
    of the single monomial ``x^nu``; it is collected by splitting ``nu``
    componentwise into exponent vectors for ``f`` and ``g``.
    """
    if f.exact and g.exact:
        natural = (f.max_degree() or 0) + (g.max_degree() or 0)
        out_cap = natural if cap is None else cap
        exact = out_cap >= natural
        out_cap = max(out_cap, 0)
    else:
        out_cap = min(s.cap for s in (f, g) if not s.exact)
        if cap is not None:
            out_cap = min(out_cap, cap)
        exact = False
    if not f.terms or not g.terms:
        return TruncatedSeries(out_cap, {}, exact)
    lo = f.min_degree() + g.min_degree()
    hi = min(out_cap, f.max_degree() + g.max_degree())
    ft, gt = f.terms, g.terms
    out: Dict[Partition, Fraction] = {}
    for d in range(lo, hi + 1):
        for nu in _partitions(d, d):
            total = Fraction(0)
            for a in _splits(nu):
                ca = ft.get(_sorted_key(a))
                if ca is None:
                    continue
                cb = gt.get(_sorted_key(x - y for x, y in zip(nu, a)))
                if cb is not None:
                    total += ca * cb
            if total:
                out[Partition(nu)] = total
    return TruncatedSeries(out_cap, out, exact)


# ---------------------------------------------------------------------------
# classical generators
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _kostka(shape: Tuple[int, ...], content: Tuple[int, ...]) -> int:
    """Number of semistandard tableaux of ``shape`` with the given content.

    The cells holding the largest letter form a horizontal strip; peel it
    off and recurse.
    """
    if not content:
        return 1 if not shape else 0
    k = content[-1]
    if sum(shape) != sum(content):
        return 0
    total = 0
    for inner in _horizontal_strips(shape, k):
        total += _kostka(inner, content[:-1])
    return total


def _horizontal_strips(shape: Tuple[int, ...], k: int) -> Iterator[Tuple[int, ...]]:
    """Partitions ``nu`` with shape/nu a horizontal strip of exactly ``k`` cells."""
    n = len(shape)

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                yield tuple(p for p in acc if p)
            return
        lower = shape[i + 1] if i + 1 < n else 0
        for nu_i in range(shape[i], lower - 1, -1):
            removed = shape[i] - nu_i
            if removed > remaining:
                break
            yield from rec(i + 1, remaining - removed, acc + [nu_i])

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def _classical_mform(basis: str, lam: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    n = sum(lam)
    if basis == "m":
        out = {lam: Fraction(1)}
    elif basis == "maug":
        out = {lam: Fraction(Partition(lam).aug_factor())}
    elif basis == "s":
        out = {mu: Fraction(_kostka(lam, mu)) for mu in _partitions(n, n)}
    elif basis in ("e", "h", "p"):
        one_row = {
            "e": lambda k: {(1,) * k: Fraction(1)},
            "h": lambda k: {mu: Fraction(1) for mu in _partitions(k, k)},
            "p": lambda k: {(k,): Fraction(1)},
        }[basis]
        acc = TruncatedSeries(0, {(): 1}, True)
        for part in lam:
            acc = multiply(acc, TruncatedSeries(part, one_row(part), True))
        out = dict(acc.terms)
    else:
        raise ValueError(f"not a classical basis: {basis!r}")
    return tuple((k, v) for k, v in out.items() if v)


def generator(basis: str, lam: Sequence[int], cap: int) -> TruncatedSeries:
    """Monomial form of a classical basis element ``b_lam`` at cap ``cap``.

    ``basis`` is one of ``m, maug, e, h, p, s``; the K-theoretic families
    live in :mod:`kromsym.kbases`.
    """
    if basis not in CLASSICAL_BASES:
        raise ValueError(f"{basis!r} is not a classical basis; use kromsym.kbases for K-theoretic families")
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    lam = Partition(lam)
    if lam.size() > cap:
        return TruncatedSeries(cap, {}, False)
    return TruncatedSeries(cap, dict(_classical_mform(basis, tuple(lam))), True)


def from_basis(coeffs: Mapping[Sequence[int], object], family: Callable[[Partition, int], TruncatedSeries],
               cap: int) -> TruncatedSeries:
    """Sum ``c_lam * family(lam, cap)`` over the given coefficients."""
    acc = TruncatedSeries(cap, {}, True)
    for lam, c in coeffs.items():
        if c:
            acc = acc + family(Partition(lam), cap).scale(c)
    return acc


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve ``x @ rows = rhs`` exactly for square, nonsingular ``rows``.

    Gauss-Jordan over :class:`fractions.Fraction`; raises
    :class:`ZeroDivisionError` on a singular system.
    """
    n = len(rows)
    # transpose: unknown x_i multiplies row i, so column i of the system
    a = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        if pv != 1:
            a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                rr, cr = a[r], a[col]
                a[r] = [x - f * y for x, y in zip(rr, cr)]
    return [a[i][n] for i in range(n)]


def invert_matrix(mat: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(mat)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        if pv != 1:
            a[col] = [v / pv for v in a[col]]
        cr = a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], cr)]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def _inverse_matrix(basis: str, d: int):
    """Inverse of the degree-``d`` transition matrix from ``basis`` to m.

    Row ``i`` of the transition matrix is the m-expansion of the ``i``-th
    basis element, so coefficients are recovered as ``c = f @ inverse``.
    """
    parts = _partitions(d, d)
    idx = {p: i for i, p in enumerate(parts)}
    n = len(parts)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i, lam in enumerate(parts):
        for mu, c in _classical_mform(basis, lam):
            mat[i][idx[mu]] = c
    return parts, invert_matrix(mat)


def convert_classical(f: TruncatedSeries, target: str) -> Dict[Partition, Fraction]:
    """Coefficients of ``f`` in a classical basis, for every degree through the cap."""
    if target not in CLASSICAL_BASES:
        raise ValueError(f"{target!r} is not a classical basis")
    out: Dict[Partition, Fraction] = {}
    for d in range(f.cap + 1):
        part = f.degree_part(d)
        if not part:
            continue
        try:
            parts, inv = _inverse_matrix(target, d)
        except ZeroDivisionError as exc:  # pragma: no cover - would be a bug
            raise ArithmeticError(f"singular {target}-basis transition matrix in degree {d}") from exc
        for i, lam in enumerate(parts):
            c = sum((part.get(mu, 0) * inv[j][i] for j, mu in enumerate(parts) if mu in part), Fraction(0))
            if c:
                out[Partition(lam)] = c
    return dict(sorted(out.items(), key=lambda kv: canonical_key(kv[0])))


def hall_inner(f: TruncatedSeries, g: TruncatedSeries) -> Fraction:
    """Hall inner product, with ``<h_lam, m_mu> = delta``.

    At least one operand must be exact, and the other must be known through
    the exact operand's top degree.
    """
    if not f.exact and not g.exact:
        raise ValueError("hall_inner needs at least one exact operand")
    if not f.exact:
        f, g = g, f
    top = f.max_degree() or 0
    if not g.exact and g.cap < top:
        raise ValueError(f"inexact operand known only through degree {g.cap}, need {top}")
    hcoef = convert_classical(f.truncate(top) if f.cap > top else f, "h")
    return sum((c * g[lam] for lam, c in hcoef.items()), Fraction(0))


# ---------------------------------------------------------------------------
# filtered (lowest-degree triangular) expansion
# ---------------------------------------------------------------------------

class NonTriangularError(ArithmeticError):
    """A family failed to be triangular with respect to degree."""


def expand_filtered(f: TruncatedSeries, family: Callable[[Partition, int], TruncatedSeries],
                    cap: Optional[int] = None) -> Dict[Partition, Fraction]:
    """Expand ``f`` in a degree-filtered family, layer by layer.

    Each family member's lowest-degree part must be homogeneous of degree
    ``|lam|``, and those parts must be independent within each degree.  The
    returned coefficients are exact for every ``|lam| <= cap``.
    """
    if cap is None:
        cap = f.cap
    if cap > f.cap:
        raise ValueError(f"series known only through degree {f.cap}, asked for {cap}")
    remainder = f.truncate(cap)
    remainder = TruncatedSeries(cap, remainder.terms, False)
    out: Dict[Partition, Fraction] = {}
    for d in range(cap + 1):
        low = [lam for lam in remainder.terms if sum(lam) < d]
        if low:
            raise NonTriangularError(f"nonzero remainder below layer {d}: {sorted(low, key=canonical_key)}")
        layer = remainder.degree_part(d)
        if not layer:
            continue
        lams = partitions(d)
        members = [family(lam, cap) for lam in lams]
        rows = []
        for lam, b in zip(lams, members):
            below = [mu for mu in b.terms if sum(mu) < d]
            if below:
                raise NonTriangularError(f"family member {lam} has terms below degree {d}")
            rows.append([b[mu] for mu in lams])
        try:
            coeffs = solve_linear(rows, [layer.get(mu, Fraction(0)) for mu in lams])
        except ZeroDivisionError as exc:
            raise NonTriangularError(f"lowest parts in degree {d} are dependent") from exc
        for lam, b, c in zip(lams, members, coeffs):
            if c:
                out[lam] = c
                remainder = remainder - b.scale(c)
    return dict(sorted(out.items(), key=lambda kv: canonical_key(kv[0])))
