"""Betti tables, pure diagrams, and cone functionals over k[x,y,z]/(xy,yz,xz).

The ambient ring is the quotient of a polynomial ring in three variables by
all squarefree quadratic monomials.  Over this ring every minimal free
resolution becomes linear after homological degree 2, with ranks doubling at
each step.  A table of graded Betti numbers is therefore determined by its
first three rows, and this module stores tables in two modes:

* ``canonical``: only rows 0..2 are stored; the entry at (i, j) for i >= 3 is
  derived as 2^(i-2) * entry(2, j - (i - 2)).
* ``explicit``: entries are stored literally, any row index allowed.  The
  doubling rule is then a checkable property, not a built-in, which is what a
  resolution engine needs when it reports a finite window of an infinite
  resolution.

Entries are exact rationals (fractions.Fraction).  Tables are treated as
immutable values; all operations return new tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

CANONICAL = "canonical"
EXPLICIT = "explicit"

FREE = "free"
TWO_STEP = "two_step"
TAIL = "tail"

INF = float("inf")

RationalLike = Union[int, Fraction]


class BettiTable:
    """Sparse table of rational entries indexed by (homological index, degree)."""

    __slots__ = ("_entries", "tail_mode")

    def __init__(self, entries=None, tail_mode: str = CANONICAL):
        if tail_mode not in (CANONICAL, EXPLICIT):
            raise ValueError(f"unknown tail mode: {tail_mode!r}")
        items: dict[tuple[int, int], Fraction] = {}
        if entries is None:
            pairs: Iterable = ()
        elif isinstance(entries, Mapping):
            pairs = entries.items()
        else:
            pairs = entries
        for key, value in pairs:
            i, j = key
            if not isinstance(i, int) or not isinstance(j, int):
                raise ValueError(f"table index must be a pair of ints, got {key!r}")
            if i < 0:
                raise ValueError(f"homological index must be >= 0, got {i}")
            if (i, j) in items:
                raise ValueError(f"duplicate table entry at {(i, j)}")
            q = Fraction(value)
            if q != 0:
                items[(i, j)] = q
        if tail_mode == CANONICAL:
            bad = [ij for ij in items if ij[0] >= 3]
            if bad:
                raise ValueError(f"canonical mode stores rows 0..2 only, got entries at {sorted(bad)}")
        self._entries = items
        self.tail_mode = tail_mode

    def entry(self, i: int, j: int) -> Fraction:
        """Value at (i, j), deriving rows i >= 3 from row 2 in canonical mode."""
        if i < 0:
            raise ValueError(f"homological index must be >= 0, got {i}")
        if self.tail_mode == CANONICAL and i >= 3:
            base = self._entries.get((2, j - (i - 2)), Fraction(0))
            return Fraction(2) ** (i - 2) * base
        return self._entries.get((i, j), Fraction(0))

    def support(self) -> tuple[tuple[int, int], ...]:
        """Stored nonzero positions, sorted."""
        return tuple(sorted(self._entries))

    def items(self) -> tuple[tuple[tuple[int, int], Fraction], ...]:
        return tuple(sorted(self._entries.items()))

    def row_degrees(self, i: int) -> tuple[int, ...]:
        """Degrees j with a stored nonzero entry in row i, sorted."""
        return tuple(sorted(j for (r, j) in self._entries if r == i))

    def row_total(self, i: int) -> Fraction:
        """Sum of the stored entries in row i."""
        return sum((v for (r, _), v in self._entries.items() if r == i), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._entries

    @property
    def max_row(self) -> int:
        # stored rows only; meaningful mostly in explicit mode
        return max((i for (i, _) in self._entries), default=-1)

    @property
    def min_degree(self):
        return min((j for (_, j) in self._entries), default=None)

    @property
    def max_degree(self):
        return max((j for (_, j) in self._entries), default=None)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.tail_mode == other.tail_mode and self._entries == other._entries

    def __hash__(self):
        return hash((self.tail_mode, tuple(sorted(self._entries.items()))))

    def __repr__(self):
        body = ", ".join(f"({i}, {j}): {v}" for (i, j), v in self.items())
        return f"BettiTable({{{body}}}, tail_mode={self.tail_mode!r})"


def table_arith(a: RationalLike, u: BettiTable, b: RationalLike, v: BettiTable) -> BettiTable:
    """Exact linear combination a*u + b*v of two tables in the same tail mode."""
    if u.tail_mode != v.tail_mode:
        raise ValueError("cannot combine tables with mixed tail modes")
    a = Fraction(a)
    b = Fraction(b)
    out: dict[tuple[int, int], Fraction] = {}
    for (ij, val) in u.items():
        out[ij] = a * val
    for (ij, val) in v.items():
        out[ij] = out.get(ij, Fraction(0)) + b * val
    return BettiTable(out, tail_mode=u.tail_mode)


def expand_tail(table: BettiTable, max_row: int, max_degree: int | None = None) -> BettiTable:
    """Materialize a canonical table as an explicit one through row max_row.

    Derived entries with degree beyond max_degree are dropped, which is how a
    finite resolution window of the same table would look.
    """
    if table.tail_mode != CANONICAL:
        raise ValueError("expand_tail expects a canonical table")
    out = dict(table.items())
    for (i, j), val in table.items():
        if i != 2:
            continue
        for r in range(3, max_row + 1):
            jj = j + (r - 2)
            if max_degree is not None and jj > max_degree:
                break
            out[(r, jj)] = Fraction(2) ** (r - 2) * val
    return BettiTable(out, tail_mode=EXPLICIT)


def collapse_tail(table: BettiTable) -> BettiTable:
    """Reinterpret an explicit table as canonical, keeping rows 0..2.

    Stored rows i >= 3 must agree with the doubling rule inside the stored
    window (the topmost stored row is the window boundary and is exempt on
    its upper side).  Raises ValueError on a mismatch.
    """
    if table.tail_mode == CANONICAL:
        return table
    top = table.max_row
    for (i, j) in table.support():
        if 2 <= i < top and 2 * table.entry(i, j) != table.entry(i + 1, j + 1):
            raise ValueError(f"doubling fails at ({i}, {j}); table is not a tail window")
        # every stored entry in rows >= 3 must be fed by the row below it
        if i >= 3 and 2 * table.entry(i - 1, j - 1) != table.entry(i, j):
            raise ValueError(f"doubling fails at ({i - 1}, {j - 1}); table is not a tail window")
    kept = {(i, j): v for (i, j), v in table.items() if i <= 2}
    return BettiTable(kept, tail_mode=CANONICAL)


@dataclass(frozen=True)
class DegreeSequence:
    """Strictly increasing degree sequence in one of the three admitted shapes.

    free:     (d0, inf, inf, ...)
    two_step: (d0, d1, inf, ...)
    tail:     (d0, d1, d1 + 1, d1 + 2, ...)
    """

    shape: str
    d0: int
    d1: int | None = None

    def __post_init__(self):
        if self.shape not in (FREE, TWO_STEP, TAIL):
            raise ValueError(f"unknown shape: {self.shape!r}")
        if self.shape == FREE:
            if self.d1 is not None:
                raise ValueError("free shape takes d0 only")
        else:
            if self.d1 is None:
                raise ValueError(f"{self.shape} shape needs d1")
            if not self.d0 < self.d1:
                raise ValueError(f"need d0 < d1, got ({self.d0}, {self.d1})")

    @classmethod
    def free(cls, d0: int) -> "DegreeSequence":
        return cls(FREE, d0)

    @classmethod
    def two_step(cls, d0: int, d1: int) -> "DegreeSequence":
        return cls(TWO_STEP, d0, d1)

    @classmethod
    def tail(cls, d0: int, d1: int) -> "DegreeSequence":
        return cls(TAIL, d0, d1)

    def degree(self, n: int):
        """The n-th degree d_n; missing positions read as INF."""
        if n < 0:
            raise ValueError("position must be >= 0")
        if n == 0:
            return self.d0
        if self.shape == FREE:
            return INF
        if n == 1:
            return self.d1
        if self.shape == TWO_STEP:
            return INF
        return self.d1 + (n - 1)

    def __str__(self):
        if self.shape == FREE:
            return f"({self.d0}, inf)"
        if self.shape == TWO_STEP:
            return f"({self.d0}, {self.d1}, inf)"
        return f"({self.d0}, {self.d1}, {self.d1 + 1}, ...)"


@dataclass(frozen=True)
class PureDiagram:
    """The canonical table attached to a degree sequence, with unit leading entry."""

    degree_sequence: DegreeSequence
    table: BettiTable


def make_pure_diagram(d: DegreeSequence) -> PureDiagram:
    """Pure diagram of a degree sequence.

    free:     a single entry 1 at (0, d0)
    two_step: entries 1 at (0, d0) and 1 at (1, d1)
    tail:     entries 1 at (0, d0), 3 at (1, d1), 6 at (2, d1 + 1); the
              doubled rows beyond are implied by canonical mode, so the stored
              value at (i, d1 + i - 1) reads 3 * 2^(i-1) for every i >= 1.
    """
    if d.shape == FREE:
        entries = {(0, d.d0): 1}
    elif d.shape == TWO_STEP:
        entries = {(0, d.d0): 1, (1, d.d1): 1}
    else:
        entries = {(0, d.d0): 1, (1, d.d1): 3, (2, d.d1 + 1): 6}
    return PureDiagram(d, BettiTable(entries, tail_mode=CANONICAL))


EPSILON = "epsilon"
ALPHA = "alpha"
GAMMA = "gamma"
GAMMA_INF = "gamma_inf"
DOUBLING_EQ = "doubling_eq"


@dataclass(frozen=True)
class Functional:
    """Identifier of one linear functional on tables.

    epsilon(i, j)      entry at (i, j)
    alpha(k)           2*v[1, k] - v[2, k + 1]
    gamma(k)           sum over j <= k of 3*v[0, j] - 3*v[1, j + 1] + v[2, j + 2]
    gamma_inf          the same sum over all j
    doubling_eq(i, j)  2*v[i, j] - v[i + 1, j + 1], only for i >= 2 (an equality)
    """

    kind: str
    i: int | None = None
    j: int | None = None
    k: int | None = None

    @classmethod
    def epsilon(cls, i: int, j: int) -> "Functional":
        if i < 0:
            raise ValueError("epsilon needs i >= 0")
        return cls(EPSILON, i=i, j=j)

    @classmethod
    def alpha(cls, k: int) -> "Functional":
        return cls(ALPHA, k=k)

    @classmethod
    def gamma(cls, k: int) -> "Functional":
        return cls(GAMMA, k=k)

    @classmethod
    def gamma_inf(cls) -> "Functional":
        return cls(GAMMA_INF)

    @classmethod
    def doubling_eq(cls, i: int, j: int) -> "Functional":
        if i < 2:
            raise ValueError("doubling equalities live in rows i >= 2")
        return cls(DOUBLING_EQ, i=i, j=j)

    def label(self) -> str:
        if self.kind == EPSILON:
            return f"epsilon({self.i},{self.j})"
        if self.kind == ALPHA:
            return f"alpha({self.k})"
        if self.kind == GAMMA:
            return f"gamma({self.k})"
        if self.kind == GAMMA_INF:
            return "gamma_inf"
        return f"doubling_eq({self.i},{self.j})"


def eval_functional(f: Functional, v: BettiTable) -> Fraction:
    """Evaluate a functional on a table, honoring the table's tail mode."""
    if f.kind == EPSILON:
        return v.entry(f.i, f.j)
    if f.kind == ALPHA:
        return 2 * v.entry(1, f.k) - v.entry(2, f.k + 1)
    if f.kind == GAMMA:
        total = Fraction(0)
        for (i, j), val in v.items():
            if i == 0 and j <= f.k:
                total += 3 * val
            elif i == 1 and j <= f.k + 1:
                total -= 3 * val
            elif i == 2 and j <= f.k + 2:
                total += val
        return total
    if f.kind == GAMMA_INF:
        return 3 * v.row_total(0) - 3 * v.row_total(1) + v.row_total(2)
    if f.kind == DOUBLING_EQ:
        return 2 * v.entry(f.i, f.j) - v.entry(f.i + 1, f.j + 1)
    raise ValueError(f"unknown functional kind: {f.kind!r}")


# The four ray classes of the Herzog-Kuhl locus, keyed by the slope invariant c.
# Each entry: c -> (module family name, first lattice point (b0, b1, b2)).
_HK_RAYS = {
    Fraction(0): ("B", (1, 1, 0)),
    Fraction(1): ("M_i", (2, 3, 3)),
    Fraction(3, 2): ("omega", (1, 2, 3)),
    Fraction(2): ("M_ij", (1, 3, 6)),
}


@dataclass(frozen=True)
class HKRay:
    """First lattice point on one of the four rational rays cut out by the
    Herzog-Kuhl equation 3*(b0 - b1) + c*b1 = 0, extended by doubling."""

    c: Fraction
    mcm_name: str
    vector: tuple[int, int, int]

    def entries(self, n: int) -> tuple[int, ...]:
        """First n entries of the ray vector; entries i >= 3 double the previous."""
        out = list(self.vector[: max(n, 0)])
        while len(out) < n:
            out.append(2 * out[-1])
        return tuple(out)


def hk_ray(c: RationalLike) -> HKRay:
    """Ray data for slope invariant c in {0, 1, 3/2, 2}."""
    c = Fraction(c)
    if c not in _HK_RAYS:
        raise ValueError(f"no ray with c = {c}; admitted values are 0, 1, 3/2, 2")
    name, vec = _HK_RAYS[c]
    return HKRay(c, name, vec)


def hk_relations_check(n_entries: int = 8) -> bool:
    """Check 2*v3 = v1 + v4 and 2*v2 = 3*v1 + v4 on the first n_entries entries."""
    v1 = hk_ray(0).entries(n_entries)
    v2 = hk_ray(1).entries(n_entries)
    v3 = hk_ray(Fraction(3, 2)).entries(n_entries)
    v4 = hk_ray(2).entries(n_entries)
    first = all(2 * a == b + c for a, b, c in zip(v3, v1, v4))
    second = all(2 * a == 3 * b + c for a, b, c in zip(v2, v1, v4))
    return first and second


# First syzygy of each indecomposable maximal Cohen-Macaulay module, as a
# multiset of (module name, twist).  Twist -1 places generators in degree 1.
_SYZYGIES = {
    "B": (),
    "omega": (("M12", -1), ("M13", -1), ("M23", -1)),
    "M1": (("M23", -1),),
    "M2": (("M13", -1),),
    "M3": (("M12", -1),),
    "M12": (("M13", -1), ("M23", -1)),
    "M13": (("M12", -1), ("M23", -1)),
    "M23": (("M12", -1), ("M13", -1)),
}

INDECOMPOSABLE_NAMES = tuple(sorted(_SYZYGIES))


def syzygy_of_indecomposable(name: str) -> tuple[tuple[str, int], ...]:
    """First syzygy of an indecomposable MCM module, sorted for determinism."""
    if name not in _SYZYGIES:
        raise ValueError(f"unknown indecomposable: {name!r}; admitted: {', '.join(INDECOMPOSABLE_NAMES)}")
    return tuple(sorted(_SYZYGIES[name]))
