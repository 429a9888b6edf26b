"""Membership and decomposition for the cone of Betti tables.

The cone has two exact descriptions and this module implements both sides:

* halfspaces: all entries nonnegative, alpha_k >= 0 and gamma_k >= 0 for every
  k, plus the doubling equalities 2*v[i, j] = v[i + 1, j + 1] in rows i >= 2;
* generators: nonnegative rational combinations of the pure diagrams pi_d.

check_graded scans the halfspaces in a fixed order and returns the first
violated functional as a certificate; on success the certificate is an exact
greedy decomposition into pure diagrams.  The finite length variant adds the
single condition gamma_inf = 0, which kills the free summands.

The local (single column) cone over Betti sequences (b0, b1, b2) is handled at
the end of the module, with rays (1,0,0), (1,1,0), (1,3,6).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tables import (
    CANONICAL,
    BettiTable,
    DegreeSequence,
    Functional,
    RationalLike,
    collapse_tail,
    eval_functional,
    make_pure_diagram,
    table_arith,
)


class NotInConeError(ValueError):
    """Raised when an operation requires a cone member and the input is not one."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"table is not in the cone: {violation.label} = {violation.value}")


class DecompositionLoopError(RuntimeError):
    """Greedy decomposition ran past its iteration cap; carries the residual."""

    def __init__(self, residual, terms):
        self.residual = residual
        self.terms = terms
        super().__init__(
            f"no progress after {len(terms)} subtractions; residual support {residual.support()}"
        )


@dataclass(frozen=True)
class Violation:
    """A functional with a value that breaks membership (negative, or nonzero
    for an equality constraint)."""

    label: str
    value: Fraction
    functional: Functional | None = None


@dataclass(frozen=True)
class Decomposition:
    """Nonnegative combination of pure diagrams, in greedy subtraction order."""

    terms: tuple[tuple[DegreeSequence, Fraction], ...]

    def recombine(self) -> BettiTable:
        total = BettiTable({}, tail_mode=CANONICAL)
        for d, coeff in self.terms:
            total = table_arith(1, total, coeff, make_pure_diagram(d).table)
        return total


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    decomposition: object | None = None
    violation: Violation | None = None


def _doubling_scan(v: BettiTable) -> Violation | None:
    # Explicit tables are finite windows: the doubling equalities are checked
    # everywhere except past the topmost stored row, where the window ends.
    if v.tail_mode == CANONICAL:
        return None
    top = v.max_row
    checks = set()
    for (i, j) in v.support():
        if i >= 2 and i < top:
            checks.add((i, j))
        if i >= 3:
            checks.add((i - 1, j - 1))
    for (i, j) in sorted(checks):
        f = Functional.doubling_eq(i, j)
        val = eval_functional(f, v)
        if val != 0:
            return Violation(f.label(), val, f)
    return None


def _first_violation(v: BettiTable) -> Violation | None:
    """First violated halfspace in the fixed scan order: doubling equalities,
    then epsilon, then alpha, then gamma, each by increasing index."""
    viol = _doubling_scan(v)
    if viol is not None:
        return viol
    for (i, j), val in v.items():
        if val < 0:
            f = Functional.epsilon(i, j)
            return Violation(f.label(), val, f)
    if v.is_zero:
        return None
    lo, hi = v.min_degree, v.max_degree
    for k in range(lo - 1, hi + 2):
        f = Functional.alpha(k)
        val = eval_functional(f, v)
        if val < 0:
            return Violation(f.label(), val, f)
    for k in range(lo - 2, hi + 1):
        f = Functional.gamma(k)
        val = eval_functional(f, v)
        if val < 0:
            return Violation(f.label(), val, f)
    return None


def check_graded(v: BettiTable) -> MembershipVerdict:
    """Membership in the graded cone, with a certificate either way."""
    viol = _first_violation(v)
    if viol is not None:
        return MembershipVerdict(False, violation=viol)
    return MembershipVerdict(True, decomposition=decompose(v))


def check_finite_length(v: BettiTable) -> MembershipVerdict:
    """Membership in the finite length cone: graded membership plus gamma_inf = 0."""
    viol = _first_violation(v)
    if viol is not None:
        return MembershipVerdict(False, violation=viol)
    f = Functional.gamma_inf()
    total = eval_functional(f, v)
    if total != 0:
        return MembershipVerdict(False, violation=Violation(f.label(), total, f))
    return MembershipVerdict(True, decomposition=decompose(v))


def _pivot(v: BettiTable) -> DegreeSequence:
    row0 = v.row_degrees(0)
    row1 = v.row_degrees(1)
    # For a cone member with row 1 mass, row 0 must start strictly below it
    # (gamma at d1 - 1 forces it), so the pivot below is always well formed.
    if not row0:
        raise AssertionError(f"cone member without row 0 mass: {v!r}")
    d0 = row0[0]
    if not row1:
        return DegreeSequence.free(d0)
    d1 = row1[0]
    if v.entry(2, d1 + 1) != 0:
        return DegreeSequence.tail(d0, d1)
    return DegreeSequence.two_step(d0, d1)


def _max_step(v: BettiTable, pi: BettiTable) -> Fraction:
    """Largest c with v - c*pi still in the cone, by an exact ratio test over
    every functional that is positive on pi."""
    best = None
    for (i, j), pval in pi.items():
        ratio = v.entry(i, j) / pval
        if best is None or ratio < best:
            best = ratio
    lo, hi = v.min_degree, v.max_degree
    for k in range(lo - 1, hi + 2):
        f = Functional.alpha(k)
        pval = eval_functional(f, pi)
        if pval > 0:
            ratio = eval_functional(f, v) / pval
            if ratio < best:
                best = ratio
    for k in range(lo - 2, hi + 1):
        f = Functional.gamma(k)
        pval = eval_functional(f, pi)
        if pval > 0:
            ratio = eval_functional(f, v) / pval
            if ratio < best:
                best = ratio
    assert best is not None
    return best


def decompose(v: BettiTable) -> Decomposition:
    """Greedy exact decomposition of a cone member into pure diagrams.

    Each round picks d0 and d1 as the lowest degrees with mass in rows 0 and 1
    (d1 = inf when row 1 is empty), prefers the tail shape when row 2 has mass
    at d1 + 1, and subtracts the largest multiple of pi_d that keeps the
    residual in the cone.  The binding functional of the ratio test zeroes at
    least one support entry per round, so the iteration cap of 3*|support| + 3
    is generous; hitting it raises with the residual attached.
    """
    viol = _first_violation(v)
    if viol is not None:
        raise NotInConeError(viol)
    v = collapse_tail(v)
    cap = 3 * len(v.support()) + 3
    terms: list[tuple[DegreeSequence, Fraction]] = []
    for _ in range(cap):
        if v.is_zero:
            return Decomposition(tuple(terms))
        d = _pivot(v)
        pi = make_pure_diagram(d).table
        c = _max_step(v, pi)
        if c <= 0:
            raise DecompositionLoopError(v, tuple(terms))
        terms.append((d, c))
        v = table_arith(1, v, -c, pi)
    if v.is_zero:
        return Decomposition(tuple(terms))
    raise DecompositionLoopError(v, tuple(terms))


def degseq_leq(d: DegreeSequence, e: DegreeSequence) -> bool:
    """Componentwise partial order used to compare decomposition terms.

    d <= e holds when d0 <= e0 and d1 <= e1 with at least one strict, or when
    d0 = e0 and d1 = e1 and every later position of d is <= the one of e.
    Missing positions read as infinity, so shapes compare sensibly.
    """
    d0, e0 = d.degree(0), e.degree(0)
    d1, e1 = d.degree(1), e.degree(1)
    if d0 <= e0 and d1 <= e1 and (d0 < e0 or d1 < e1):
        return True
    if d0 == e0 and d1 == e1:
        # positions n >= 2 are determined by the shapes: tail gives d1 + n - 1,
        # anything else gives infinity, so one representative position decides
        return d.degree(2) <= e.degree(2)
    return False


# ---------------------------------------------------------------------------
# Local cone over Betti sequences (b0, b1, b2).


@dataclass(frozen=True)
class BettiSequence:
    """A total Betti sequence; signs are checked by check_local, not here."""

    b0: Fraction
    b1: Fraction
    b2: Fraction

    @classmethod
    def of(cls, b0: RationalLike, b1: RationalLike, b2: RationalLike) -> "BettiSequence":
        return cls(Fraction(b0), Fraction(b1), Fraction(b2))


@dataclass(frozen=True)
class LocalDecomposition:
    """Coefficients over the local rays (1,0,0), (1,1,0), (1,3,6)."""

    a: Fraction
    b: Fraction
    c: Fraction

    RAYS = ((1, 0, 0), (1, 1, 0), (1, 3, 6))

    def terms(self) -> tuple[tuple[tuple[int, int, int], Fraction], ...]:
        return tuple(zip(self.RAYS, (self.a, self.b, self.c)))


_LOCAL_EQ_LABEL = "3b0+b2-3b1 == 0"


def _local_violation(s: BettiSequence, finite_length: bool) -> Violation | None:
    for name, val in (("b0", s.b0), ("b1", s.b1), ("b2", s.b2)):
        if val < 0:
            return Violation(name, val)
    hk = 3 * s.b0 + s.b2 - 3 * s.b1
    if hk < 0:
        return Violation("3b0+b2-3b1", hk)
    split = 2 * s.b1 - s.b2
    if split < 0:
        return Violation("2b1-b2", split)
    if finite_length and hk != 0:
        return Violation(_LOCAL_EQ_LABEL, hk)
    return None


def check_local(s: BettiSequence, finite_length: bool = False) -> MembershipVerdict:
    """Membership of a Betti sequence in the local cone (graded by default)."""
    viol = _local_violation(s, finite_length)
    if viol is not None:
        return MembershipVerdict(False, violation=viol)
    return MembershipVerdict(True, decomposition=decompose_local(s, finite_length))


def decompose_local(s: BettiSequence, finite_length: bool = False) -> LocalDecomposition:
    """Unique coefficients over the local rays; the membership inequalities are
    exactly the statements a >= 0, b >= 0, c >= 0."""
    viol = _local_violation(s, finite_length)
    if viol is not None:
        raise NotInConeError(viol)
    c = s.b2 / 6
    b = s.b1 - 3 * c
    a = s.b0 - b - c
    assert a >= 0 and b >= 0 and c >= 0
    if finite_length:
        assert a == 0
    return LocalDecomposition(a, b, c)
