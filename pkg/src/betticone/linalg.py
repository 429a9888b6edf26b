"""Exact dense linear algebra over Q and over prime fields.

Graded pieces of modules over the three point ring are tiny (a free module of
rank r contributes at most 3r coordinates per degree), so plain Gaussian
elimination on lists is all the resolution engine needs.  Scalars are
fractions.Fraction for Q and plain ints for F_p; a field object supplies the
arithmetic so the elimination code is written once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class RationalField:
    name: str = "QQ"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def convert(self, q) -> Fraction:
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self):
        return f"Fp {self.p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def convert(self, q) -> int:
        q = Fraction(q)
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return q.numerator % self.p * pow(den, self.p - 2, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


QQ = RationalField()
FP_DEFAULT = PrimeField(32003)


class SpanTracker:
    """Row space in reduced echelon form, grown one vector at a time.

    Supports exact membership reduction, which is what both the rank counts
    and the minimal generator extraction need.
    """

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, vec) -> list:
        """Residual of vec after elimination against the current rows."""
        f = self.field
        out = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            coef = out[piv]
            if coef != f.zero:
                for c in range(piv, self.ncols):
                    out[c] = f.sub(out[c], f.mul(coef, row[c]))
        return out

    def add(self, vec):
        """Insert vec; returns the normalized residual if the span grew, else None."""
        f = self.field
        res = self.reduce(vec)
        piv = next((c for c, x in enumerate(res) if x != f.zero), None)
        if piv is None:
            return None
        scale = f.inv(res[piv])
        res = [f.mul(scale, x) for x in res]
        # keep full reduction so later residuals are canonical
        for row, rp in zip(self.rows, self.pivots):
            coef = row[piv]
            if coef != f.zero:
                for c in range(piv, self.ncols):
                    row[c] = f.sub(row[c], f.mul(coef, res[c]))
        at = next((n for n, rp in enumerate(self.pivots) if rp > piv), len(self.pivots))
        self.rows.insert(at, res)
        self.pivots.insert(at, piv)
        return list(res)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec) -> bool:
        f = self.field
        return all(x == f.zero for x in self.reduce(vec))


def kernel_basis(rows: list[list], ncols: int, field) -> list[list]:
    """Basis of the right kernel of a matrix given as a list of rows."""
    f = field
    tracker = SpanTracker(f, ncols)
    for row in rows:
        tracker.add(row)
    pivot_set = set(tracker.pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [f.zero] * ncols
        vec[free] = f.one
        for row, piv in zip(tracker.rows, tracker.pivots):
            vec[piv] = f.neg(row[free])
        basis.append(vec)
    return basis


def matrix_rank(rows: list[list], ncols: int, field) -> int:
    tracker = SpanTracker(field, ncols)
    for row in rows:
        tracker.add(row)
    return tracker.rank
