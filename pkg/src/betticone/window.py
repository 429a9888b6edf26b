"""Finite windows of the Betti cone, and the generator/facet cross check.

Restricting tables to rows 0..2 and a column range [jmin, jmax] (higher rows
ride along through the doubling identities) makes the cone a polyhedral cone
in 3 * width coordinates.  Both descriptions become finite:

* generators: the pure diagrams whose support fits inside the window;
* facets: entrywise nonnegativity, the alpha functionals, and the cumulative
  gamma functionals, each truncated to the window coordinates.

extreme_rays recovers the generator description from the facet description by
double description, so the two can be compared exactly.  The alpha index runs
from jmin - 1 (that first one reads -v_{2,jmin} >= 0 and is what pins row 2
mass to lie above row 1 mass inside the window) and gamma is accumulated from
jmin - 2 up to jmax.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cone import Decomposition
from .tables import BettiTable, DegreeSequence, Functional, PureDiagram, make_pure_diagram

_ROWS = (0, 1, 2)


class WindowCapError(ValueError):
    """Window too wide for the double description pass."""


@dataclass(frozen=True)
class Window:
    jmin: int
    jmax: int

    def __post_init__(self):
        if self.jmin > self.jmax:
            raise ValueError(f"empty window [{self.jmin}, {self.jmax}]")

    @property
    def width(self) -> int:
        return self.jmax - self.jmin + 1

    @property
    def dim(self) -> int:
        return 3 * self.width

    def columns(self):
        return range(self.jmin, self.jmax + 1)

    def index(self, i: int, j: int) -> int:
        if i not in _ROWS or not self.jmin <= j <= self.jmax:
            raise ValueError(f"({i}, {j}) outside window [{self.jmin}, {self.jmax}]")
        return i * self.width + (j - self.jmin)


def window_generators(w: Window, finite_length: bool = False):
    """Pure diagrams supported inside the window, ordered free diagrams first,
    then two step, then tails.  finite_length drops the free ones."""
    gens: list[PureDiagram] = []
    if not finite_length:
        for d0 in w.columns():
            gens.append(make_pure_diagram(DegreeSequence.free(d0)))
    for d0 in w.columns():
        for d1 in range(d0 + 1, w.jmax + 1):
            gens.append(make_pure_diagram(DegreeSequence.two_step(d0, d1)))
    for d0 in w.columns():
        for d1 in range(d0 + 1, w.jmax):  # needs column d1 + 1 as well
            gens.append(make_pure_diagram(DegreeSequence.tail(d0, d1)))
    return gens


def table_vector(table: BettiTable, w: Window) -> list[Fraction]:
    """Rows 0..2 of a table as window coordinates.  Mass outside the columns
    is an error; stored rows >= 3 are ignored, the window does not see them."""
    vec = [Fraction(0)] * w.dim
    for (i, j), v in table.items():
        if i > 2:
            continue
        if not w.jmin <= j <= w.jmax:
            raise ValueError(f"entry at ({i}, {j}) falls outside window [{w.jmin}, {w.jmax}]")
        vec[w.index(i, j)] = v
    return vec


def window_facets(w: Window, finite_length: bool = False,
                  include_alpha: bool = True, include_gamma: bool = True):
    """(inequalities, equalities) as (Functional, coefficient vector) pairs."""
    ineqs: list[tuple[Functional, tuple[int, ...]]] = []
    for i in _ROWS:
        for j in w.columns():
            vec = [0] * w.dim
            vec[w.index(i, j)] = 1
            ineqs.append((Functional.epsilon(i, j), tuple(vec)))
    if include_alpha:
        for k in range(w.jmin - 1, w.jmax + 1):
            vec = [0] * w.dim
            if k >= w.jmin:
                vec[w.index(1, k)] = 2
            if k + 1 <= w.jmax:
                vec[w.index(2, k + 1)] = -1
            ineqs.append((Functional.alpha(k), tuple(vec)))
    if include_gamma:
        for k in range(w.jmin - 2, w.jmax + 1):
            vec = [0] * w.dim
            for j in w.columns():
                if j <= k:
                    vec[w.index(0, j)] += 3
                if j <= k + 1:
                    vec[w.index(1, j)] -= 3
                if j <= k + 2:
                    vec[w.index(2, j)] += 1
            ineqs.append((Functional.gamma(k), tuple(vec)))
    eqs: list[tuple[Functional, tuple[int, ...]]] = []
    if finite_length:
        vec = [0] * w.dim
        for j in w.columns():
            vec[w.index(0, j)] = 3
            vec[w.index(1, j)] = -3
            vec[w.index(2, j)] = 1
        eqs.append((Functional.gamma_inf(), tuple(vec)))
    return ineqs, eqs


def _dot(a, r):
    return sum(c * x for c, x in zip(a, r))


def normalize_ray(vec) -> tuple[int, ...]:
    """Primitive integer vector on the same ray."""
    scale = lcm(*(Fraction(x).denominator for x in vec)) if vec else 1
    ints = [int(x * scale) for x in vec]
    g = gcd(*ints) if ints else 1
    if g == 0:
        raise ValueError("zero vector is not a ray")
    return tuple(x // g for x in ints)


def _zero_mask(processed, r):
    return frozenset(n for n, a in enumerate(processed) if _dot(a, r) == 0)


def extreme_rays(dim: int, ineqs, eqs=()):
    """Extreme rays of {v : a.v >= 0 for ineqs, b.v = 0 for eqs} by double
    description, assuming the inequalities contain the coordinate orthant
    (ours always do).  Returns sorted primitive integer tuples."""
    rays: list[list[Fraction]] = []
    processed: list[tuple[int, ...]] = []
    for n in range(dim):
        unit = [Fraction(0)] * dim
        unit[n] = Fraction(1)
        rays.append(unit)
        coords = [0] * dim
        coords[n] = 1
        processed.append(tuple(coords))
    todo = list(ineqs)
    for b in eqs:
        todo.append(b)
        todo.append(tuple(-c for c in b))
    for a in todo:
        vals = [_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(a)
            continue
        keep = [r for r, v in zip(rays, vals) if v >= 0]
        masks = [_zero_mask(processed, r) for r in rays]
        plus = [n for n, v in enumerate(vals) if v > 0]
        minus = [n for n, v in enumerate(vals) if v < 0]
        seen = {normalize_ray(r) for r in keep}
        fresh = []
        for np_ in plus:
            for nm in minus:
                common = masks[np_] & masks[nm]
                # adjacency: no third extreme ray flat on every constraint both are flat on
                if any(common <= masks[o] for o in range(len(rays)) if o != np_ and o != nm):
                    continue
                rp, rm = rays[np_], rays[nm]
                combo = [vals[np_] * cm - vals[nm] * cp for cp, cm in zip(rp, rm)]
                key = normalize_ray(combo)
                if key not in seen:
                    seen.add(key)
                    fresh.append([Fraction(c) for c in key])
        rays = keep + fresh
        processed.append(a)
    return sorted(normalize_ray(r) for r in rays)


@dataclass(frozen=True)
class WindowReport:
    window: Window
    n_generators: int
    n_facets: int
    n_rays: int
    equal: bool
    witnesses: tuple[str, ...]
    rays: tuple[tuple[int, ...], ...]
    generator_vectors: tuple[tuple[int, ...], ...]


def cross_check(w: Window, finite_length: bool = False, include_alpha: bool = True,
                include_gamma: bool = True, dim_cap: int = 18) -> WindowReport:
    """Compare the generator and facet descriptions on a window.

    The generators are checked against every facet (a failure there is a bug,
    so it is an assertion), then the facet cone's extreme rays are matched
    one to one against the generators up to positive scaling.  Dropping alpha
    or gamma facets widens the cone and shows up as witness rays.
    """
    if w.dim > dim_cap:
        raise WindowCapError(f"window dimension {w.dim} exceeds cap {dim_cap}")
    gens = window_generators(w, finite_length)
    ineqs, eqs = window_facets(w, finite_length, include_alpha, include_gamma)
    gen_norm = []
    for pd in gens:
        vec = table_vector(pd.table, w)
        for fun, a in ineqs:
            assert _dot(a, vec) >= 0, f"{pd.degree_sequence} violates {fun.label()}"
        for fun, b in eqs:
            assert _dot(b, vec) == 0, f"{pd.degree_sequence} violates {fun.label()} = 0"
        gen_norm.append(normalize_ray(vec))
    rays = extreme_rays(w.dim, [a for _, a in ineqs], [b for _, b in eqs])
    gen_set = set(gen_norm)
    ray_set = set(rays)
    witnesses = []
    for r in rays:
        if r not in gen_set:
            witnesses.append(f"extreme ray {r} is not a pure diagram of the window")
    for pd, gv in zip(gens, gen_norm):
        if gv not in ray_set:
            witnesses.append(f"pure diagram {pd.degree_sequence} is not an extreme ray")
    return WindowReport(
        window=w,
        n_generators=len(gens),
        n_facets=len(ineqs) + len(eqs),
        n_rays=len(rays),
        equal=not witnesses,
        witnesses=tuple(witnesses),
        rays=tuple(rays),
        generator_vectors=tuple(gen_norm),
    )


def _lcg(seed: int):
    # classic 32 bit linear congruential stream, fixed here so tests replay
    state = seed % 2 ** 32
    while True:
        state = (1664525 * state + 1013904223) % 2 ** 32
        yield state


def random_cone_point(w: Window, seed: int, finite_length: bool = False):
    """Seeded random nonnegative combination of window generators, returned as
    (table, terms).  Deterministic across runs by construction."""
    gens = window_generators(w, finite_length)
    if not gens:
        raise ValueError("window has no generators")
    rng = _lcg(seed)
    terms = []
    for pd in gens:
        r = next(rng)
        if r % 3 == 0:
            terms.append((pd.degree_sequence, Fraction(1 + r % 8, 1 + r % 4)))
    if not terms:
        pd = gens[next(rng) % len(gens)]
        r = next(rng)
        terms.append((pd.degree_sequence, Fraction(1 + r % 8, 1 + r % 4)))
    deco = Decomposition(tuple(terms))
    return deco.recombine(), tuple(terms)
