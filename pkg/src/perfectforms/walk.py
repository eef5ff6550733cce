"""Enumeration of perfect forms up to similarity by walking facet neighbors.

Voronoi domains of the (minimum-1 normalized) perfect forms tile the
cone generated by integer rank-one matrices, and two domains sharing a
facet belong to a unique pair of forms.  Starting from the seed with
2 on the diagonal and 1 elsewhere, crossing every facet of every
discovered domain therefore reaches all similarity classes in a fixed
dimension.  Crossing is exact: a rational bisection brackets the unique
point where new minimal vectors appear, and the final step length is
recovered as an exact rational root of a linear equation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .catalog import a_form
from .enumeration import arithmetical_minimum, vectors_below
from .errors import (
    DimensionCapError,
    InvalidFacetError,
    NeighborSearchError,
    NotPerfectError,
)
from .forms import QuadForm, UnimodularMatrix
from .perfection import rank_one, voronoi_domain
from .reduction import lll_reduce

__all__ = [
    "PerfectFormClass",
    "WalkFrontier",
    "EquivalenceWitness",
    "TracePlaneChart",
    "DEFAULT_WALK_CAP",
    "invariant_key",
    "contiguous_form",
    "equivalent_up_to_scale",
    "enumerate_perfect_forms",
    "primitive_rescale",
    "build_trace_plane_chart",
]

DEFAULT_WALK_CAP = 5


def primitive_rescale(q: QuadForm) -> tuple[QuadForm, Fraction]:
    """Positive multiple of q with integer entries of gcd 1.

    Returns (integral form, factor) with integral = factor * q.
    """
    den = 1
    num_gcd = 0
    for row in q.entries:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    for row in q.entries:
        for x in row:
            num_gcd = gcd(num_gcd, int(x * den))
    if num_gcd == 0:
        raise ValueError("zero form cannot be rescaled")
    factor = Fraction(den, num_gcd)
    return q.scaled(factor), factor


def invariant_key(q: QuadForm):
    """Similarity invariants: dimension, normalized determinant, number of
    minimal vectors, and the multiset of pairwise minimal-vector values."""
    mv = arithmetical_minimum(q)
    normalized = q.scaled(1 / mv.form_min)
    grams = []
    vecs = mv.vectors
    for i in range(len(vecs)):
        row = normalized.entries
        qx = [sum(row[a][b] * vecs[i][b] for b in range(q.dim)) for a in range(q.dim)]
        for j in range(i + 1, len(vecs)):
            grams.append(abs(sum(qx[a] * vecs[j][a] for a in range(q.dim))))
    return (q.dim, normalized.det(), len(vecs), tuple(sorted(grams)))


@dataclass(frozen=True)
class PerfectFormClass:
    """One similarity class: primitive integral representative and invariants."""

    representative: QuadForm
    lambda1: Fraction
    key: tuple
    path_length: int

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "lambda1": [self.lambda1.numerator, self.lambda1.denominator],
            "min_count": self.key[2],
            "det": [self.key[1].numerator, self.key[1].denominator],
            "path_length": self.path_length,
        }


@dataclass
class WalkFrontier:
    """Discovered classes keyed by invariants, plus the unprocessed queue."""

    discovered: dict
    pending: deque


def _facet_values(q: QuadForm, facet: QuadForm, vectors):
    return [facet.trace_inner(rank_one(x)) for x in vectors]


def _validate_facet(q: QuadForm, facet: QuadForm, minimal) -> None:
    values = _facet_values(q, facet, minimal.vectors)
    if any(v < 0 for v in values):
        raise InvalidFacetError("functional is negative on a minimal vector")
    tight = [x for x, v in zip(minimal.vectors, values) if v == 0]
    rows = [list(rank_one(x).upper_coords()) for x in tight]
    if linalg.rank(rows) != q.sym_dim - 1:
        raise InvalidFacetError("tight minimal vectors do not span a facet")
    if all(v == 0 for v in values):
        raise InvalidFacetError("functional vanishes on the whole domain")


def _min_status(q: QuadForm, t: Fraction, facet: QuadForm) -> str:
    """Position of q + t*facet relative to the crossing point.

    'low'  : still positive definite with minimum >= 1 (t <= t*),
    'high' : positive definite but some vector dips below value 1,
    'indef': not positive definite (overshot the cone boundary).
    """
    candidate = QuadForm.from_rows(
        [
            [a + t * b for a, b in zip(ra, rb)]
            for ra, rb in zip(q.entries, facet.entries)
        ]
    )
    if not candidate.is_positive_definite():
        return "indef"
    for x in vectors_below(candidate, 1):
        if candidate.evaluate(x) < 1:
            return "high"
    return "low"


def contiguous_form(q: QuadForm, facet: QuadForm) -> QuadForm:
    """The unique perfect neighbor whose domain shares the given facet.

    `q` must be perfect with arithmetical minimum 1; `facet` must be a
    facet functional of its domain (nonnegative on all minimal vectors,
    vanishing on a rank n-1 subset).  Along q + t*facet the tight
    minimal vectors keep value 1 while the others grow; the crossing
    point t* is the smallest t > 0 at which a new vector reaches value
    1.  It is found by doubling plus rational bisection and then made
    exact by solving the linear equations value(t) = 1 for the candidate
    new vectors.
    """
    minimal = arithmetical_minimum(q)
    if minimal.form_min != 1:
        raise InvalidFacetError("form must be normalized to minimum 1")
    _validate_facet(q, facet, minimal)

    upper = Fraction(1)
    lower = Fraction(0)
    for _ in range(256):
        status = _min_status(q, upper, facet)
        if status != "low":
            break
        lower = upper
        upper *= 2
    else:
        raise NeighborSearchError("no crossing found while doubling the step")

    probe = None
    if status == "high":
        probe = upper
    else:
        for _ in range(4096):
            mid = (lower + upper) / 2
            status = _min_status(q, mid, facet)
            if status == "low":
                lower = mid
            elif status == "indef":
                upper = mid
            else:
                probe = mid
                break
        if probe is None:
            raise NeighborSearchError("bisection failed to isolate the crossing")

    candidate = QuadForm.from_rows(
        [
            [a + probe * b for a, b in zip(ra, rb)]
            for ra, rb in zip(q.entries, facet.entries)
        ]
    )
    step = None
    for y in vectors_below(candidate, 1):
        drop = facet.trace_inner(rank_one(y))
        if drop >= 0:
            continue
        t_y = (1 - q.evaluate(y)) / drop
        if t_y > 0 and (step is None or t_y < step):
            step = t_y
    if step is None:
        raise NeighborSearchError("no descending vector at the probe point")

    neighbor = QuadForm.from_rows(
        [
            [a + step * b for a, b in zip(ra, rb)]
            for ra, rb in zip(q.entries, facet.entries)
        ]
    )
    check = arithmetical_minimum(neighbor)
    if check.form_min != 1:
        raise NeighborSearchError("crossing did not preserve the unit minimum")
    if not voronoi_domain(neighbor).is_full_rank():
        raise NeighborSearchError("crossing did not reach a perfect form")
    return neighbor


@dataclass(frozen=True)
class EquivalenceWitness:
    """U and alpha with U^t q1 U == alpha * q2."""

    transform: UnimodularMatrix
    scale: Fraction


def _value_shells(q: QuadForm, limit: Fraction):
    shells: dict[Fraction, list[tuple[int, ...]]] = {}
    for x in vectors_below(q, limit):
        shells.setdefault(q.evaluate(x), []).append(x)
    return shells


def equivalent_up_to_scale(q1: QuadForm, q2: QuadForm) -> EquivalenceWitness | None:
    """Search for U with U^t q1 U == alpha q2, or None.

    alpha is forced to be the ratio of the arithmetical minima.  The
    search backtracks over images of a spanning set of short vectors of
    the rescaled q2, pruned by exact pairwise values; a full assignment
    determines U by a linear solve, which is then verified exactly.
    Complete: a true equivalence maps the chosen vectors to some
    admissible assignment, which the exhaustive search visits.
    """
    if q1.dim != q2.dim:
        return None
    d = q1.dim
    m1 = arithmetical_minimum(q1)
    m2 = arithmetical_minimum(q2)
    alpha = m1.form_min / m2.form_min
    target = q2.scaled(alpha)
    if q1.det() != target.det():
        return None
    if invariant_key(q1) != invariant_key(target):
        return None

    # Spanning set of short vectors of the target, smallest values first.
    bound = m1.form_min
    basis: list[tuple[int, ...]] = []
    for _ in range(64):
        shells = _value_shells(target, bound)
        tracker = linalg.RankTracker(d)
        basis = []
        for value in sorted(shells):
            for v in sorted(shells[value]):
                if tracker.add(list(v)):
                    basis.append(v)
        if len(basis) == d:
            break
        bound *= 2
    if len(basis) < d:
        return None

    source_shells = _value_shells(q1, max(target.evaluate(v) for v in basis))

    def pairs_value(q, a, b):
        return sum(
            Fraction(a[i]) * q.entries[i][j] * Fraction(b[j])
            for i in range(d)
            for j in range(d)
        )

    target_values = [target.evaluate(v) for v in basis]
    target_cross = [
        [pairs_value(target, basis[i], basis[j]) for j in range(i)]
        for i in range(len(basis))
    ]

    assignment: list[tuple[int, ...]] = []

    def backtrack(i: int) -> UnimodularMatrix | None:
        if i == d:
            cols_v = linalg.transpose([[Fraction(c) for c in v] for v in basis])
            cols_w = linalg.transpose([[Fraction(c) for c in w] for w in assignment])
            try:
                u = linalg.mat_mul(cols_w, linalg.inverse(cols_v))
            except ValueError:
                return None
            if any(x.denominator != 1 for row in u for x in row):
                return None
            try:
                cand = UnimodularMatrix.from_rows([[int(x) for x in row] for row in u])
            except ValueError:
                return None
            if q1.apply_unimodular(cand) == target:
                return cand
            return None
        for rep in source_shells.get(target_values[i], []):
            for w in (rep, tuple(-c for c in rep)):
                if all(
                    pairs_value(q1, w, assignment[j]) == target_cross[i][j]
                    for j in range(i)
                ):
                    assignment.append(w)
                    found = backtrack(i + 1)
                    if found is not None:
                        return found
                    assignment.pop()
        return None

    u = backtrack(0)
    if u is None:
        return None
    return EquivalenceWitness(transform=u, scale=alpha)


@dataclass(frozen=True)
class TracePlaneChart:
    """Two-dimensional domain chart on the unit-trace plane.

    `cells` maps a primitive integral perfect form to the rays x x^t on
    the boundary of its domain; `rays` carries exact circle coordinates
    ((x2^2 - x1^2)/x^t x, 2 x1 x2 / x^t x) for each ray, where the unit
    circle is the boundary of the positive semidefinite cone.
    """

    cells: tuple[tuple[QuadForm, tuple[tuple[int, ...], ...]], ...]
    rays: tuple[tuple[tuple[int, ...], tuple[Fraction, Fraction]], ...]

    def to_json(self) -> dict:
        return {
            "cells": [
                {
                    "form": form.to_json(),
                    "rays": [list(v) for v in rays],
                }
                for form, rays in self.cells
            ],
            "rays": [
                {
                    "vector": list(v),
                    "circle": [
                        [u.numerator, u.denominator] for u in coords
                    ],
                }
                for v, coords in self.rays
            ],
        }


def _circle_coords(x) -> tuple[Fraction, Fraction]:
    norm = Fraction(x[0] * x[0] + x[1] * x[1])
    return (
        Fraction(x[1] * x[1] - x[0] * x[0]) / norm,
        Fraction(2 * x[0] * x[1]) / norm,
    )


def build_trace_plane_chart() -> TracePlaneChart:
    """Chart of the central two-dimensional domains and their surroundings.

    Contains the seed cell, its mirror across the facet spanned by the
    unit rays, the four other neighbors of that central pair, and every
    ray of those six cells plus the rays of the next ring of neighboring
    cells.  Ray-cell incidence is decided by exact cone membership.
    """
    seed = a_form(2).scaled(Fraction(1, 2))

    def domain(q):
        return voronoi_domain(q, with_facets=True)

    def neighbors(q):
        dom = domain(q)
        return [contiguous_form(q, f) for f in dom.facets]

    seed_dom = domain(seed)
    mirror = None
    for facet in seed_dom.facets:
        e1 = rank_one((1, 0))
        e2 = rank_one((0, 1))
        if facet.trace_inner(e1) == 0 and facet.trace_inner(e2) == 0:
            mirror = contiguous_form(seed, facet)
    if mirror is None:
        raise NeighborSearchError("seed domain has no unit-ray facet")

    cells: list[QuadForm] = [seed, mirror]
    for center in (seed, mirror):
        for nb in neighbors(center):
            if nb not in cells:
                cells.append(nb)

    ray_set: set[tuple[int, ...]] = set()
    for cell in cells:
        ray_set.update(arithmetical_minimum(cell).vectors)
        for nb in neighbors(cell):
            ray_set.update(arithmetical_minimum(nb).vectors)

    cell_entries = []
    for cell in cells:
        dom = domain(cell)
        incident = tuple(
            sorted(v for v in ray_set if dom.contains(rank_one(v)))
        )
        integral, _ = primitive_rescale(cell)
        cell_entries.append((integral, incident))

    rays = tuple(
        (v, _circle_coords(v)) for v in sorted(ray_set)
    )
    return TracePlaneChart(cells=tuple(cell_entries), rays=rays)


def enumerate_perfect_forms(d: int, cap: int = DEFAULT_WALK_CAP) -> list[PerfectFormClass]:
    """Complete classification of perfect forms up to similarity.

    Seeded from the all-ones-off-diagonal form; terminates when every
    facet of every discovered domain has been crossed.  Returns primitive
    integral representatives sorted by invariant key.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if d > cap:
        raise DimensionCapError(f"enumeration capped at dimension {cap}")

    frontier = WalkFrontier(discovered={}, pending=deque())

    def register(q_normalized: QuadForm, path_length: int) -> None:
        integral, factor = primitive_rescale(q_normalized)
        reduced = lll_reduce(integral).reduced
        rep, _ = primitive_rescale(reduced)
        key = invariant_key(rep)
        bucket = frontier.discovered.setdefault(key, [])
        for known in bucket:
            if equivalent_up_to_scale(known.representative, rep) is not None:
                return
        lam = arithmetical_minimum(rep).form_min
        cls = PerfectFormClass(
            representative=rep, lambda1=lam, key=key, path_length=path_length
        )
        bucket.append(cls)
        frontier.pending.append(cls)

    register(a_form(d), 0)
    while frontier.pending:
        cls = frontier.pending.popleft()
        normalized = cls.representative.scaled(1 / cls.lambda1)
        domain = voronoi_domain(normalized, with_facets=True, facet_cap=max(cap, d))
        if not domain.is_full_rank():
            raise NotPerfectError("walk reached a non-perfect form")
        for facet in domain.facets:
            neighbor = contiguous_form(normalized, facet)
            register(neighbor, cls.path_length + 1)

    out = [cls for bucket in frontier.discovered.values() for cls in bucket]
    out.sort(key=lambda cls: cls.key)
    return out
