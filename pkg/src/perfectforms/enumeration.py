"""Complete enumeration of short integer vectors of a positive definite form.

The workhorse is a depth-first traversal over the coordinates using the
exact rational quadratic completion Q[x] = sum_i d_i (x_i + c_i(x))^2
(Fincke-Pohst pattern).  Every integer vector with Q[x] <= bound is
visited, so minima and minimal-vector sets are exact by construction.
Bases are LLL-preprocessed to keep the search tree small; results are
mapped back through the recorded unimodular transform.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import linalg
from .errors import NotPositiveDefiniteError
from .forms import QuadForm

__all__ = [
    "MinimalVectorSet",
    "SuccessiveMinima",
    "vectors_below",
    "arithmetical_minimum",
    "successive_minima",
    "canonical_sign",
]


def canonical_sign(x) -> tuple[int, ...]:
    """Lexicographically-positive representative of the pair {x, -x}."""
    for v in x:
        if v > 0:
            return tuple(int(u) for u in x)
        if v < 0:
            return tuple(-int(u) for u in x)
    raise ValueError("zero vector has no sign representative")


@dataclass(frozen=True)
class MinimalVectorSet:
    """Arithmetical minimum with all minimal vectors, one per +- pair."""

    form_min: Fraction
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.form_min <= 0:
            raise ValueError("arithmetical minimum must be positive")

    def count(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "lambda1": [self.form_min.numerator, self.form_min.denominator],
            "vectors": [list(v) for v in self.vectors],
        }


@dataclass(frozen=True)
class SuccessiveMinima:
    """First k successive minima with linearly independent witnesses."""

    values: tuple[Fraction, ...]
    witnesses: tuple[tuple[int, ...], ...]


def _enumerate_completion(diag, coeffs, bound: Fraction):
    """All x != 0 with sum_i d_i (x_i + c_i)^2 <= bound, up to sign.

    Levels are processed from the last coordinate down; at each level the
    admissible integers form a contiguous interval, scanned outward from
    the floor of the interval center.  While every higher coordinate is
    zero only nonnegative values are taken, which picks one vector per
    +- pair without losing completeness.
    """
    dim = len(diag)
    x = [0] * dim
    out: list[tuple[tuple[int, ...], Fraction]] = []

    def descend(level: int, remaining: Fraction, zero_above: bool):
        if level < 0:
            if not zero_above:
                out.append((tuple(x), bound - remaining))
            return
        center = sum(coeffs[level][j] * x[j] for j in range(level + 1, dim))
        q = diag[level]

        def ok(m: int) -> Fraction | None:
            t = m + center
            cost = q * t * t
            return remaining - cost if cost <= remaining else None

        start = floor(-center)
        m = start
        while True:
            rem = ok(m)
            if rem is None:
                break
            if not zero_above or m >= 0:
                x[level] = m
                descend(level - 1, rem, zero_above and m == 0)
            m -= 1
            if zero_above and m < 0:
                break
        m = start + 1
        while True:
            rem = ok(m)
            if rem is None:
                break
            x[level] = m
            descend(level - 1, rem, False)
            m += 1
        x[level] = 0

    descend(dim - 1, bound, True)
    return out


def _reduced(q: QuadForm):
    from .reduction import lll_reduce  # deferred: reduction builds on this module

    return lll_reduce(q)


def _short_vectors(q: QuadForm, bound: Fraction):
    """(vector, value) pairs with 0 < Q[x] <= bound, canonical signs."""
    if bound <= 0:
        return []
    if q.dim == 1:
        a = q.entries[0][0]
        if a <= 0:
            raise NotPositiveDefiniteError("form is not positive definite")
        out = []
        k = 1
        while a * k * k <= bound:
            out.append(((k,), a * k * k))
            k += 1
        return out
    red = _reduced(q)
    try:
        diag, coeffs = linalg.quadratic_completion(red.reduced.rows())
    except ValueError as exc:
        raise NotPositiveDefiniteError(str(exc)) from None
    u = red.transform
    found = {}
    for y, value in _enumerate_completion(diag, coeffs, Fraction(bound)):
        vec = canonical_sign(u.apply(y))
        found[vec] = value
    return sorted(found.items())


def vectors_below(q: QuadForm, bound) -> tuple[tuple[int, ...], ...]:
    """Exactly the set {x != 0 : Q[x] <= bound} up to sign."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    return tuple(v for v, _ in _short_vectors(q, bound))


def arithmetical_minimum(q: QuadForm) -> MinimalVectorSet:
    """Smallest nonzero value of Q over Z^d and all vectors attaining it.

    The initial radius min_i Q'_ii (for the LLL-reduced Q') is attained
    by a basis vector, so every vector of minimal value lies inside it.
    """
    red = _reduced(q)
    start = min(red.reduced.entries[i][i] for i in range(q.dim))
    pairs = _short_vectors(q, start)
    lam = min(value for _, value in pairs)
    vecs = tuple(sorted(v for v, value in pairs if value == lam))
    return MinimalVectorSet(form_min=lam, vectors=vecs)


def successive_minima(q: QuadForm, k: int) -> SuccessiveMinima:
    """First k successive minima, by greedy rank extension.

    Scanning all vectors of value <= B in increasing (value, lex) order
    and keeping those that raise the rank yields exactly the successive
    minima once the k-th pick fits below B; the bound doubles until then.
    """
    if not 1 <= k <= q.dim:
        raise ValueError("index k out of range")
    red = _reduced(q)
    bound = min(red.reduced.entries[i][i] for i in range(q.dim))
    while True:
        pairs = sorted(_short_vectors(q, bound), key=lambda p: (p[1], p[0]))
        tracker = linalg.RankTracker(q.dim)
        values: list[Fraction] = []
        witnesses: list[tuple[int, ...]] = []
        for vec, value in pairs:
            if tracker.add(list(vec)):
                values.append(value)
                witnesses.append(vec)
                if len(values) == k:
                    return SuccessiveMinima(tuple(values), tuple(witnesses))
        bound *= 2
