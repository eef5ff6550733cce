"""Perfection certificates and the geometry of Voronoi domains.

A positive definite form is perfect when the rank-one matrices x x^t
over its minimal vectors span the full n = d(d+1)/2 dimensional space of
symmetric matrices; equivalently the form is determined by the equations
Q[x] = min over its minimal vectors.  This module certifies perfection
exactly, extracts a full-rank subset of n minimal vectors with the exact
determinant of its vectorized system, lower-bounds the volume of the
trace-truncated domain by that simplex, tests essential disjointness of
two domains, and runs the adjugate-based integrality argument bounding
the minimum of a primitive integral perfect form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .bounds import exact_domain_volume_lower, exact_lambda1_bound
from .cones import facet_normals_of_cone
from .enumeration import MinimalVectorSet, arithmetical_minimum
from .errors import (
    DimensionCapError,
    NotIntegralError,
    NotPerfectError,
    NotPositiveDefiniteError,
    NotPrimitiveError,
)
from .forms import QuadForm, index_pairs
from .reduction import ReductionResult, small_minvec_representative
from .sqrt2 import QSqrt2

__all__ = [
    "VoronoiDomain",
    "PerfectionCertificate",
    "IntegralSystem",
    "VolumeBoundReport",
    "DisjointnessReport",
    "PrimitivityReport",
    "rank_one",
    "voronoi_domain",
    "is_perfect",
    "perfection_certificate",
    "volume_lower_bound_check",
    "disjointness_inequality",
    "primitivity_scaling_check",
    "DEFAULT_FACET_CAP",
]

DEFAULT_FACET_CAP = 5


def rank_one(x) -> QuadForm:
    """Outer product x x^t as a quadratic form."""
    d = len(x)
    return QuadForm.from_rows(
        [[Fraction(x[i]) * Fraction(x[j]) for j in range(d)] for i in range(d)]
    )


def _upper_coords_rows(vectors) -> list[list[Fraction]]:
    """Upper-triangle coordinates of x x^t for rank computations.

    Rescaling the off-diagonal coordinates (dropping the sqrt(2) factor
    of the isometric embedding) does not change ranks or vanishing.
    """
    return [list(rank_one(x).upper_coords()) for x in vectors]


@dataclass(frozen=True)
class VoronoiDomain:
    """Cone generated by x x^t over the minimal vectors of a form."""

    source: QuadForm
    minimal: MinimalVectorSet
    rank: int
    facets: tuple[QuadForm, ...] | None = None

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        return self.minimal.vectors

    def rank_one_generators(self) -> list[QuadForm]:
        return [rank_one(x) for x in self.generators]

    def is_full_rank(self) -> bool:
        return self.rank == self.source.sym_dim

    def contains(self, point: QuadForm) -> bool:
        """Exact membership via the facet description (full-rank only)."""
        if self.facets is None:
            raise ValueError("domain was built without facets")
        return all(f.trace_inner(point) >= 0 for f in self.facets)

    def to_json(self) -> dict:
        doc = {
            "source": self.source.to_json(),
            "generators": [list(v) for v in self.generators],
            "rank": self.rank,
        }
        if self.facets is not None:
            doc["facets"] = [f.to_json() for f in self.facets]
        return doc


def _facet_from_dual_ray(d: int, ray) -> QuadForm:
    """Rebuild the symmetric functional matching a dual ray.

    The dual description runs in integral coordinates (off-diagonal
    entries of x x^t doubled), where a linear functional y acts as
    <F, P> with F_ij = y_ij for i <= j.
    """
    m = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), v in zip(index_pairs(d), ray):
        m[i][j] = Fraction(v)
        m[j][i] = Fraction(v)
    return QuadForm.from_rows(m)


def voronoi_domain(
    q: QuadForm, with_facets: bool = False, facet_cap: int = DEFAULT_FACET_CAP
) -> VoronoiDomain:
    """Generators and exact rank of the Voronoi domain, facets on request.

    Facet enumeration runs the double description method on the integral
    vectorizations of the generators; it is restricted to full-rank
    domains and to dimensions up to `facet_cap`.
    """
    minimal = arithmetical_minimum(q)
    n = q.sym_dim
    rank = linalg.rank(_upper_coords_rows(minimal.vectors))
    if rank == n and minimal.count() < n:
        raise AssertionError("full-rank domain with fewer than n generators")
    facets = None
    if with_facets:
        if q.dim > facet_cap:
            raise DimensionCapError(
                f"facet enumeration capped at dimension {facet_cap}"
            )
        if rank != n:
            raise NotPerfectError(
                "facet enumeration requires a full-rank Voronoi domain"
            )
        gens = [rank_one(x).vectorize_integral() for x in minimal.vectors]
        normals = facet_normals_of_cone(gens)
        facets = tuple(_facet_from_dual_ray(q.dim, ray) for ray in normals)
    return VoronoiDomain(source=q, minimal=minimal, rank=rank, facets=facets)


def is_perfect(q: QuadForm) -> bool:
    """True iff the Voronoi domain has full rank d(d+1)/2."""
    return voronoi_domain(q).is_full_rank()


@dataclass(frozen=True)
class PerfectionCertificate:
    """Full-rank subset of n minimal vectors with its exact determinant.

    `det_w` is the determinant of the n x n matrix whose rows are the
    isometric vectorizations of x x^t / (x^t x); `simplex_volume` is
    |det_w| / n!, the volume of the simplex spanned by the normalized
    generators and the origin.
    """

    subset: tuple[tuple[int, ...], ...]
    det_w: QSqrt2
    simplex_volume: QSqrt2

    def to_json(self) -> dict:
        return {
            "subset": [list(v) for v in self.subset],
            "det_w": self.det_w.to_json(),
            "simplex_volume": self.simplex_volume.to_json(),
        }


def perfection_certificate(q: QuadForm) -> PerfectionCertificate:
    """Greedy full-rank subset of minimal vectors with exact determinant.

    Minimal vectors are scanned in lexicographic order; one is kept iff
    it increases the rank of the vectorized generators, which is
    deterministic and reaches n exactly when the form is perfect.
    """
    minimal = arithmetical_minimum(q)
    n = q.sym_dim
    tracker = linalg.RankTracker(n)
    chosen: list[tuple[int, ...]] = []
    for x in minimal.vectors:
        if tracker.add(rank_one(x).upper_coords()):
            chosen.append(x)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        raise NotPerfectError("minimal vectors do not span: form is not perfect")

    # Rows of W are vectorizations of x x^t / x^t x; each off-diagonal
    # column carries one sqrt(2) factor, which is pulled out of the
    # determinant: det(W) = sqrt(2)^(n-d) * det of the plain-coordinate
    # matrix.
    d = q.dim
    plain = [
        [c / Fraction(sum(v * v for v in x)) for c in rank_one(x).upper_coords()]
        for x in chosen
    ]
    rational_det = linalg.det(plain)
    k, odd = divmod(n - d, 2)
    if odd:
        det_w = QSqrt2(Fraction(0), (2**k) * rational_det)
    else:
        det_w = QSqrt2((2**k) * rational_det, Fraction(0))
    if not det_w:
        raise AssertionError("certificate determinant vanished despite full rank")
    volume = abs(det_w) / QSqrt2.rational(factorial(n))
    return PerfectionCertificate(
        subset=tuple(chosen), det_w=det_w, simplex_volume=volume
    )


@dataclass(frozen=True)
class VolumeBoundReport:
    """Certificate simplex volume against the guaranteed lower bound."""

    d: int
    representative: ReductionResult
    certificate: PerfectionCertificate
    volume: QSqrt2
    bound_square: Fraction

    @property
    def ok(self) -> bool:
        return self.volume * self.volume >= QSqrt2.rational(self.bound_square)

    def __bool__(self) -> bool:
        return self.ok


def volume_lower_bound_check(q: QuadForm) -> VolumeBoundReport:
    """Certify vol of the truncated domain >= the per-class lower bound.

    The certificate is computed for the short-minimal-vector
    representative of q; its simplex volume only involves normalized
    generators x x^t / x^t x, so it is invariant under rescaling of the
    form.  Both sides square to exact rationals, so the comparison is
    exact.
    """
    if not is_perfect(q):
        raise NotPerfectError("volume bound applies to perfect forms")
    rep = small_minvec_representative(q)
    cert = perfection_certificate(rep.reduced)
    bound = exact_domain_volume_lower(q.dim)
    assert bound.pi_power == 0
    return VolumeBoundReport(
        d=q.dim,
        representative=rep,
        certificate=cert,
        volume=cert.simplex_volume,
        bound_square=bound.square,
    )


@dataclass(frozen=True)
class DisjointnessReport:
    """Interior-point inequality separating two normalized perfect domains."""

    inner_own: Fraction
    inner_other: Fraction
    minimal_subset: bool
    forms_equal: bool

    @property
    def holds(self) -> bool:
        return self.inner_other >= self.inner_own

    @property
    def strict(self) -> bool:
        return self.inner_other > self.inner_own

    def __bool__(self) -> bool:
        return self.holds


def disjointness_inequality(q1: QuadForm, q2: QuadForm) -> DisjointnessReport:
    """Evaluate <R, q2> >= <R, q1> for R = sum of x x^t over Min q1.

    Both forms are rescaled to arithmetical minimum 1 internally.  R is
    a strictly interior point of the first domain, so equality forces
    Min q1 to be contained in Min q2, which for perfect forms pins
    q2 = q1; distinct normalized perfect forms give a strict inequality.
    """
    m1 = arithmetical_minimum(q1)
    m2 = arithmetical_minimum(q2)
    n1 = q1.scaled(1 / m1.form_min)
    n2 = q2.scaled(1 / m2.form_min)
    if not is_perfect(n1) or not is_perfect(n2):
        raise NotPerfectError("disjointness inequality applies to perfect forms")
    d = q1.dim
    r = [[Fraction(0)] * d for _ in range(d)]
    for x in m1.vectors:
        for i in range(d):
            for j in range(d):
                r[i][j] += Fraction(x[i] * x[j])
    interior = QuadForm.from_rows(r)
    inner_own = interior.trace_inner(n1)
    inner_other = interior.trace_inner(n2)
    assert inner_own == m1.count()  # each normalized generator contributes 1
    subset = set(m1.vectors) <= set(m2.vectors)
    report = DisjointnessReport(
        inner_own=inner_own,
        inner_other=inner_other,
        minimal_subset=subset,
        forms_equal=n1 == n2,
    )
    if not report.holds:
        raise AssertionError("interior-point inequality violated")
    if (report.inner_other == report.inner_own) != subset:
        raise AssertionError("equality case does not match the minimal-vector subset")
    if subset and not report.forms_equal:
        raise AssertionError("shared minimal vectors must pin equal perfect forms")
    return report


@dataclass(frozen=True)
class IntegralSystem:
    """Integral vectorizations of a certificate subset, as a square system."""

    matrix_a: tuple[tuple[int, ...], ...]
    det_a: int

    def to_json(self) -> dict:
        return {"matrix_a": [list(r) for r in self.matrix_a], "det_a": self.det_a}


@dataclass(frozen=True)
class PrimitivityReport:
    """Adjugate-based integrality argument for a primitive integral form."""

    lambda1: Fraction
    system: IntegralSystem
    scaling_integer: int
    hadamard_square_bound: Fraction
    lambda1_bound_square: Fraction

    @property
    def ok(self) -> bool:
        det = abs(self.system.det_a)
        return (
            self.lambda1 <= det
            and Fraction(det) ** 2 <= self.hadamard_square_bound
            and self.lambda1**2 <= self.lambda1_bound_square
        )

    def __bool__(self) -> bool:
        return self.ok


def primitivity_scaling_check(q: QuadForm) -> PrimitivityReport:
    """Bound the minimum of a primitive integral perfect form by det(A).

    Works on the short-minimal-vector representative Q' of q (equivalent,
    integral, same entry gcd and minimum).  A stacks the integral
    vectorizations of x x^t over a certificate subset; solving
    A v = lambda1 * 1 recovers Q' exactly, the adjugate argument makes
    (det A / lambda1) * Q' integral, and primitivity forces that factor
    to be a nonzero integer, hence lambda1 <= |det A|.  Hadamard then
    caps |det A| using the short generators.
    """
    if not q.is_integral():
        raise NotIntegralError("check requires integer entries")
    if q.entry_gcd() != 1:
        raise NotPrimitiveError("check requires entry gcd 1")
    if not q.is_positive_definite():
        raise NotPositiveDefiniteError("check requires a positive definite form")
    if not is_perfect(q):
        raise NotPerfectError("check requires a perfect form")

    rep = small_minvec_representative(q)
    qr = rep.reduced
    lam = rep.scale
    cert = perfection_certificate(qr)
    rows = [rank_one(x).vectorize_integral() for x in cert.subset]
    det_a = linalg.det_int([list(r) for r in rows])
    if det_a == 0:
        raise AssertionError("certificate system is singular")
    system = IntegralSystem(matrix_a=tuple(rows), det_a=det_a)

    # The system must solve back to the representative itself.
    ones = [Fraction(lam)] * len(rows)
    solved = linalg.solve([[Fraction(v) for v in r] for r in rows], ones)
    if tuple(solved) != qr.upper_coords():
        raise AssertionError("integral system does not solve to the form")

    factor = Fraction(det_a, lam)
    scaled = qr.scaled(factor)
    if not scaled.is_integral():
        raise AssertionError("(det A / lambda1) * Q' is not integral")
    if factor.denominator != 1:
        # q primitive and factor * Q' integral force factor in Z.
        raise AssertionError("scaling factor is not an integer despite primitivity")

    d = q.dim
    n = q.sym_dim
    hadamard = Fraction(2) ** (n - d) * Fraction(d**3 * (d + 7), 8) ** n
    lam_bound = exact_lambda1_bound(d)
    assert lam_bound.pi_power == 0
    report = PrimitivityReport(
        lambda1=lam,
        system=system,
        scaling_integer=int(factor),
        hadamard_square_bound=hadamard,
        lambda1_bound_square=lam_bound.square,
    )
    if not report.ok:
        raise AssertionError("minimum bound chain failed")
    return report
