"""Lattice reduction in the quadratic-form picture, with recorded transforms.

All algorithms act on exact rational Gram matrices and return the reduced
form together with the unimodular matrix U realizing reduced = U^t Q U.
LLL (delta = 3/4) is the preprocessing workhorse; HKZ reduction is the
recursive construction: shortest vector, basis completion, recursion on
the projected form, final size reduction.  Applying HKZ to the dual and
transporting the transform back through U^{-t} produces a representative
whose minimal vectors are short in the Euclidean sense.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .enumeration import arithmetical_minimum, successive_minima
from .errors import NotPositiveDefiniteError
from .forms import QuadForm, UnimodularMatrix

__all__ = [
    "ReductionResult",
    "TransferenceReport",
    "lll_reduce",
    "hkz_reduce",
    "small_minvec_representative",
    "transference_check",
]

LLL_DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class ReductionResult:
    """Reduced form with the transform U such that reduced = U^t Q U.

    `scale` is the arithmetical minimum of `reduced` when the producing
    operation records one (the short-representative construction does,
    so that reduced/scale is normalized to minimum 1); otherwise 1.
    """

    reduced: QuadForm
    transform: UnimodularMatrix
    scale: Fraction = field(default=Fraction(1))

    def to_json(self) -> dict:
        return {
            "reduced": self.reduced.to_json(),
            "transform": self.transform.to_json(),
            "scale": [self.scale.numerator, self.scale.denominator],
        }


def _gso(g):
    """Gram-Schmidt data (mu, B) of a PD Gram matrix, exactly."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    r = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i + 1):
            r[i][j] = g[i][j] - sum(mu[j][k] * r[i][k] for k in range(j))
            if j < i:
                mu[i][j] = r[i][j] / r[j][j]
        b[i] = r[i][i]
        if b[i] <= 0:
            raise NotPositiveDefiniteError("form is not positive definite")
    return mu, b


def _col_op(g, u, k, j, m):
    """b_k <- b_k - m b_j on the Gram matrix g and transform columns u."""
    d = len(g)
    for r_ in range(d):
        g[r_][k] -= m * g[r_][j]
    for c_ in range(d):
        g[k][c_] -= m * g[j][c_]
    for r_ in range(d):
        u[r_][k] -= m * u[r_][j]


def _col_swap(g, u, k):
    g[k], g[k - 1] = g[k - 1], g[k]
    for row in g:
        row[k], row[k - 1] = row[k - 1], row[k]
    for row in u:
        row[k], row[k - 1] = row[k - 1], row[k]


def lll_reduce(q: QuadForm, delta: Fraction = LLL_DELTA) -> ReductionResult:
    """LLL reduction with an exact rational Lovasz condition."""
    if not q.is_positive_definite():
        raise NotPositiveDefiniteError("LLL requires a positive definite form")
    d = q.dim
    g = q.rows()
    u = linalg.int_identity(d)
    k = 1
    while k < d:
        mu, b = _gso(g)
        for j in range(k - 1, -1, -1):
            m = round(mu[k][j])
            if m != 0:
                _col_op(g, u, k, j, m)
                mu, b = _gso(g)
        if b[k] >= (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            k += 1
        else:
            _col_swap(g, u, k)
            k = max(k - 1, 1)
    return ReductionResult(QuadForm.from_rows(g), UnimodularMatrix.from_rows(u))


def _size_reduce(q: QuadForm) -> tuple[QuadForm, UnimodularMatrix]:
    """Make all |mu_ij| <= 1/2 without touching the orthogonalization."""
    d = q.dim
    g = q.rows()
    u = linalg.int_identity(d)
    for i in range(1, d):
        for j in range(i - 1, -1, -1):
            mu, _ = _gso(g)
            m = round(mu[i][j])
            if m != 0:
                _col_op(g, u, i, j, m)
    return QuadForm.from_rows(g), UnimodularMatrix.from_rows(u)


def _block_lift(v: UnimodularMatrix) -> UnimodularMatrix:
    """Embed a (d-1)-dimensional transform as diag(1, V)."""
    d = v.dim + 1
    rows = [[1] + [0] * (d - 1)]
    for row in v.entries:
        rows.append([0] + list(row))
    return UnimodularMatrix.from_rows(rows)


def hkz_reduce(q: QuadForm) -> ReductionResult:
    """Hermite-Korkine-Zolotarev reduction.

    The first basis vector of the result attains the arithmetical
    minimum, each orthogonal projection is recursively shortest, and the
    basis is size-reduced; the diagonal then satisfies
    Q'_ii <= (i+3)/4 * lambda_i(Q) for every i.
    """
    if not q.is_positive_definite():
        raise NotPositiveDefiniteError("HKZ requires a positive definite form")
    d = q.dim
    if d == 1:
        return ReductionResult(q, UnimodularMatrix.identity(1))
    pre = lll_reduce(q)
    minimal = arithmetical_minimum(pre.reduced)
    x = min(minimal.vectors)  # shortest-vector ties broken lexicographically
    u1 = UnimodularMatrix.from_rows(linalg.unimodular_completion(list(x)))
    q1 = pre.reduced.apply_unimodular(u1)
    assert q1.entries[0][0] == minimal.form_min
    a = q1.rows()
    p = a[0][0]
    # Gram matrix of the projection onto the orthogonal complement of b_1.
    projected = QuadForm.from_rows(
        [
            [a[i][j] - a[i][0] * a[0][j] / p for j in range(1, d)]
            for i in range(1, d)
        ]
    )
    rec = hkz_reduce(projected)
    u2 = _block_lift(rec.transform)
    q2 = q1.apply_unimodular(u2)
    q3, u3 = _size_reduce(q2)
    total = pre.transform @ u1 @ u2 @ u3
    return ReductionResult(q3, total)


def small_minvec_representative(q: QuadForm) -> ReductionResult:
    """Equivalent form whose minimal vectors have small Euclidean norm.

    HKZ-reduce the dual and transport the transform back through U^{-t}.
    After normalizing the result to arithmetical minimum 1 (divide by
    `scale`), every minimal vector x satisfies x^t x <= d^3 (d+7) / 8.
    The unscaled, integrality-friendly form is returned.
    """
    dual_reduction = hkz_reduce(q.dual())
    u = dual_reduction.transform.inverse().transpose()
    reduced = q.apply_unimodular(u)
    lam = arithmetical_minimum(reduced).form_min
    return ReductionResult(reduced, u, scale=lam)


@dataclass(frozen=True)
class TransferenceReport:
    """Products lambda_i(Q) * lambda_{d-i+1}(Q^{-1}) against the d^2 cap."""

    products: tuple[Fraction, ...]
    limit: Fraction
    minima: tuple[Fraction, ...]
    dual_minima: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return all(p <= self.limit for p in self.products)

    def __bool__(self) -> bool:
        return self.ok


def transference_check(q: QuadForm) -> TransferenceReport:
    """Check lambda_i(Q) * lambda_{d-i+1}(Q^{-1}) <= d^2 for all i, exactly."""
    d = q.dim
    primal = successive_minima(q, d)
    dual = successive_minima(q.dual(), d)
    products = tuple(
        primal.values[i] * dual.values[d - 1 - i] for i in range(d)
    )
    return TransferenceReport(
        products=products,
        limit=Fraction(d * d),
        minima=primal.values,
        dual_minima=dual.values,
    )
