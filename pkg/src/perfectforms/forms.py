"""Quadratic forms as exact symmetric rational matrices.

A form is the map x -> x^t Q x attached to a symmetric matrix Q.  The
module provides the trace inner product, the isometric vectorization
into R^n (n = d(d+1)/2, off-diagonal coordinates scaled by sqrt(2)), the
integral vectorization (off-diagonal entries doubled), the unimodular
action Q -> U^t Q U, and duality Q -> Q^{-1}.

All arithmetic is exact; irrational sqrt(2) factors are kept symbolic
via :class:`perfectforms.sqrt2.QSqrt2`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import linalg
from .errors import NotIntegralError, NotPositiveDefiniteError
from .sqrt2 import QSqrt2


@lru_cache(maxsize=None)
def index_pairs(d: int) -> tuple[tuple[int, int], ...]:
    """Row-major ordering of the index pairs (i, j) with i <= j."""
    return tuple((i, j) for i in range(d) for j in range(i, d))


def _as_fraction_rows(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class QuadForm:
    """Symmetric d x d matrix over exact rationals."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = _as_fraction_rows(self.entries)
        object.__setattr__(self, "entries", rows)
        d = len(rows)
        if d < 1:
            raise ValueError("dimension must be at least 1")
        if any(len(row) != d for row in rows):
            raise ValueError("matrix must be square")
        for i in range(d):
            for j in range(i + 1, d):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "QuadForm":
        return QuadForm(_as_fraction_rows(rows))

    @staticmethod
    def identity(d: int) -> "QuadForm":
        return QuadForm.from_rows(linalg.identity(d))

    @staticmethod
    def from_upper_coords(d: int, coords) -> "QuadForm":
        """Rebuild a form from its upper-triangle entries in pair order."""
        pairs = index_pairs(d)
        if len(coords) != len(pairs):
            raise ValueError("coordinate count does not match dimension")
        m = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), v in zip(pairs, coords):
            m[i][j] = Fraction(v)
            m[j][i] = Fraction(v)
        return QuadForm.from_rows(m)

    # -- basic structure ------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def sym_dim(self) -> int:
        """Dimension d(d+1)/2 of the ambient space of symmetric matrices."""
        d = self.dim
        return d * (d + 1) // 2

    def rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def upper_coords(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][j] for i, j in index_pairs(self.dim))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def entry_gcd(self) -> int:
        """gcd of the matrix entries; defined for integral forms only."""
        if not self.is_integral():
            raise NotIntegralError("form has non-integer entries")
        g = 0
        for row in self.entries:
            for x in row:
                g = gcd(g, int(x))
        return g

    def scaled(self, alpha) -> "QuadForm":
        alpha = Fraction(alpha)
        return QuadForm.from_rows(
            [[alpha * x for x in row] for row in self.entries]
        )

    def trace(self) -> Fraction:
        return sum(self.entries[i][i] for i in range(self.dim))

    def det(self) -> Fraction:
        return linalg.det(self.rows())

    # -- quadratic form operations ---------------------------------------

    def evaluate(self, x) -> Fraction:
        """Value x^t Q x at an integer (or rational) vector."""
        if len(x) != self.dim:
            raise ValueError("vector length does not match form dimension")
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.entries[i]
            total += xi * sum(row[j] * xj for j, xj in enumerate(x) if xj != 0)
        return total

    __call__ = evaluate

    def trace_inner(self, other: "QuadForm") -> Fraction:
        """Trace inner product sum_ij P_ij Q_ij."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return sum(
            p * q
            for prow, qrow in zip(self.entries, other.entries)
            for p, q in zip(prow, qrow)
        )

    def vectorize(self) -> "VectorizedForm":
        """Isometric embedding into R^n: off-diagonal entries get sqrt(2)."""
        coords = []
        for i, j in index_pairs(self.dim):
            if i == j:
                coords.append(QSqrt2.rational(self.entries[i][i]))
            else:
                coords.append(QSqrt2.sqrt2_times(self.entries[i][j]))
        return VectorizedForm(tuple(coords))

    def vectorize_integral(self) -> tuple[int, ...]:
        """Integral embedding: diagonal kept, off-diagonal entries doubled."""
        if not self.is_integral():
            raise NotIntegralError("integral vectorization needs integer entries")
        out = []
        for i, j in index_pairs(self.dim):
            v = self.entries[i][j]
            out.append(int(v) if i == j else 2 * int(v))
        return tuple(out)

    def apply_unimodular(self, u: "UnimodularMatrix") -> "QuadForm":
        """Change of variables Q -> U^t Q U."""
        if u.dim != self.dim:
            raise ValueError("dimension mismatch")
        urows = [[Fraction(v) for v in row] for row in u.entries]
        m = linalg.mat_mul(linalg.mat_mul(linalg.transpose(urows), self.rows()), urows)
        return QuadForm.from_rows(m)

    def dual(self) -> "QuadForm":
        """Inverse matrix; defined for positive definite forms."""
        if not self.is_positive_definite():
            raise NotPositiveDefiniteError("dual requires a positive definite form")
        return QuadForm.from_rows(linalg.inverse(self.rows()))

    def is_positive_definite(self) -> bool:
        """Exact test: all leading principal minors positive."""
        return linalg.ldl_pivots(self.rows()) is not None

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        flat = [
            [x.numerator, x.denominator] for row in self.entries for x in row
        ]
        return {"dim": self.dim, "entries": flat}

    @staticmethod
    def from_json(doc: dict) -> "QuadForm":
        d = int(doc["dim"])
        raw = doc["entries"]
        nested = len(raw) == d and all(
            isinstance(r, (list, tuple))
            and len(r) == d
            and all(isinstance(c, (list, tuple)) for c in r)
            for r in raw
        )
        cells = [x for row in raw for x in row] if nested else list(raw)
        if len(cells) != d * d:
            raise ValueError("entry count does not match dimension")
        vals = [Fraction(int(num), int(den)) for num, den in cells]
        m = [[Fraction(0)] * d for _ in range(d)]
        # Upper triangle is authoritative; symmetry is enforced on read.
        for i in range(d):
            for j in range(d):
                if j >= i:
                    m[i][j] = vals[i * d + j]
        for i in range(d):
            for j in range(i):
                m[i][j] = m[j][i]
        return QuadForm.from_rows(m)


@dataclass(frozen=True)
class VectorizedForm:
    """Image of a symmetric matrix in R^n with symbolic sqrt(2) factors."""

    coords: tuple[QSqrt2, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def source_dim(self) -> int:
        d = (isqrt(8 * self.n + 1) - 1) // 2
        if d * (d + 1) // 2 != self.n:
            raise ValueError("length is not a triangular number")
        return d

    def dot(self, other: "VectorizedForm") -> QSqrt2:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        total = QSqrt2.rational(0)
        for x, y in zip(self.coords, other.coords):
            total = total + x * y
        return total

    def to_quadform(self) -> QuadForm:
        d = self.source_dim
        m = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), c in zip(index_pairs(d), self.coords):
            if i == j:
                if c.b != 0:
                    raise ValueError("diagonal coordinate carries a sqrt(2) part")
                m[i][i] = c.a
            else:
                if c.a != 0:
                    raise ValueError("off-diagonal coordinate has a rational part")
                m[i][j] = c.b
                m[j][i] = c.b
        return QuadForm.from_rows(m)


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer matrix with determinant +-1 (checked exactly)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        d = len(rows)
        if d < 1 or any(len(row) != d for row in rows):
            raise ValueError("matrix must be square")
        if linalg.det_int([list(r) for r in rows]) not in (1, -1):
            raise ValueError("matrix is not unimodular")

    @staticmethod
    def from_rows(rows) -> "UnimodularMatrix":
        return UnimodularMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @staticmethod
    def identity(d: int) -> "UnimodularMatrix":
        return UnimodularMatrix.from_rows(linalg.int_identity(d))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "UnimodularMatrix":
        return UnimodularMatrix.from_rows(linalg.transpose(self.rows()))

    def inverse(self) -> "UnimodularMatrix":
        inv = linalg.inverse([[Fraction(x) for x in row] for row in self.rows()])
        return UnimodularMatrix.from_rows([[int(x) for x in row] for row in inv])

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix.from_rows(linalg.mat_mul(self.rows(), other.rows()))

    def apply(self, x) -> tuple[int, ...]:
        """Matrix-vector product U x over the integers."""
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return tuple(
            sum(row[k] * int(x[k]) for k in range(self.dim)) for row in self.entries
        )

    def to_json(self) -> list[list[int]]:
        return self.rows()
