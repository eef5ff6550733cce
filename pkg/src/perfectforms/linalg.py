"""Dense exact linear algebra over the rationals and integers.

Everything here works on small matrices (dimension at most a few dozen),
so plain Gaussian elimination with Fraction entries is the right tool;
integer determinants use fraction-free Bareiss elimination.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = list[Fraction]
Matrix = list[list[Fraction]]


def identity(d: int) -> Matrix:
    return [[Fraction(i == j) for j in range(d)] for i in range(d)]


def int_identity(d: int) -> list[list[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == inner
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a, v):
    assert len(a[0]) == len(v)
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def det(a: Matrix) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return result


def det_int(a) -> int:
    """Determinant of an integer matrix by Bareiss elimination (exact)."""
    n = len(a)
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def inverse(a: Matrix) -> Matrix:
    """Exact inverse; raises ValueError on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve(a: Matrix, b: Row) -> Row:
    """Solve a square nonsingular system exactly."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


class RankTracker:
    """Incremental rank of a growing set of rational vectors.

    Keeps an echelon basis of the span; `add` reports whether the vector
    increased the rank (and absorbs it if so).
    """

    def __init__(self, length: int):
        self.length = length
        self.pivots: list[tuple[int, Row]] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector) -> Row:
        v = [Fraction(x) for x in vector]
        for pos, row in self.pivots:
            if v[pos] != 0:
                f = v[pos]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, vector) -> bool:
        v = self.reduce(vector)
        pos = next((i for i, x in enumerate(v) if x != 0), None)
        if pos is None:
            return False
        inv = 1 / v[pos]
        self.pivots.append((pos, [x * inv for x in v]))
        return True


def rank(rows) -> int:
    if not rows:
        return 0
    tracker = RankTracker(len(rows[0]))
    for row in rows:
        tracker.add(row)
    return tracker.rank


def ldl_pivots(a: Matrix) -> list[Fraction] | None:
    """Pivots of the LDL^t decomposition of a symmetric matrix.

    The k-th leading principal minor equals the product of the first k
    pivots, so "all pivots positive" is the exact leading-minor test for
    positive definiteness.  Returns None as soon as a pivot fails to be
    positive (not PD or decomposition stalls).
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pivots: list[Fraction] = []
    for k in range(n):
        p = m[k][k]
        if p <= 0:
            return None
        pivots.append(p)
        for i in range(k + 1, n):
            f = m[i][k] / p
            for j in range(k + 1, n):
                m[i][j] -= f * m[k][j]
    return pivots


def quadratic_completion(a: Matrix) -> tuple[list[Fraction], Matrix]:
    """Write Q[x] = sum_i d_i (x_i + sum_{j>i} c_ij x_j)^2 for PD Q.

    Returns (diag, coeffs); raises ValueError if Q is not positive definite.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    diag: list[Fraction] = []
    coeffs = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        p = m[k][k]
        if p <= 0:
            raise ValueError("form is not positive definite")
        diag.append(p)
        for j in range(k + 1, n):
            coeffs[k][j] = m[k][j] / p
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] -= m[k][i] * m[k][j] / p
    return diag, coeffs


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primitive_int_vector(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def unimodular_completion(x) -> list[list[int]]:
    """Integer matrix with |det| = 1 whose first column is the primitive x.

    Row gcd-reduction W x = e_1 is accumulated; the completion is W^{-1}.
    """
    d = len(x)
    y = [int(v) for v in x]
    if primitive_int_vector(y) != tuple(y):
        raise ValueError("vector must be primitive")
    w = int_identity(d)
    for i in range(1, d):
        a, b = y[0], y[i]
        if b == 0:
            continue
        g, s, t = xgcd(a, b)
        row0 = [s * w[0][c] + t * w[i][c] for c in range(d)]
        rowi = [-(b // g) * w[0][c] + (a // g) * w[i][c] for c in range(d)]
        w[0], w[i] = row0, rowi
        y[0], y[i] = g, 0
    assert y[0] in (1, -1)
    if y[0] == -1:
        w[0] = [-c for c in w[0]]
    inv = inverse([[Fraction(v) for v in row] for row in w])
    u = [[int(v) for v in row] for row in inv]
    assert [row[0] for row in u] == [int(v) for v in x]
    return u
