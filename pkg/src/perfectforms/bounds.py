"""Overflow-safe evaluation of the volume and counting bound formulas.

Factorials of n = d(d+1)/2 overflow fixed-width floats around d = 30, so
every bound is evaluated in natural-log space with mpmath at a working
precision of PERFECTFORMS_PRECISION_BITS bits (default 200).  For small
dimensions each quantity is also available exactly: all four bounds have
rational squares up to a power of pi, captured by :class:`ExactBound`.

Quantities (d the form dimension, n = d(d+1)/2):

* ``domain_volume_lower``: guaranteed volume of a perfect form's
  trace-truncated Voronoi domain after moving to a short-minimal-vector
  representative: 2^{(n-d)/2} / (n! * (d^3 (d+7) / 8)^n).
* ``cone_section_volume_upper``: volume of the positive semidefinite
  cone cut by the unit-trace half-space, bounded by the cone over an
  enclosing (n-1)-ball of radius sqrt((d-1)/d) at height 1/sqrt(d).
* ``class_count_bound``: their ratio, an upper bound on the number of
  similarity classes of perfect forms in dimension d.
* ``lambda1_bound``: 2^{-(n+d/2)} (d^3(d+7))^{n/2}, an upper bound on
  the arithmetical minimum of a primitive integral perfect form.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .sqrt2 import QSqrt2

__all__ = [
    "BoundReport",
    "ExactBound",
    "precision_bits",
    "working_precision",
    "log_ball_volume",
    "log_domain_volume_lower",
    "log_cone_section_volume_upper",
    "log_class_count_bound",
    "log_lambda1_bound",
    "exact_domain_volume_lower",
    "exact_cone_section_volume_upper",
    "exact_class_count_bound",
    "exact_lambda1_bound",
    "bound_report",
    "relative_gap",
    "simplex_volume",
]

PRECISION_ENV = "PERFECTFORMS_PRECISION_BITS"
DEFAULT_PRECISION_BITS = 200


def precision_bits() -> int:
    raw = os.environ.get(PRECISION_ENV, "")
    try:
        bits = int(raw)
    except ValueError:
        bits = DEFAULT_PRECISION_BITS
    return max(bits, 64) if raw else DEFAULT_PRECISION_BITS


def working_precision():
    """Context manager pinning mpmath to the configured precision.

    Arithmetic combining the log values returned here (sums, gaps) must
    run inside this context, or it silently rounds to the caller's
    precision.
    """
    return mpmath.workprec(precision_bits())


def _log_fraction(x: Fraction) -> mpmath.mpf:
    return mpmath.log(mpmath.mpf(x.numerator)) - mpmath.log(mpmath.mpf(x.denominator))


def _require_dim(d: int) -> int:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    return d * (d + 1) // 2


def log_ball_volume(n: int) -> mpmath.mpf:
    """ln of the n-dimensional unit-ball volume pi^{n/2} / Gamma(n/2 + 1)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    with mpmath.workprec(precision_bits()):
        return mpmath.mpf(n) / 2 * mpmath.log(mpmath.pi) - mpmath.loggamma(
            mpmath.mpf(n) / 2 + 1
        )


def log_domain_volume_lower(d: int) -> mpmath.mpf:
    n = _require_dim(d)
    with mpmath.workprec(precision_bits()):
        return (
            mpmath.mpf(n - d) / 2 * mpmath.log(2)
            - mpmath.loggamma(n + 1)
            - n * _log_fraction(Fraction(d**3 * (d + 7), 8))
        )


def log_cone_section_volume_upper(d: int) -> mpmath.mpf:
    n = _require_dim(d)
    with mpmath.workprec(precision_bits()):
        return (
            -mpmath.log(n)
            - mpmath.log(d) / 2
            + mpmath.mpf(n - 1) / 2 * (mpmath.log(d - 1) - mpmath.log(d))
            + log_ball_volume(n - 1)
        )


def log_class_count_bound(d: int) -> mpmath.mpf:
    """ln of (n-1)!/Gamma(n/2+1/2) * sqrt(pi^{n-1}/2^{7n-d} * (d-1)^{n-1}/d^n) * (d^3(d+7))^n."""
    n = _require_dim(d)
    with mpmath.workprec(precision_bits()):
        half = (
            (n - 1) * mpmath.log(mpmath.pi)
            - (7 * n - d) * mpmath.log(2)
            + (n - 1) * mpmath.log(d - 1)
            - n * mpmath.log(d)
        ) / 2
        return (
            mpmath.loggamma(n)
            - mpmath.loggamma(mpmath.mpf(n) / 2 + mpmath.mpf(1) / 2)
            + half
            + n * mpmath.log(d**3 * (d + 7))
        )


def log_lambda1_bound(d: int) -> mpmath.mpf:
    n = _require_dim(d)
    with mpmath.workprec(precision_bits()):
        return -(n + mpmath.mpf(d) / 2) * mpmath.log(2) + mpmath.mpf(n) / 2 * mpmath.log(
            d**3 * (d + 7)
        )


@dataclass(frozen=True)
class ExactBound:
    """Exact value sqrt(square * pi^pi_power) with rational `square`."""

    square: Fraction
    pi_power: int = 0

    def log(self) -> mpmath.mpf:
        with mpmath.workprec(precision_bits()):
            return (
                _log_fraction(self.square) + self.pi_power * mpmath.log(mpmath.pi)
            ) / 2

    def __float__(self) -> float:
        return float(mpmath.exp(self.log()))


def _gamma_square(two_a: int) -> tuple[Fraction, int]:
    """Gamma(a)^2 = q * pi^e for 2a = two_a a positive integer."""
    if two_a <= 0:
        raise ValueError("argument must be positive")
    if two_a % 2 == 0:
        return Fraction(factorial(two_a // 2 - 1)) ** 2, 0
    k = (two_a - 1) // 2  # Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    return Fraction(factorial(2 * k), 4**k * factorial(k)) ** 2, 1


def exact_domain_volume_lower(d: int) -> ExactBound:
    n = _require_dim(d)
    square = Fraction(2) ** (n - d) / (
        Fraction(factorial(n)) ** 2 * Fraction(d**3 * (d + 7), 8) ** (2 * n)
    )
    return ExactBound(square)


def exact_cone_section_volume_upper(d: int) -> ExactBound:
    n = _require_dim(d)
    gamma_sq, gamma_pi = _gamma_square(n + 1)  # Gamma((n+1)/2)^2
    square = (
        Fraction(1, n * n * d)
        * Fraction(d - 1, d) ** (n - 1)
        / gamma_sq
    )
    return ExactBound(square, (n - 1) - gamma_pi)


def exact_class_count_bound(d: int) -> ExactBound:
    n = _require_dim(d)
    gamma_sq, gamma_pi = _gamma_square(n + 1)  # Gamma(n/2 + 1/2)^2
    square = (
        Fraction(factorial(n - 1)) ** 2
        / gamma_sq
        * Fraction(d - 1) ** (n - 1)
        / (Fraction(2) ** (7 * n - d) * Fraction(d) ** n)
        * Fraction(d**3 * (d + 7)) ** (2 * n)
    )
    return ExactBound(square, (n - 1) - gamma_pi)


def exact_lambda1_bound(d: int) -> ExactBound:
    n = _require_dim(d)
    square = Fraction(d**3 * (d + 7)) ** n / Fraction(2) ** (2 * n + d)
    return ExactBound(square)


@dataclass(frozen=True)
class BoundReport:
    """Log-space values of all bound formulas for one dimension."""

    d: int
    n: int
    log_domain_lower: mpmath.mpf
    log_cone_upper: mpmath.mpf
    log_count_bound: mpmath.mpf
    log_lambda1_bound: mpmath.mpf


def bound_report(d: int) -> BoundReport:
    n = _require_dim(d)
    return BoundReport(
        d=d,
        n=n,
        log_domain_lower=log_domain_volume_lower(d),
        log_cone_upper=log_cone_section_volume_upper(d),
        log_count_bound=log_class_count_bound(d),
        log_lambda1_bound=log_lambda1_bound(d),
    )


def relative_gap(a, b) -> mpmath.mpf:
    """|a - b| / |a| evaluated at the configured working precision.

    mpf values computed here carry full precision, but arithmetic at the
    caller's (usually 53-bit) context would destroy it; comparisons of
    log-space bounds should go through this helper.
    """
    with mpmath.workprec(precision_bits()):
        a = mpmath.mpf(a)
        b = mpmath.mpf(b)
        if a == 0:
            return abs(b)
        return abs(a - b) / abs(a)


def simplex_volume(points):
    """Exact volume (1/n!)|det| of the simplex spanned by 0 and n points.

    Accepts rows of rationals or of QSqrt2 values; returns the matching
    exact type.  Zero iff the points are linearly dependent.
    """
    n = len(points)
    if any(len(p) != n for p in points):
        raise ValueError("need n points of length n")
    has_sqrt2 = any(isinstance(x, QSqrt2) for p in points for x in p)
    if has_sqrt2:
        m = [
            [x if isinstance(x, QSqrt2) else QSqrt2.rational(x) for x in p]
            for p in points
        ]
        det = _det_field(m, QSqrt2.rational(0), QSqrt2.rational(1))
        return abs(det) / QSqrt2.rational(factorial(n))
    from . import linalg

    det = linalg.det([[Fraction(x) for x in p] for p in points])
    return abs(det) / factorial(n)


def _det_field(m, zero, one):
    """Determinant by Gaussian elimination over any exact field."""
    n = len(m)
    m = [row[:] for row in m]
    det = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != zero), None)
        if pivot is None:
            return zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != zero:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det
