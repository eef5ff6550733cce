"""Exception types shared across the package."""


class NotPositiveDefiniteError(ValueError):
    """Operation requires a positive definite form."""


class NotPerfectError(ValueError):
    """Operation requires a perfect form (full-rank Voronoi domain)."""


class NotIntegralError(ValueError):
    """Operation requires integer matrix entries."""


class NotPrimitiveError(ValueError):
    """Operation requires a primitive integral form (entry gcd 1)."""


class DimensionCapError(ValueError):
    """Requested dimension exceeds the configured cap for this operation."""


class InvalidFacetError(ValueError):
    """Supplied functional is not a facet of the given Voronoi domain."""


class NeighborSearchError(RuntimeError):
    """The contiguous-form search failed; never silently ignored."""
