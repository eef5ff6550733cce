"""Facet enumeration for rational polyhedral cones by double description.

Given integer generators r_1, ..., r_m spanning R^n, the facet normals
of cone(r_i) are the extreme rays of the dual cone {y : <y, r_i> >= 0}.
The incremental double-description algorithm starts from a simplicial
subcone (n independent constraints) and inserts the remaining
constraints one at a time, combining adjacent positive/negative ray
pairs on each new hyperplane.  All arithmetic is integer; rays are kept
primitive.  Adjacency uses the combinatorial test with a popcount
prefilter on tight-constraint bitmasks.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import linalg

__all__ = ["dual_extreme_rays", "facet_normals_of_cone"]


def _primitive(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero ray")
    return tuple(x // g for x in v)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def dual_extreme_rays(generators) -> list[tuple[int, ...]]:
    """Extreme rays of {y : <y, g> >= 0 for all g}, for full-rank generators.

    The generators must span R^n (the dual cone is then pointed and the
    extreme rays generate it).  Returns primitive integer rays, sorted.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])

    tracker = linalg.RankTracker(n)
    base_idx: list[int] = []
    for i, g in enumerate(gens):
        if tracker.add(list(g)):
            base_idx.append(i)
        if len(base_idx) == n:
            break
    if len(base_idx) < n:
        raise ValueError("generators do not span the ambient space")

    base = [[Fraction(x) for x in gens[i]] for i in base_idx]
    inv = linalg.inverse(base)
    cols = linalg.transpose(inv)
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []
    for j, col in enumerate(cols):
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        ray = _primitive([int(x * den) for x in col])
        rays.append(ray)
        # Column j of the inverse is tight on every base constraint but j.
        mask = 0
        for jj, i in enumerate(base_idx):
            if jj != j:
                mask |= 1 << i
        tight.append(mask)

    remaining = [i for i in range(len(gens)) if i not in set(base_idx)]
    for idx in remaining:
        a = gens[idx]
        values = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(values) if v > 0]
        neg = [i for i, v in enumerate(values) if v < 0]
        zero = [i for i, v in enumerate(values) if v == 0]
        if not neg:
            for i in zero:
                tight[i] |= 1 << idx
            continue

        new_rays: list[tuple[int, ...]] = []
        new_tight: list[int] = []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if common.bit_count() < n - 2:
                    continue
                # Combinatorial adjacency: no third ray is tight on the
                # whole common set.
                adjacent = True
                for t in range(len(rays)):
                    if t != p and t != q and (tight[t] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = [
                    values[p] * rq - values[q] * rp
                    for rp, rq in zip(rays[p], rays[q])
                ]
                new_rays.append(_primitive(combo))
                new_tight.append(common | (1 << idx))

        kept_rays = [rays[i] for i in pos + zero] + new_rays
        kept_tight = (
            [tight[i] for i in pos]
            + [tight[i] | (1 << idx) for i in zero]
            + new_tight
        )
        rays, tight = kept_rays, kept_tight

    seen = {}
    for r, t in zip(rays, tight):
        seen.setdefault(r, t)
    return sorted(seen)


def facet_normals_of_cone(generators) -> list[tuple[int, ...]]:
    """Facet normals of the full-dimensional cone spanned by the generators.

    Each returned y satisfies <y, g> >= 0 for every generator with
    equality on a rank n-1 subset; together they give the irredundant
    halfspace description of the cone.
    """
    rays = dual_extreme_rays(generators)
    n = len(generators[0])
    checked = []
    for y in rays:
        tight_gens = [g for g in generators if _dot(y, g) == 0]
        if linalg.rank([list(g) for g in tight_gens]) == n - 1:
            checked.append(y)
    if len(checked) != len(rays):
        raise AssertionError("double description produced a non-facet ray")
    return checked
