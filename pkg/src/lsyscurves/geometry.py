"""Affine geometry primitives: points, affine combinations, perspective projection.

Points are immutable values in 2 or 3 dimensions.  The only way to combine
them is an affine combination, i.e. a weighted sum whose coefficients add up
to 1, which is origin-independent by construction.  Rational curves lean on
the z=1 perspective projection and its weighted-lift inverse.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import AffineError, DimensionError, ProjectionError, WeightError

AFFINE_SUM_TOL = 1e-9
PROJECTION_Z_TOL = 1e-12


class Point:
    """An immutable position in 2-D or 3-D space."""

    __slots__ = ("coords",)

    def __init__(self, *coords: float):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) not in (2, 3):
            raise DimensionError(f"points must be 2-D or 3-D, got {len(coords)} coordinates")
        cs = tuple(float(c) for c in coords)
        for c in cs:
            if not math.isfinite(c):
                raise DimensionError(f"point coordinates must be finite, got {cs}")
        self.coords = cs

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Point" + repr(self.coords)


class WeightedPoint:
    """A 2-D base point with a positive weight, for rational curves."""

    __slots__ = ("base", "weight")

    def __init__(self, base: Point, weight: float):
        if base.dim != 2:
            raise DimensionError("weighted points must have a 2-D base")
        weight = float(weight)
        if not (weight > 0):
            raise WeightError(f"weight must be positive, got {weight}")
        self.base = base
        self.weight = weight

    def __eq__(self, other):
        return (
            isinstance(other, WeightedPoint)
            and self.base == other.base
            and self.weight == other.weight
        )

    def __repr__(self):
        return f"WeightedPoint({self.base!r}, {self.weight!r})"


def affine_combine(coeffs: Sequence[float], points: Sequence[Point]) -> Point:
    """Combine points with coefficients summing to 1.

    The combination is evaluated in vector form anchored at the first point,
    so the result is translation-invariant and bit-reproducible:
    ``p0 + sum(a_i * (p_i - p0))``.
    """
    if len(coeffs) != len(points):
        raise DimensionError(
            f"{len(coeffs)} coefficients for {len(points)} points"
        )
    if not points:
        raise DimensionError("affine combination of zero points")
    dim = points[0].dim
    for p in points:
        if p.dim != dim:
            raise DimensionError("mixed point dimensions in affine combination")
    total = math.fsum(coeffs)
    if abs(total - 1.0) > AFFINE_SUM_TOL:
        raise AffineError(f"affine coefficients sum to {total!r}, expected 1")
    p0 = points[0].coords
    acc = list(p0)
    for a, p in zip(coeffs[1:], points[1:]):
        pc = p.coords
        for k in range(dim):
            acc[k] += a * (pc[k] - p0[k])
    return Point(*acc)


def project_to_plane(p: Point) -> Point:
    """Perspective projection of a 3-D point onto the plane z=1."""
    if p.dim != 3:
        raise DimensionError("projection expects a 3-D point")
    x, y, z = p.coords
    if abs(z) <= PROJECTION_Z_TOL:
        raise ProjectionError(f"cannot project point with z={z!r}")
    return Point(x / z, y / z)


def lift_with_weight(wp: WeightedPoint) -> Point:
    """Lift a weighted 2-D point to the 3-D representative (w*x, w*y, w)."""
    x, y = wp.base.coords
    w = wp.weight
    return Point(w * x, w * y, w)


def distance(p: Point, q: Point) -> float:
    if p.dim != q.dim:
        raise DimensionError("distance between points of different dimensions")
    return math.sqrt(math.fsum((a - b) ** 2 for a, b in zip(p.coords, q.coords)))


def translate(p: Point, offset: Iterable[float]) -> Point:
    return Point(*(a + b for a, b in zip(p.coords, offset)))
