"""Exact geometric kernel: points, segments, predicates, bundle order.

Input segments carry integer coordinates, so every predicate here reduces
to integer (or exact rational) sign computations.  Intersection points of
integer segments are exact rationals.

Degenerate-input conventions used across the whole package:

* closed semantics: touching counts as intersecting, everywhere;
* a *bundle* is a set of segments sharing a support line; within a bundle
  the segment with the larger id is treated as infinitesimally higher
  (ascending-id order, independent of insertion order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from gmpy2 import mpq

from .exact import Scalar, rat

Point = Tuple[Scalar, Scalar]  # compares lexicographically, which is the order we want

CCW = 1
COLLINEAR = 0
CW = -1


class GeometryError(ValueError):
    """Raised on precondition violations (misuse, not degenerate input)."""


@dataclass
class Segment:
    """Input segment; ``left`` precedes ``right`` lexicographically.

    ``priority`` is the position in the random insertion order; it is
    assigned once by the index build and never changes afterwards.
    """

    id: int
    left: Point
    right: Point
    priority: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.left > self.right:
            self.left, self.right = self.right, self.left
        if self.left[0] == self.right[0]:
            raise GeometryError(
                f"segment {self.id} is vertical (x={self.left[0]}); not supported"
            )

    def y_at(self, x: Scalar) -> Scalar:
        """Exact y of the support line at x."""
        (lx, ly), (rx, ry) = self.left, self.right
        return rat(ly * (rx - x) + ry * (x - lx), rx - lx)

    def covers_x(self, x: Scalar) -> bool:
        return self.left[0] <= x <= self.right[0]

    def contains_point(self, p: Point) -> bool:
        """Closed containment of p in the segment."""
        if not self.covers_x(p[0]):
            return False
        return orientation(self.left, self.right, p) == COLLINEAR


def make_segment(sid: int, x1, y1, x2, y2) -> Segment:
    return Segment(sid, (x1, y1), (x2, y2))


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): CCW / COLLINEAR / CW."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if v > 0:
        return CCW
    if v < 0:
        return CW
    return COLLINEAR


ABOVE = 1
ON = 0
BELOW = -1


def point_vs_segment(p: Point, s: Segment) -> int:
    """Vertical position of p relative to the line through s (ABOVE/ON/BELOW).

    Precondition: p.x lies within s's x-span.
    """
    if not s.covers_x(p[0]):
        raise GeometryError(
            f"point x={p[0]} outside x-span of segment {s.id}"
        )
    return orientation(s.left, s.right, p)


def side_of_line(p: Point, s: Segment) -> int:
    """Like point_vs_segment but without the x-span precondition."""
    return orientation(s.left, s.right, p)


def collinear_segments(a: Segment, b: Segment) -> bool:
    return (
        orientation(a.left, a.right, b.left) == COLLINEAR
        and orientation(a.left, a.right, b.right) == COLLINEAR
    )


def bundle_compare(a: Segment, b: Segment) -> int:
    """Strict total order on a collinear family: ascending id, larger is higher."""
    if not collinear_segments(a, b):
        raise GeometryError(
            f"bundle_compare on non-collinear segments {a.id}, {b.id}"
        )
    return (a.id > b.id) - (a.id < b.id)


@dataclass(frozen=True)
class IntersectionKind:
    kind: str  # "none" | "point" | "overlap"
    p0: Optional[Point] = None
    p1: Optional[Point] = None


NO_INTERSECTION = IntersectionKind("none")


def intersect(a: Segment, b: Segment) -> IntersectionKind:
    """Exact closed intersection of two segments.

    Returns AtPoint for crossings and touchings (including shared
    endpoints), Overlap with the shared sub-segment for collinear overlap.
    """
    p, q = a.left, a.right
    r, s = b.left, b.right
    d1x, d1y = q[0] - p[0], q[1] - p[1]
    d2x, d2y = s[0] - r[0], s[1] - r[1]
    denom = d1x * d2y - d1y * d2x
    if denom == 0:
        if orientation(p, q, r) != COLLINEAR:
            return NO_INTERSECTION  # parallel, distinct lines
        lo = max(p, r)
        hi = min(q, s)
        if lo > hi:
            return NO_INTERSECTION
        if lo == hi:
            return IntersectionKind("point", lo)
        return IntersectionKind("overlap", lo, hi)
    # lines cross at parameter t along a: t = ((r-p) x d2) / denom
    tn = (r[0] - p[0]) * d2y - (r[1] - p[1]) * d2x
    un = (r[0] - p[0]) * d1y - (r[1] - p[1]) * d1x
    # t in [0,1] and u in [0,1], sign-aware without division
    if denom > 0:
        if tn < 0 or tn > denom or un < 0 or un > denom:
            return NO_INTERSECTION
    else:
        if tn > 0 or tn < denom or un > 0 or un < denom:
            return NO_INTERSECTION
    px = rat(p[0] * denom + tn * d1x, denom)
    py = rat(p[1] * denom + tn * d1y, denom)
    return IntersectionKind("point", (px, py))


def segment_hits_vertical(s: Segment, x: Scalar, y0: Scalar, y1: Scalar) -> bool:
    """Closed intersection test of a segment with the vertical segment
    x = const, y in [y0, y1].  Division-free."""
    (lx, ly), (rx, ry) = s.left, s.right
    if x < lx or x > rx:
        return False
    dx = rx - lx
    num = ly * (rx - x) + ry * (x - lx)  # y_at(x) * dx, dx > 0
    return y0 * dx <= num <= y1 * dx


def proper_crossing_at(a: Segment, b: Segment, p: Point) -> bool:
    """True when a and b properly cross at p: non-collinear and p is
    interior to both (not an endpoint of either)."""
    if p in (a.left, a.right) or p in (b.left, b.right):
        return False
    if collinear_segments(a, b):
        return False
    return a.contains_point(p) and b.contains_point(p)
