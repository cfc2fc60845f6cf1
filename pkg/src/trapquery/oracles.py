"""Ground-truth oracles: brute-force queries and a naive trapezoidation.

Everything here is written for clarity and independence from the search
structures it validates: the trapezoidation is a global O((n+I)^2) sweep
that shoots rays from every event site, and the query oracles are linear
scans.  These define the expected answers for all equivalence tests.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Sequence, Set, Tuple

from .exact import NEG_INF, POS_INF, Scalar, midpoint
from .geom import Point, Segment, intersect

DEFAULT_SIZE_BOUND = 64

ORACLE_TOP = -1
ORACLE_BOT = -2


class OracleBoundExceeded(ValueError):
    pass


def brute_force_vertical_query(segments: Sequence[Segment], x: Scalar,
                               y0: Scalar, y1: Scalar) -> Set[int]:
    """All segment ids whose closed segment meets the vertical segment
    x = const, y in [y0, y1].  Uses explicit exact division, deliberately
    different from the kernel's cross-multiplied test."""
    out = set()
    for s in segments:
        if s.left[0] <= x <= s.right[0]:
            y = s.y_at(x)
            if y0 <= y <= y1:
                out.add(s.id)
    return out


def brute_force_window_query(segments: Sequence[Segment],
                             xmin: Scalar, ymin: Scalar,
                             xmax: Scalar, ymax: Scalar) -> Set[int]:
    """All segment ids meeting the closed axis-aligned rectangle, by exact
    parametric clipping against the two coordinate slabs."""
    out = set()
    for s in segments:
        if _segment_meets_rect(s, xmin, ymin, xmax, ymax):
            out.add(s.id)
    return out


def _segment_meets_rect(s: Segment, xmin, ymin, xmax, ymax) -> bool:
    (px, py), (qx, qy) = s.left, s.right
    # t in [0,1] with p + t*(q-p) inside the rect; bounds kept as exact
    # fractions with positive denominators
    lo_n, lo_d = 0, 1
    hi_n, hi_d = 1, 1
    for delta, low, high in ((qx - px, xmin - px, xmax - px),
                             (qy - py, ymin - py, ymax - py)):
        if delta == 0:
            if low > 0 or high < 0:
                return False
            continue
        if delta > 0:
            cand_lo = (low, delta)
            cand_hi = (high, delta)
        else:
            cand_lo = (-high, -delta)
            cand_hi = (-low, -delta)
        if cand_lo[0] * lo_d > lo_n * cand_lo[1]:
            lo_n, lo_d = cand_lo
        if cand_hi[0] * hi_d < hi_n * cand_hi[1]:
            hi_n, hi_d = cand_hi
    return lo_n * hi_d <= hi_n * lo_d


def collect_sites(segments: Sequence[Segment]) -> Dict[Point, List[int]]:
    """Every event site (endpoint or pairwise intersection point) mapped to
    the sorted ids of all segments passing through it (closed)."""
    pts: Set[Point] = set()
    for s in segments:
        pts.add(s.left)
        pts.add(s.right)
    n = len(segments)
    for i in range(n):
        for j in range(i + 1, n):
            r = intersect(segments[i], segments[j])
            if r.kind == "point":
                pts.add(r.p0)
            # overlaps create no intersection sites
    return {
        p: [s.id for s in segments if s.contains_point(p)]
        for p in sorted(pts)
    }


def proper_crossing_count(segments: Sequence[Segment]) -> int:
    """Distinct points where at least one pair of segments properly crosses
    (non-collinear, interior to both); multi-intersections count once."""
    return sum(
        1
        for p, through in collect_sites(segments).items()
        if _site_is_proper_crossing(segments, p, through)
    )


def _site_is_proper_crossing(segments, p, through) -> bool:
    by_id = {s.id: s for s in segments}
    interior = [by_id[sid] for sid in through
                if p != by_id[sid].left and p != by_id[sid].right]
    for i in range(len(interior)):
        a = interior[i]
        adx = a.right[0] - a.left[0]
        ady = a.right[1] - a.left[1]
        for b in interior[i + 1:]:
            if adx * (b.right[1] - b.left[1]) != ady * (b.right[0] - b.left[0]):
                return True  # non-parallel pair, both interior at p
            # parallel pair through a shared point is collinear: an overlap
    return False


def slow_trapezoidation(segments: Sequence[Segment],
                        size_bound: int = DEFAULT_SIZE_BOUND) -> Counter:
    """Face multiset of the trapezoidation, keyed (top id, bottom id,
    left x, right x), with -1/-2 sentinels for the bounding region.

    A vertical wall is shot up and down from every site until the first
    strictly blocking segment.  Overlapping segments are ordered by
    ascending id; the zero-height gaps between them are split only by
    walls pinched exactly at the shared point.
    """
    if len(segments) > size_bound:
        raise OracleBoundExceeded(
            f"slow_trapezoidation limited to {size_bound} segments, got {len(segments)}"
        )
    by_id = {s.id: s for s in segments}
    sites = collect_sites(segments)
    xs = sorted({p[0] for p in sites})
    bounds: List[Scalar] = [NEG_INF] + xs + [POS_INF]

    def stack_for(xa, xb) -> List[int]:
        active = [s for s in segments if s.left[0] <= xa and s.right[0] >= xb]
        if xa == NEG_INF and xb == POS_INF:
            mid: Scalar = 0
        elif xa == NEG_INF:
            mid = xb - 1
        elif xb == POS_INF:
            mid = xa + 1
        else:
            mid = midpoint(xa, xb)
        active.sort(key=lambda s: (s.y_at(mid), s.id))
        return [ORACLE_BOT] + [s.id for s in active] + [ORACLE_TOP]

    def y_of(sid: int, x) -> Scalar:
        if sid == ORACLE_TOP:
            return POS_INF
        if sid == ORACLE_BOT:
            return NEG_INF
        return by_id[sid].y_at(x)

    def walls_at(x0) -> List[Tuple[Scalar, Scalar, Scalar]]:
        ys = [s.y_at(x0) for s in segments if s.left[0] <= x0 <= s.right[0]]
        walls = []
        for p in sites:
            if p[0] != x0:
                continue
            qy = p[1]
            lo, hi = NEG_INF, POS_INF
            for y in ys:
                if y < qy:
                    if y > lo:
                        lo = y
                elif y > qy:
                    if y < hi:
                        hi = y
            walls.append((qy, lo, hi))
        return walls

    faces: Counter = Counter()
    open_runs: Dict[Tuple[int, int], Scalar] = {(ORACLE_TOP, ORACLE_BOT): NEG_INF}
    prev_pairs = {(ORACLE_TOP, ORACLE_BOT)}
    for k in range(1, len(bounds)):
        xa, xb = bounds[k - 1], bounds[k]
        stack = stack_for(xa, xb)
        pairs = {(stack[i + 1], stack[i]) for i in range(len(stack) - 1)}
        if k > 1:
            x0 = xa
            walls = walls_at(x0)
            for pair in sorted(prev_pairs | pairs):
                top, bot = pair
                was, now = pair in prev_pairs, pair in pairs
                if was and now:
                    yb, yt = y_of(bot, x0), y_of(top, x0)
                    if any((qy == yb if yb == yt else (yb < hi and yt > lo))
                           for qy, lo, hi in walls):
                        faces[(top, bot, open_runs.pop(pair), x0)] += 1
                        open_runs[pair] = x0
                elif was:
                    faces[(top, bot, open_runs.pop(pair), x0)] += 1
                else:
                    open_runs[pair] = x0
        prev_pairs = pairs
    for (top, bot), start in open_runs.items():
        faces[(top, bot, start, POS_INF)] += 1
    return faces


def classify_point(segments: Sequence[Segment], p: Point, lower_left: bool,
                   size_bound: int = DEFAULT_SIZE_BOUND) -> Tuple:
    """Face key of the trapezoidation face a tie-resolved point query must
    return: the unique face containing the perturbed point
    (p.x - e^2, p.y - e) for lower-left policy, (p.x + e^2, p.y + e) for
    upper-right, as e -> 0."""
    faces = slow_trapezoidation(segments, size_bound)
    by_id = {s.id: s for s in segments}
    px, py = p
    hits = []
    for (top, bot, lx, rx) in faces:
        if lower_left:
            if not (lx < px <= rx):
                continue
        else:
            if not (lx <= px < rx):
                continue
        ok = True
        if top >= 0:
            c = _ycmp_seg(by_id[top], px, py)  # sign(y_top - py)
            ok = (c >= 0) if lower_left else (c > 0)
        if ok and bot >= 0:
            c = _ycmp_seg(by_id[bot], px, py)
            ok = (c < 0) if lower_left else (c <= 0)
        if ok:
            hits.append((top, bot, lx, rx))
    if len(hits) != 1:
        raise AssertionError(f"point {p} classified into {len(hits)} faces: {hits}")
    return hits[0]


def _ycmp_seg(s: Segment, x, yref) -> int:
    (lx, ly), (rx, ry) = s.left, s.right
    v = ly * (rx - x) + ry * (x - lx) - yref * (rx - lx)
    return (v > 0) - (v < 0)
