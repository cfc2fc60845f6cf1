"""Query algorithms over the search DAG.

The vertical segment query is a depth-first search that expands exactly
the nodes whose stored region meets the query segment (closed
semantics), then assembles the answer from the boundaries of the
reported leaves plus the through-lists of partitions whose site lies on
the query.  Window queries on a connected subdivision combine four
boundary queries (two of them on a 90-degree-rotated copy) with a BFS
over the inside edges.

Queries are read-only; any number may run concurrently over one index.
All counters live in the per-query report.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .exact import Scalar
from .geom import GeometryError, Point, Segment, segment_hits_vertical
from .tsd import LOWER_LEFT, Tsd, build_tsd


@dataclass(frozen=True)
class VerticalQuery:
    x: Scalar
    y0: Scalar
    y1: Scalar

    def __post_init__(self):
        if self.y0 > self.y1:
            raise GeometryError(f"vertical query needs y0 <= y1, got {self.y0} > {self.y1}")


@dataclass
class QueryReport:
    segments: Set[int]
    trapezoids: List[int]
    visited_nodes: int
    predicate_calls: int
    visited_ids: Optional[List[int]] = None


def vertical_segment_query(tsd: Tsd, q: VerticalQuery,
                           record_visited: bool = False) -> QueryReport:
    """Report every input segment meeting the vertical query segment."""
    x, y0, y1 = q.x, q.y0, q.y1
    tops, bots = tsd._top, tsd._bot
    lxs, rxs = tsd._lx, tsd._rx
    slx, sly, srx, sry = tsd._slx, tsd._sly, tsd._srx, tsd._sry
    kids_arr = tsd._kids
    predicate_calls = 0
    visited = 0
    visited_ids: List[int] = [] if record_visited else None
    leaves: List[int] = []
    stack = [tsd.root]
    seen = {tsd.root}
    while stack:
        i = stack.pop()
        predicate_calls += 1
        if x < lxs[i] or x > rxs[i]:
            continue
        t = tops[i]
        if t >= 0:
            # top strictly below y0 => miss
            lx, rx = slx[t], srx[t]
            if sly[t] * (rx - x) + sry[t] * (x - lx) < y0 * (rx - lx):
                continue
        b = bots[i]
        if b >= 0:
            lx, rx = slx[b], srx[b]
            if sly[b] * (rx - x) + sry[b] * (x - lx) > y1 * (rx - lx):
                continue
        visited += 1
        if record_visited:
            visited_ids.append(i)
        kids = kids_arr[i]
        if kids is None:
            leaves.append(i)
        else:
            for c in kids:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    result: Set[int] = set()
    for leaf in leaves:
        for sid in (tops[leaf], bots[leaf]):
            if sid >= 0 and sid not in result:
                if segment_hits_vertical(tsd.segments[sid], x, y0, y1):
                    result.add(sid)
    for part in tsd.partitions_on_vertical(x, y0, y1):
        result.update(part.through)
    return QueryReport(result, leaves, visited, predicate_calls, visited_ids)


def point_query(tsd: Tsd, p: Point, tie: str = LOWER_LEFT) -> Tuple[int, List[int]]:
    """Leaf containing p (ties per policy) and its non-synthetic boundary ids."""
    leaf = tsd.locate_point(p, tie)
    return leaf, tsd.boundary_ids(leaf)


class SubdivisionIndex:
    """Two TSDs (original and 90-degree rotated) plus the subdivision's
    vertex adjacency, for axis-aligned window queries on a connected
    planar subdivision."""

    def __init__(self, segments: Sequence[Segment], seed: int):
        self.segments = list(segments)
        self.adjacency: Dict[Point, List[Tuple[Point, int]]] = {}
        for s in self.segments:
            self.adjacency.setdefault(s.left, []).append((s.right, s.id))
            self.adjacency.setdefault(s.right, []).append((s.left, s.id))
        self._check_connected()
        self.tsd = build_tsd(self.segments, seed)
        rotated = [
            Segment(s.id, (-s.left[1], s.left[0]), (-s.right[1], s.right[0]))
            for s in self.segments
        ]
        self.tsd_rotated = build_tsd(rotated, seed)

    def _check_connected(self):
        if not self.adjacency:
            return
        start = next(iter(self.adjacency))
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u, _sid in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(self.adjacency):
            raise GeometryError(
                f"subdivision is not connected ({len(seen)} of {len(self.adjacency)} vertices reached)"
            )


def window_query(index: SubdivisionIndex, xmin: Scalar, ymin: Scalar,
                 xmax: Scalar, ymax: Scalar) -> Set[int]:
    """Ids of all edges meeting the closed window [xmin,xmax]x[ymin,ymax]."""
    if not (xmin < xmax and ymin < ymax):
        raise GeometryError(
            f"degenerate window [{xmin},{xmax}]x[{ymin},{ymax}]: needs positive width and height"
        )
    crossers: Set[int] = set()
    crossers |= vertical_segment_query(index.tsd, VerticalQuery(xmin, ymin, ymax)).segments
    crossers |= vertical_segment_query(index.tsd, VerticalQuery(xmax, ymin, ymax)).segments
    # horizontal window edges become vertical under (x, y) -> (-y, x)
    crossers |= vertical_segment_query(
        index.tsd_rotated, VerticalQuery(-ymax, xmin, xmax)).segments
    crossers |= vertical_segment_query(
        index.tsd_rotated, VerticalQuery(-ymin, xmin, xmax)).segments

    def inside(v: Point) -> bool:
        return xmin <= v[0] <= xmax and ymin <= v[1] <= ymax

    if not crossers:
        # connected subdivision with no boundary contact: either entirely
        # inside the window or entirely outside it; one containment test
        # of any vertex decides which
        if index.segments and inside(index.segments[0].left):
            return {s.id for s in index.segments}
        return set()

    result = set(crossers)
    queue = deque()
    queued: Set[Point] = set()
    for sid in crossers:
        s = index.segments[sid]
        for v in (s.left, s.right):
            if inside(v) and v not in queued:
                queued.add(v)
                queue.append(v)
    while queue:
        v = queue.popleft()
        for u, sid in index.adjacency[v]:
            if inside(u):
                if sid not in result:
                    result.add(sid)
                if u not in queued:
                    queued.add(u)
                    queue.append(u)
            elif sid not in result:
                # one endpoint inside a closed window and no boundary
                # crossing cannot happen; guard against kernel bugs
                raise AssertionError(
                    f"edge {sid} leaves the closed window without crossing its boundary"
                )
    return result
