"""Synthetic instance families and query generation.

Every generator is deterministic under its parameters and seed (Mersenne
Twister via ``random.Random``).  Coordinates are always integers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exact import rat
from .geom import Segment
from .oracles import brute_force_vertical_query
from .query import VerticalQuery

FAMILIES = (
    "random-horizontal",
    "random-slanted",
    "overlap-boxes",
    "walk-adversarial",
    "grid",
)


def gen_random_horizontal(i: int, seed: int) -> List[Segment]:
    """2^i horizontal segments on pairwise distinct y-levels (hence
    non-crossing with disjoint bounding boxes).  Spans are kept moderate
    so the instance also behaves for segment-tree baselines."""
    if i < 1:
        raise ValueError("i must be >= 1")
    n = 1 << i
    rng = random.Random(seed)
    universe = 8 * n
    max_len = max(2, 4 * math.isqrt(n))
    ys = rng.sample(range(universe), n)
    out = []
    for sid in range(n):
        length = rng.randint(1, max_len)
        x1 = rng.randint(0, universe - length)
        out.append(Segment(sid, (x1, ys[sid]), (x1 + length, ys[sid])))
    return out


def gen_random_slanted(i: int, seed: int, overlap_rate: float = 0.125) -> List[Segment]:
    """2^i unit-slope segments (45 degrees), random anchors and lengths.

    Parallel, so crossings are impossible; a fraction of anchors is drawn
    from a small set of support lines to exercise bundles."""
    if i < 1:
        raise ValueError("i must be >= 1")
    n = 1 << i
    rng = random.Random(seed)
    universe = 4 * n
    hot_lines = [rng.randint(-universe // 2, universe // 2) for _ in range(16)]
    out = []
    for sid in range(n):
        if rng.random() < overlap_rate:
            c = hot_lines[rng.randrange(len(hot_lines))]
        else:
            c = rng.randint(-universe // 2, universe // 2)
        x1 = rng.randint(0, universe)
        length = rng.randint(1, 256)
        # support line y = x + c
        out.append(Segment(sid, (x1, x1 + c), (x1 + length, x1 + length + c)))
    return out


def gen_overlap_boxes(i: int) -> List[Segment]:
    """The many-overlapping-bounding-box family: segments (0, j)-(j, 0)
    for j = 1..2^i.  Deterministic; parallel (slope -1), non-crossing,
    every bounding box contains the region near the origin."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return [Segment(j - 1, (0, j), (j, 0)) for j in range(1, (1 << i) + 1)]


@dataclass(frozen=True)
class WalkAdversarialInstance:
    segments: List[Segment]
    canonical_query: VerticalQuery
    long_count: int


def gen_walk_adversarial(m: int) -> WalkAdversarialInstance:
    """Stacked long horizontal segments with, in every second strip
    between them, a row of short disjoint segments; Theta(m) segments in
    total.  The canonical query is vertical, placed between two shorts,
    and crosses exactly the long segments."""
    if m < 4:
        raise ValueError("m must be >= 4")
    longs = math.isqrt(m)
    if longs * longs != m:
        longs += 1  # ceil(sqrt(m))
    width = 2 * longs
    segs: List[Segment] = []
    sid = 0
    for t in range(longs):
        segs.append(Segment(sid, (0, 2 * t), (width, 2 * t)))
        sid += 1
    for t in range(longs - 1):
        if t % 2 == 0:
            y = 2 * t + 1
            for u in range(longs):
                segs.append(Segment(sid, (2 * u, y), (2 * u + 1, y)))
                sid += 1
    query = VerticalQuery(rat(3, 2), -1, 2 * longs - 1)
    return WalkAdversarialInstance(segs, query, longs)


def gen_grid_subdivision(w: int, h: int) -> List[Segment]:
    """Connected (w+1)x(h+1) grid graph with unit lattice edges, laid out
    rotated 45 degrees (vertex (i,j) at (i+j, j-i)) so that no edge is
    axis-parallel and the 90-degree-rotated copy is also vertical-free."""
    if w < 1 or h < 1:
        raise ValueError("grid needs w, h >= 1")

    def vert(i, j):
        return (i + j, j - i)

    segs = []
    sid = 0
    for j in range(h + 1):
        for i in range(w):
            segs.append(Segment(sid, vert(i, j), vert(i + 1, j)))
            sid += 1
    for j in range(h):
        for i in range(w + 1):
            segs.append(Segment(sid, vert(i, j), vert(i, j + 1)))
            sid += 1
    return segs


def gen_degenerate_mix(n: int, seed: int, span: Optional[int] = None) -> List[Segment]:
    """Collision-rich random instance mixing every degeneracy class:
    general-position crossings, exact duplicates and partial overlaps
    (bundles), shared endpoints, and >= 3 segments through common hub
    points (multi-intersections)."""
    rng = random.Random(seed)
    span = span or max(8, n // 2 + 6)
    hubs = [(rng.randint(2, span - 2), rng.randint(2, span - 2)) for _ in range(2)]
    segs: List[Segment] = []

    def random_plain():
        while True:
            x1, y1 = rng.randint(0, span), rng.randint(0, span)
            x2, y2 = rng.randint(0, span), rng.randint(0, span)
            if x1 != x2:
                return (x1, y1), (x2, y2)

    for sid in range(n):
        roll = rng.random()
        if roll < 0.22 and sid >= 1:
            # collinear relative: duplicate, sub-segment or extension
            base = segs[rng.randrange(len(segs))]
            (lx, ly), (rx, ry) = base.left, base.right
            dx, dy = rx - lx, ry - ly
            mode = rng.randrange(3)
            if mode == 0:
                a, b = base.left, base.right  # exact duplicate
            elif mode == 1:
                a = (lx - dx, ly - dy)
                b = base.right  # extension sharing the right endpoint
            else:
                a = base.left
                b = (rx + dx, ry + dy)
            segs.append(Segment(sid, a, b))
        elif roll < 0.42:
            # through a hub: guarantees multi-intersections build up
            hx, hy = hubs[rng.randrange(2)]
            while True:
                dx = rng.randint(-3, 3)
                dy = rng.randint(-3, 3)
                if dx != 0:
                    break
            t1 = rng.randint(1, 3)
            t2 = rng.randint(1, 3)
            segs.append(Segment(sid, (hx - t1 * dx, hy - t1 * dy),
                                (hx + t2 * dx, hy + t2 * dy)))
        elif roll < 0.55 and sid >= 1:
            # share an endpoint with an earlier segment
            base = segs[rng.randrange(len(segs))]
            p = base.left if rng.random() < 0.5 else base.right
            while True:
                q = (rng.randint(0, span), rng.randint(0, span))
                if q[0] != p[0]:
                    break
            segs.append(Segment(sid, p, q))
        else:
            a, b = random_plain()
            segs.append(Segment(sid, a, b))
    return segs


QUERY_BUDGET = 10 ** 6


@dataclass
class QueryGenResult:
    queries: List[VerticalQuery]
    budget_exhausted: bool


def gen_queries(segments: List[Segment], count: int, k_lo: int, k_hi: int,
                seed: int, budget: int = QUERY_BUDGET) -> QueryGenResult:
    """Vertical queries whose oracle answer size lies in [k_lo, k_hi].

    Samples an x on a random segment, stacks the crossing segments by
    level, picks a window of consecutive levels of acceptable total size,
    and verifies the resulting query against the brute-force oracle.
    Stops early (with a flag) when the attempt budget runs out.
    """
    if k_lo > k_hi or k_lo < 0:
        raise ValueError("need 0 <= k_lo <= k_hi")
    rng = random.Random(seed)
    out: List[VerticalQuery] = []
    attempts = 0
    while len(out) < count and attempts < budget:
        attempts += 1
        if not segments:
            continue
        s = segments[rng.randrange(len(segments))]
        x = rng.randint(s.left[0], s.right[0])
        levels: dict = {}
        for t in segments:
            if t.left[0] <= x <= t.right[0]:
                y = t.y_at(x)
                levels[y] = levels.get(y, 0) + 1
        if not levels:
            continue
        ys = sorted(levels)
        sizes = [levels[y] for y in ys]
        if sum(sizes) < k_lo:
            continue
        start = rng.randrange(len(ys))
        total = 0
        end = start
        while end < len(ys) and total < k_lo:
            total += sizes[end]
            end += 1
        if total < k_lo or total > k_hi:
            continue
        q = VerticalQuery(x, ys[start], ys[end - 1])
        k = len(brute_force_vertical_query(segments, q.x, q.y0, q.y1))
        if k_lo <= k <= k_hi:
            out.append(q)
    return QueryGenResult(out, len(out) < count)
