"""Trapezoidal search DAG over arbitrary (possibly degenerate) segment sets.

Construction is randomized-incremental: segments are inserted one at a
time under a seeded random permutation.  Every node owns one trapezoidal
face of the subdivision current at its creation; destroyed leaves gain up
to four children, and faces merged across a vanished vertical wall are
shared between all their parents.

Degenerate input is handled exactly:

* overlapping segments (bundles) are separated by an implicit
  infinitesimal vertical shift, ordered by ascending id, which yields
  zero-area faces between bundle members;
* all segments passing through one intersection point share a single
  vertical partition that records them (multi-intersections, and
  "threading" of segments inserted through an existing partition site);
* faces are delimited left/right by vertical walls shot up and down from
  every endpoint/intersection site until the first strictly blocking
  segment.

The bounding region is symbolic: the root face extends to infinity in x,
and its top/bottom are sentinel segments (ids -1/-2), so queries beyond
the input extent resolve without rebuilds.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import NEG_INF, POS_INF, Scalar, midpoint, rat
from .geom import (
    GeometryError,
    Point,
    Segment,
    intersect,
    proper_crossing_at,
)

TOP_ID = -1  # synthetic top of the bounding region
BOT_ID = -2  # synthetic bottom
# ids -3/-4 are reserved for the symbolic left/right bounding walls; they
# never appear as face boundaries because x-extents are +-inf sentinels.

KIND_ENDPOINT_LEFT = "endpoint-left"
KIND_ENDPOINT_RIGHT = "endpoint-right"
KIND_INTERSECTION = "intersection"


class VerticalPartition:
    """An x-event: a segment endpoint or an intersection site.

    ``through`` lists every segment id known to pass exactly through the
    site (closed semantics).  A partition created at an endpoint is
    upgraded to intersection kind as soon as two of its through-segments
    properly cross there, so the final kind does not depend on insertion
    order.
    """

    __slots__ = ("index", "site", "kind", "seg_id", "through")

    def __init__(self, index: int, site: Point, kind: str,
                 seg_id: Optional[int], through: List[int]):
        self.index = index
        self.site = site
        self.kind = kind
        self.seg_id = seg_id
        self.through = through  # sorted segment ids

    @property
    def through_segments(self) -> List[int]:
        """Spec-facing list: populated for intersection partitions."""
        return list(self.through) if self.kind == KIND_INTERSECTION else []

    def __repr__(self):
        return f"VerticalPartition({self.site}, {self.kind}, through={self.through})"


@dataclass(frozen=True)
class Trapezoid:
    """Read-only view of one face."""

    top_id: int
    bottom_id: int
    leftx: Scalar
    rightx: Scalar
    leftp: Optional[VerticalPartition]
    rightp: Optional[VerticalPartition]
    bundle_rank_top: Optional[int] = None
    bundle_rank_bottom: Optional[int] = None

    @property
    def key(self) -> Tuple:
        return (self.top_id, self.bottom_id, self.leftx, self.rightx)


@dataclass(frozen=True)
class TsdNode:
    """Read-only view of one DAG node."""

    id: int
    region: Trapezoid
    children: Tuple[int, ...]
    destroyed_by: Optional[int]

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class TsdStats:
    node_count: int
    leaf_count: int
    max_depth: int
    intersection_count: int


LOWER_LEFT = "lower-left"
UPPER_RIGHT = "upper-right"

# run-record field indices used by the retile machinery
R_BOT, R_TOP, R_STARTX, R_LP, R_PROVS, R_ORDER, R_ENDX, R_RP = range(8)


class Tsd:
    """The search DAG.  Immutable once `build_tsd` returns; reads are
    thread-safe after that."""

    def __init__(self, segments: Sequence[Segment], seed: int):
        self.segments = list(segments)
        self.seed = seed
        for i, s in enumerate(self.segments):
            if s.id != i:
                raise GeometryError(
                    f"segment ids must be dense 0..n-1; found id {s.id} at position {i}"
                )
        # flat copies for the hot paths
        self._slx = [s.left[0] for s in self.segments]
        self._sly = [s.left[1] for s in self.segments]
        self._srx = [s.right[0] for s in self.segments]
        self._sry = [s.right[1] for s in self.segments]
        # node arena (struct of arrays)
        self._top: List[int] = [TOP_ID]
        self._bot: List[int] = [BOT_ID]
        self._lx: List[Scalar] = [NEG_INF]
        self._rx: List[Scalar] = [POS_INF]
        self._lp: List[int] = [-1]
        self._rp: List[int] = [-1]
        self._kids: List[Optional[Tuple[int, ...]]] = [None]
        self._destroyed: List[Optional[int]] = [None]
        self.root = 0
        # partitions
        self.partitions: List[VerticalPartition] = []
        self._registry: Dict[Point, int] = {}
        self._parts_by_x: Dict[Scalar, List[int]] = {}
        # support-line families for bundle ranks
        self._line_of: List[Tuple] = []
        self._line_members: Dict[Tuple, List[int]] = {}
        for s in self.segments:
            key = _line_key(s)
            self._line_of.append(key)
            self._line_members.setdefault(key, []).append(s.id)

    # ---------------------------------------------------------------- views

    def __len__(self):
        return len(self._top)

    def node(self, i: int) -> TsdNode:
        kids = self._kids[i]
        return TsdNode(i, self.region(i), kids or (), self._destroyed[i])

    def region(self, i: int) -> Trapezoid:
        t, b = self._top[i], self._bot[i]
        lp = self.partitions[self._lp[i]] if self._lp[i] >= 0 else None
        rp = self.partitions[self._rp[i]] if self._rp[i] >= 0 else None
        rt = rb = None
        if t >= 0 and b >= 0 and self._line_of[t] == self._line_of[b]:
            fam = self._line_members[self._line_of[t]]
            rt, rb = fam.index(t), fam.index(b)
        return Trapezoid(t, b, self._lx[i], self._rx[i], lp, rp, rt, rb)

    def leaves(self) -> List[int]:
        return [i for i in range(len(self._top)) if self._kids[i] is None]

    def leaf_face_keys(self) -> List[Tuple]:
        """Multiset key per leaf: (top id, bottom id, left x, right x)."""
        return [
            (self._top[i], self._bot[i], self._lx[i], self._rx[i])
            for i in range(len(self._top))
            if self._kids[i] is None
        ]

    def boundary_ids(self, i: int) -> List[int]:
        """Non-synthetic segment ids bounding the face of node i."""
        return [s for s in (self._top[i], self._bot[i]) if s >= 0]

    def partitions_on_vertical(self, x: Scalar, y0: Scalar, y1: Scalar) -> List[VerticalPartition]:
        """All partitions whose site lies on the vertical segment."""
        out = []
        for idx in self._parts_by_x.get(x, ()):
            part = self.partitions[idx]
            if y0 <= part.site[1] <= y1:
                out.append(part)
        return out

    def stats(self) -> TsdStats:
        n = len(self._top)
        leaf_count = sum(1 for k in self._kids if k is None)
        depth = [0] * n
        for i in range(n):
            kids = self._kids[i]
            if kids:
                d = depth[i] + 1
                for c in kids:
                    if d > depth[c]:
                        depth[c] = d
        icount = sum(1 for p in self.partitions if p.kind == KIND_INTERSECTION)
        return TsdStats(n, leaf_count, max(depth) if n else 0, icount)

    # ------------------------------------------------------ exact primitives

    def _y_at(self, sid: int, x: Scalar) -> Scalar:
        if sid == TOP_ID:
            return POS_INF
        if sid == BOT_ID:
            return NEG_INF
        lx, rx = self._slx[sid], self._srx[sid]
        num = self._sly[sid] * (rx - x) + self._sry[sid] * (x - lx)
        if type(num) is int:
            q, r = divmod(num, rx - lx)
            if r == 0:
                return q
        return rat(num, rx - lx)

    def _ycmp(self, sid: int, x: Scalar, yref: Scalar) -> int:
        """sign(y(sid, x) - yref) for a real segment id."""
        lx, rx = self._slx[sid], self._srx[sid]
        v = self._sly[sid] * (rx - x) + self._sry[sid] * (x - lx) - yref * (rx - lx)
        return (v > 0) - (v < 0)

    def _stack_key(self, sid: int, x: Scalar):
        if sid == BOT_ID:
            return (0,)
        if sid == TOP_ID:
            return (2,)
        return (1, self._y_at(sid, x), sid)

    # ------------------------------------------------------------ region tests

    def _sub_interval(self, sid: int, w: int, xlo: Scalar, xhi: Scalar,
                      below: bool, strict: bool):
        """x-interval of [xlo, xhi] where segment `sid` lies below (or
        above) boundary `w`.

        Strict mode resolves same-support-line ties by bundle rank
        (ascending id is higher); closed mode counts touching as inside.
        Returns (lo, hi) or None; in strict mode the interval bounds are
        only meaningful up to measure zero.
        """
        if w == TOP_ID:
            return (xlo, xhi) if below else None
        if w == BOT_ID:
            return None if below else (xlo, xhi)
        wl, wr = self._slx[w], self._srx[w]
        wdx = wr - wl
        sl, sr = self._slx[sid], self._srx[sid]
        sdx = sr - sl
        sly, sry = self._sly[sid], self._sry[sid]
        wly, wry = self._sly[w], self._sry[w]

        def val(x):
            ns = sly * (sr - x) + sry * (x - sl)
            nw = wly * (wr - x) + wry * (x - wl)
            return ns * wdx - nw * sdx  # sign of y_s(x) - y_w(x)

        vlo, vhi = val(xlo), val(xhi)
        glo = (vlo > 0) - (vlo < 0)
        ghi = (vhi > 0) - (vhi < 0)
        if glo == 0 and ghi == 0:
            # same support line (or a single-point window touching w)
            if not strict:
                return (xlo, xhi)
            lower = sid < w
            return (xlo, xhi) if lower == below else None
        want = -1 if below else 1
        ok_lo = (glo == want) or (not strict and glo == 0)
        ok_hi = (ghi == want) or (not strict and ghi == 0)
        if ok_lo and ok_hi:
            return (xlo, xhi)
        if not ok_lo and not ok_hi and glo != 0 and ghi != 0:
            return None  # same wrong sign throughout
        xc = rat(vlo * xhi - vhi * xlo, vlo - vhi)
        if ok_lo:
            return (xlo, xc)
        if ok_hi:
            return (xc, xhi)
        return None

    def _overlap_window(self, node: int, sid: int):
        xlo = self._lx[node]
        xhi = self._rx[node]
        slx, srx = self._slx[sid], self._srx[sid]
        if slx > xlo:
            xlo = slx
        if srx < xhi:
            xhi = srx
        return xlo, xhi

    def _closure_touches(self, node: int, sid: int) -> bool:
        """Closed region of `node` intersects segment `sid`?"""
        xlo, xhi = self._overlap_window(node, sid)
        if xlo > xhi:
            return False
        below_top = self._sub_interval(sid, self._top[node], xlo, xhi, True, False)
        if below_top is None:
            return False
        above_bot = self._sub_interval(sid, self._bot[node], xlo, xhi, False, False)
        if above_bot is None:
            return False
        return max(below_top[0], above_bot[0]) <= min(below_top[1], above_bot[1])

    def _split_by_s(self, node: int, sid: int) -> bool:
        """Does `sid` run through the symbolic interior of the face over a
        positive-length x-interval?"""
        xlo, xhi = self._overlap_window(node, sid)
        if not xlo < xhi:
            return False
        below_top = self._sub_interval(sid, self._top[node], xlo, xhi, True, True)
        if below_top is None:
            return False
        above_bot = self._sub_interval(sid, self._bot[node], xlo, xhi, False, True)
        if above_bot is None:
            return False
        return max(below_top[0], above_bot[0]) < min(below_top[1], above_bot[1])

    def _wall_cuts_face(self, node: int, site: Point) -> bool:
        """Would a new wall at `site` split this face vertically?

        True when site.x is strictly inside the face's x-range and the
        site lies weakly between bottom and top: the wall then pokes into
        the gap (faces have empty interiors, so only top/bottom block)."""
        x, y = site
        if not (self._lx[node] < x < self._rx[node]):
            return False
        t, b = self._top[node], self._bot[node]
        if t >= 0 and self._ycmp(t, x, y) < 0:
            return False
        if b >= 0 and self._ycmp(b, x, y) > 0:
            return False
        return True

    # --------------------------------------------------------------- locate

    def locate_point(self, p: Point, tie: str = LOWER_LEFT, with_count: bool = False):
        """Leaf whose closed region contains p; ties on shared boundaries
        resolved deterministically (LOWER_LEFT picks the lowest/left-most
        face, UPPER_RIGHT the highest/right-most)."""
        if tie not in (LOWER_LEFT, UPPER_RIGHT):
            raise ValueError(f"unknown tie policy {tie!r}")
        node = self.root
        visited = 1
        while True:
            kids = self._kids[node]
            if kids is None:
                return (node, visited) if with_count else node
            nxt = -1
            for c in kids:
                if self._contains_tie(c, p, tie):
                    nxt = c
                    break
            if nxt < 0:
                raise AssertionError(f"point {p} escaped node {node}")
            node = nxt
            visited += 1

    def _contains_tie(self, node: int, p: Point, tie: str) -> bool:
        px, py = p
        if tie == LOWER_LEFT:
            if not (self._lx[node] < px <= self._rx[node]):
                return False
        else:
            if not (self._lx[node] <= px < self._rx[node]):
                return False
        t, b = self._top[node], self._bot[node]
        if t >= 0:
            c = self._ycmp(t, px, py)  # sign(top_y - py)
            if (c < 0) if tie == LOWER_LEFT else (c <= 0):
                return False
        if b >= 0:
            c = self._ycmp(b, px, py)
            if (c >= 0) if tie == LOWER_LEFT else (c > 0):
                return False
        return True

    # -------------------------------------------------------------- insertion

    def _insert(self, sid: int, priority: int):
        touched = self._touched_leaves(sid)
        new_parts, site_parts = self._register_sites(sid, touched)
        destroyed = self._destroyed_set(sid, touched, new_parts)
        if not destroyed:
            raise AssertionError(f"insertion of segment {sid} destroyed no faces")
        runs = self._retile(sid, destroyed, new_parts, site_parts)
        self._wire(destroyed, runs, priority)

    def _touched_leaves(self, sid: int) -> List[int]:
        """Leaves whose closed region may meet the segment: a cheap,
        slightly over-inclusive prune (exact sign checks at the window
        ends; a linear difference cannot change side without a sign
        change).  Destruction decisions re-test exactly."""
        lxs, rxs = self._lx, self._rx
        tops, bots = self._top, self._bot
        slxs, slys, srxs, srys = self._slx, self._sly, self._srx, self._sry
        sl, sr = slxs[sid], srxs[sid]
        sly, sry = slys[sid], srys[sid]
        sdx = sr - sl
        stack = [self.root]
        seen = {self.root}
        out = []
        kids_arr = self._kids
        while stack:
            i = stack.pop()
            xlo = lxs[i]
            if sl > xlo:
                xlo = sl
            xhi = rxs[i]
            if sr < xhi:
                xhi = sr
            if xlo > xhi:
                continue
            w = tops[i]
            if w >= 0:
                wl, wr = slxs[w], srxs[w]
                wdx = wr - wl
                wly, wry = slys[w], srys[w]
                # sign(y_s - y_top) at both window ends; reject if above twice
                if (sly * (sr - xlo) + sry * (xlo - sl)) * wdx > \
                   (wly * (wr - xlo) + wry * (xlo - wl)) * sdx and \
                   (sly * (sr - xhi) + sry * (xhi - sl)) * wdx > \
                   (wly * (wr - xhi) + wry * (xhi - wl)) * sdx:
                    continue
            w = bots[i]
            if w >= 0:
                wl, wr = slxs[w], srxs[w]
                wdx = wr - wl
                wly, wry = slys[w], srys[w]
                if (sly * (sr - xlo) + sry * (xlo - sl)) * wdx < \
                   (wly * (wr - xlo) + wry * (xlo - wl)) * sdx and \
                   (sly * (sr - xhi) + sry * (xhi - sl)) * wdx < \
                   (wly * (wr - xhi) + wry * (xhi - wl)) * sdx:
                    continue
            kids = kids_arr[i]
            if kids is None:
                out.append(i)
            else:
                for c in kids:
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
        return out

    def _register_sites(self, sid: int, touched: List[int]):
        """Create or extend partitions for every site on the new segment.

        Sites are segment endpoints and intersection points; a segment
        passing exactly through an existing site is threaded: it joins the
        partition's through-list and no new partition appears there.
        """
        seg = self.segments[sid]
        cand = set()
        for i in touched:
            if self._top[i] >= 0:
                cand.add(self._top[i])
            if self._bot[i] >= 0:
                cand.add(self._bot[i])
        cand = sorted(cand)
        pts = {seg.left, seg.right}
        for w in cand:
            r = intersect(seg, self.segments[w])
            if r.kind == "point":
                pts.add(r.p0)
            elif r.kind == "overlap":
                # overlap endpoints are existing sites (or s's endpoints)
                pts.add(r.p0)
                pts.add(r.p1)
        new_parts: List[VerticalPartition] = []
        site_parts: List[VerticalPartition] = []
        for p in sorted(pts):
            idx = self._registry.get(p)
            if idx is None:
                through = [w for w in cand if self.segments[w].contains_point(p)]
                insort(through, sid)
                if p == seg.left:
                    kind, owner = KIND_ENDPOINT_LEFT, sid
                elif p == seg.right:
                    kind, owner = KIND_ENDPOINT_RIGHT, sid
                else:
                    kind, owner = KIND_INTERSECTION, None
                part = VerticalPartition(len(self.partitions), p, kind, owner, through)
                self.partitions.append(part)
                self._registry[p] = part.index
                self._parts_by_x.setdefault(p[0], []).append(part.index)
                new_parts.append(part)
            else:
                part = self.partitions[idx]
                present = set(part.through)
                additions = [w for w in cand
                             if w not in present and self.segments[w].contains_point(p)]
                if sid not in present:
                    additions.append(sid)
                for a in additions:
                    if part.kind != KIND_INTERSECTION:
                        na = self.segments[a]
                        for t in part.through:
                            if proper_crossing_at(na, self.segments[t], p):
                                part.kind = KIND_INTERSECTION
                                break
                    insort(part.through, a)
                site_parts.append(part)
        return new_parts, site_parts

    def _destroyed_set(self, sid: int, touched: List[int], new_parts) -> List[int]:
        sites = sorted(p.site for p in new_parts)
        xs = [s[0] for s in sites]
        out = []
        for i in touched:
            if self._split_by_s(i, sid):
                out.append(i)
                continue
            lo = bisect_right(xs, self._lx[i])
            hi = bisect_left(xs, self._rx[i])
            for k in range(lo, hi):
                if self._wall_cuts_face(i, sites[k]):
                    out.append(i)
                    break
        return out

    # The retile recomputes, from scratch, the faces covering the union of
    # the destroyed regions: per x-slab a vertical stack of slices, then
    # maximal runs glued across slab boundaries wherever no wall cuts the
    # gap.  Merges (a wall ray newly blocked by the inserted segment) fall
    # out automatically because wall extents are recomputed against the
    # local segments including the new one.

    def _retile(self, sid: int, destroyed: List[int], new_parts, site_parts):
        xs = set()
        for i in destroyed:
            xs.add(self._lx[i])
            xs.add(self._rx[i])
        for p in new_parts:
            xs.add(p.site[0])
        X = sorted(xs)
        # every partition at a breakpoint x can break runs there, including
        # ones whose wall pokes into the retiled zone from untouched faces
        relevant: Dict[Scalar, List[VerticalPartition]] = {
            x0: [self.partitions[i] for i in self._parts_by_x[x0]]
            for x0 in X
            if x0 in self._parts_by_x
        }

        slx, srx = self._slx[sid], self._srx[sid]
        xindex = {x: k for k, x in enumerate(X)}
        slab_members: List[List[int]] = [[] for _ in range(len(X) - 1)]
        for i in destroyed:
            for j in range(xindex[self._lx[i]], xindex[self._rx[i]]):
                slab_members[j].append(i)
        slabs = []  # (xa, xb, slices); slice = (bot, top, prov)
        for j in range(len(X) - 1):
            xa, xb = X[j], X[j + 1]
            members = slab_members[j]
            if not members:
                slabs.append((xa, xb, []))
                continue
            if xa == NEG_INF:
                mid: Scalar = 0 if xb == POS_INF else xb - 1
            elif xb == POS_INF:
                mid = xa + 1
            else:
                s = xa + xb
                mid = (s >> 1 if not s & 1 else rat(s, 2)) if type(s) is int else s / 2
            members.sort(key=lambda i: self._stack_key(self._bot[i], mid))
            s_pending = slx <= xa and xb <= srx
            skey = (1, self._y_at(sid, mid), sid) if s_pending else None
            slices = []
            pos = 0
            while pos < len(members):
                chain = [members[pos]]
                pos += 1
                while pos < len(members) and self._bot[members[pos]] == self._top[chain[-1]]:
                    chain.append(members[pos])
                    pos += 1
                blist = [self._bot[chain[0]]] + [self._top[t] for t in chain]
                new_bounds = blist
                if s_pending:
                    keys = [self._stack_key(b, mid) for b in blist]
                    if keys[0] < skey < keys[-1]:
                        at = bisect_left(keys, skey)
                        new_bounds = blist[:at] + [sid] + blist[at:]
                        s_pending = False
                oi = 0
                for b, t in zip(new_bounds, new_bounds[1:]):
                    slices.append((b, t, chain[oi]))
                    if t == self._top[chain[oi]]:
                        oi += 1
            if s_pending and slices:
                raise AssertionError(
                    f"segment {sid} spans slab ({xa},{xb}) but no destroyed slice hosts it"
                )
            slabs.append((xa, xb, slices))

        # run record layout: [bot, top, start_x, lp, provs, order, end_x, rp]
        runs_done = []
        open_runs: Dict[Tuple[int, int], list] = {}

        def close_run(run, x_end, cut_part):
            if cut_part is not None:
                rp = cut_part.index
            else:
                rp = None
                for prov in run[R_PROVS]:
                    if self._rx[prov] == x_end:
                        rp = self._rp[prov]
                        break
                if rp is None:
                    raise AssertionError("run ends without a delimiting partition")
            run[R_ENDX] = x_end
            run[R_RP] = rp
            runs_done.append(run)

        for j, (xa, xb, slices) in enumerate(slabs):
            cutters = relevant.get(xa, ())
            ycache: Dict[int, Scalar] = {}
            cur_pairs = {(b, t): prov for b, t, prov in slices}
            for key in list(open_runs):
                run = open_runs.pop(key)
                cut_part = self._gap_cut(key, xa, cutters, ycache) if cutters else None
                if key in cur_pairs and cut_part is None:
                    run[R_PROVS].add(cur_pairs.pop(key))
                    open_runs[key] = run
                else:
                    close_run(run, xa, cut_part)
                    # a freshly cut pair reopens below on the right side
            for idx, (b, t, prov) in enumerate(slices):
                key = (b, t)
                if key not in cur_pairs:
                    continue
                cut_part = self._gap_cut(key, xa, cutters, ycache) if cutters else None
                if cut_part is not None:
                    lp = cut_part.index
                elif self._lx[prov] == xa:
                    lp = self._lp[prov]
                else:
                    raise AssertionError("run starts without a delimiting partition")
                open_runs[key] = [b, t, xa, lp, {prov}, (idx, j), None, None]
        for key in list(open_runs):
            close_run(open_runs.pop(key), X[-1], None)
        return runs_done

    def _gap_cut(self, pair, x0, cutters, ycache):
        """Lowest partition at x0 whose wall cuts the gap, else None.

        A wall cuts a gap exactly when its site lies weakly between the
        gap's bottom and top at x0: face gaps have empty interiors, so
        their own boundaries are the first ray blockers, and a site
        outside the closed interval never reaches in.  Zero-height gaps
        are covered by the same rule (cut only when pinched at the site).
        """
        b, t = pair
        best = None
        for part in cutters:
            qy = part.site[1]
            if b >= 0:
                yb = ycache.get(b)
                if yb is None:
                    yb = self._y_at(b, x0)
                    ycache[b] = yb
                if qy < yb:
                    continue
            if t >= 0:
                yt = ycache.get(t)
                if yt is None:
                    yt = self._y_at(t, x0)
                    ycache[t] = yt
                if qy > yt:
                    continue
            if best is None or part.site[1] < best.site[1]:
                best = part
        return best

    def _wire(self, destroyed: List[int], runs, priority: int):
        by_parent: Dict[int, List[Tuple[Tuple, int]]] = {i: [] for i in destroyed}
        for run in runs:
            nid = len(self._top)
            self._top.append(run[R_TOP])
            self._bot.append(run[R_BOT])
            self._lx.append(run[R_STARTX])
            self._rx.append(run[R_ENDX])
            self._lp.append(run[R_LP] if run[R_LP] is not None else -1)
            self._rp.append(run[R_RP] if run[R_RP] is not None else -1)
            self._kids.append(None)
            self._destroyed.append(None)
            for prov in run[R_PROVS]:
                by_parent[prov].append((run[R_ORDER], nid))
        for parent, entries in by_parent.items():
            entries.sort()
            kids = tuple(nid for _, nid in entries)
            if not 1 <= len(kids) <= 4:
                raise AssertionError(
                    f"node {parent} got {len(kids)} children; expected 1..4"
                )
            self._kids[parent] = kids
            self._destroyed[parent] = priority


def _line_key(s: Segment) -> Tuple:
    """Normalized support line (a, b, c) with ax + by = c."""
    (lx, ly), (rx, ry) = s.left, s.right
    a = ly - ry
    b = rx - lx
    c = a * lx + b * ly
    if isinstance(a, int) and isinstance(b, int) and isinstance(c, int):
        g = math.gcd(math.gcd(abs(a), abs(b)), abs(c)) or 1
        a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return (a, b, c)


def validate_segments(segments: Sequence[Segment]) -> None:
    """Ingestion validation: dense unique ids, no vertical segments."""
    seen = set()
    for s in segments:
        if s.id in seen:
            raise GeometryError(f"duplicate segment id {s.id}")
        seen.add(s.id)
        if s.left[0] == s.right[0]:
            raise GeometryError(f"segment {s.id} is vertical")
    if seen and (min(seen) != 0 or max(seen) != len(segments) - 1):
        raise GeometryError("segment ids must be dense 0..n-1")


def build_tsd(segments: Sequence[Segment], seed: int) -> Tsd:
    """Build the DAG by inserting all segments in a seeded random order.

    The permutation is Fisher-Yates as implemented by ``random.Random``
    (Mersenne Twister) ``.shuffle``, so builds are bit-reproducible per
    seed.  Assigns each segment's priority (1-based insertion position).
    """
    validate_segments(segments)
    tsd = Tsd(segments, seed)
    order = list(range(len(segments)))
    random.Random(seed).shuffle(order)
    for pos, seg_id in enumerate(order):
        tsd.segments[seg_id].priority = pos + 1
        tsd._insert(seg_id, pos + 1)
    return tsd
