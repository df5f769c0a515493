"""Exact unit-profit FBAP through Belady-style eviction, plus interval-graph reductions.

Colors are viewed as fast-memory slots. A job entering at ``s_i`` first
secures its minimum (stealing surplus from the active job that ends last), then
tops up from the free pool and finally evicts surplus from active jobs that end
strictly after it, furthest end first.

Event order at equal coordinates: jobs ending at ``t`` release before jobs
starting at ``t``; jobs starting together enter in increasing end order, ties
by id.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .model import BandwidthAllocation, Instance, Job


class Infeasible(Exception):
    def __init__(self, time: int):
        self.time = time
        super().__init__(f"Infeasible: minimum requirements exceed capacity at t={time}")


@dataclass
class PagingStats:
    """Instrumentation counters for a single sweep."""
    pq_ops: int = 0        # heap pushes + pops + peeks
    steals: int = 0        # color-move operations taken from another job
    sort_keys: int = 0     # elements passed through the two sorts

    def total(self) -> int:
        return self.pq_ops + self.steals


@dataclass
class PagingResult:
    amounts: list                      # final |A_i| per input position
    colors: list = None                # final color lists per position, if tracked
    stats: PagingStats = field(default_factory=PagingStats)


def paging_sweep(starts, ends, r_min, r_max, capacity, ids=None, track_colors=False,
                 stats=None) -> PagingResult:
    """Array-level sweep. All sequences are indexed by job position.

    Raises Infeasible when the minima of jobs alive at some start exceed capacity.
    """
    n = len(starts)
    if ids is None:
        ids = range(n)
    if stats is None:
        stats = PagingStats()
    order = sorted(range(n), key=lambda i: (starts[i], ends[i], ids[i]))
    by_end = sorted(range(n), key=ends.__getitem__)
    stats.sort_keys += 2 * n

    amount = [0] * n
    alive = [False] * n
    colors = [None] * n if track_colors else None
    pool = list(range(1, capacity + 1)) if track_colors else None  # min-heap of free colors
    avail = capacity
    heap = []  # (-end, id, pos) of alive jobs holding surplus above r_min
    push, pop = heapq.heappush, heapq.heappop
    rp = 0
    pq_ops = steals = 0

    for i in order:
        s = starts[i]
        while rp < n and ends[by_end[rp]] <= s:
            j = by_end[rp]
            rp += 1
            if alive[j]:
                alive[j] = False
                avail += amount[j]
                if track_colors:
                    for c in colors[j]:
                        push(pool, c)

        need = r_min[i]
        cap_i = r_max[i]
        take = need if avail > need else avail
        a = take
        avail -= take
        if track_colors:
            mine = [pop(pool) for _ in range(take)]
        # feasibility phase: any alive job with surplus, latest end first
        while a < need:
            while heap:
                pq_ops += 1
                k = heap[0][2]
                if alive[k] and amount[k] > r_min[k]:
                    break
                pop(heap)
                pq_ops += 1
            else:
                raise Infeasible(s)
            mv = amount[k] - r_min[k]
            if mv > need - a:
                mv = need - a
            amount[k] -= mv
            a += mv
            steals += 1
            if track_colors:
                mine.extend(colors[k][-mv:])
                del colors[k][-mv:]
        # profit phase: free colors first
        extra = cap_i - a
        if extra > avail:
            extra = avail
        if extra > 0:
            a += extra
            avail -= extra
            if track_colors:
                mine.extend(pop(pool) for _ in range(extra))
        # then evict surplus from alive jobs ending strictly later
        e_i = ends[i]
        while a < cap_i and heap:
            top = heap[0]
            k = top[2]
            pq_ops += 1
            if not alive[k] or amount[k] <= r_min[k]:
                pop(heap)
                pq_ops += 1
                continue
            if -top[0] <= e_i:
                break
            mv = amount[k] - r_min[k]
            if mv > cap_i - a:
                mv = cap_i - a
            amount[k] -= mv
            a += mv
            steals += 1
            if track_colors:
                mine.extend(colors[k][-mv:])
                del colors[k][-mv:]
        amount[i] = a
        alive[i] = True
        if track_colors:
            colors[i] = mine
        if a > r_min[i]:
            push(heap, (-e_i, ids[i], i))
            pq_ops += 1

    stats.pq_ops += pq_ops
    stats.steals += steals
    return PagingResult(amount, colors, stats)


def _arrays(inst: Instance):
    jobs = inst.jobs
    return ([j.start for j in jobs], [j.end for j in jobs], [j.r_min for j in jobs],
            [j.r_max for j in jobs], [j.id for j in jobs])


def paging_fba(inst: Instance, stats: PagingStats = None) -> BandwidthAllocation:
    """Optimal FBAP allocation when all profits are equal (profits are ignored)."""
    starts, ends, lo, hi, ids = _arrays(inst)
    res = paging_sweep(starts, ends, lo, hi, inst.capacity, ids, stats=stats)
    return BandwidthAllocation({ids[p]: a for p, a in enumerate(res.amounts)})


def paging_fba_colors(inst: Instance) -> dict:
    """Like paging_fba but returns ``id -> sorted list of colors`` held over the whole job."""
    starts, ends, lo, hi, ids = _arrays(inst)
    res = paging_sweep(starts, ends, lo, hi, inst.capacity, ids, track_colors=True)
    return {ids[p]: sorted(c) for p, c in enumerate(res.colors)}


def _normalize_intervals(intervals):
    """Accepts a mapping id -> (s, e), a list of (s, e), or a list of Jobs."""
    if isinstance(intervals, dict):
        return [(i, s, e) for i, (s, e) in intervals.items()]
    out = []
    for k, iv in enumerate(intervals):
        if isinstance(iv, Job):
            out.append((iv.id, iv.start, iv.end))
        else:
            out.append((k, iv[0], iv[1]))
    return out


def max_k_colorable(intervals, k: int) -> dict:
    """Maximum-cardinality k-colorable subset of an interval family.

    Returns ``{id: channel}`` for the selected intervals, channels in ``1..k``.
    Ids are dict keys, Job ids, or list positions depending on the input form.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    items = _normalize_intervals(intervals)
    if not items:
        return {}
    ids = [i for i, _, _ in items]
    starts = [s for _, s, _ in items]
    ends = [e for _, _, e in items]
    n = len(items)
    res = paging_sweep(starts, ends, [0] * n, [1] * n, k, ids, track_colors=True)
    return {ids[p]: res.colors[p][0] for p in range(n) if res.amounts[p] == 1}


def max_independent_set(intervals) -> set:
    return set(max_k_colorable(intervals, 1))


def point_load(intervals) -> int:
    """Maximum number of intervals sharing a point (clique number)."""
    events = []
    for _, s, e in _normalize_intervals(intervals):
        events.append((s, 1))
        events.append((e, -1))
    events.sort(key=lambda ev: (ev[0], ev[1]))
    best = cur = 0
    for _, d in events:
        cur += d
        best = max(best, cur)
    return best


def min_feasibility_check(inst: Instance):
    """Raise Infeasible at the first start where alive minima exceed capacity."""
    starts = sorted((j.start, j.r_min) for j in inst.jobs)
    ends = sorted((j.end, j.r_min) for j in inst.jobs)
    load = s = e = 0
    for t in sorted({j.start for j in inst.jobs}):
        while s < len(starts) and starts[s][0] <= t:
            load += starts[s][1]
            s += 1
        while e < len(ends) and ends[e][0] <= t:
            load -= ends[e][1]
            e += 1
        if load > inst.capacity:
            raise Infeasible(t)
