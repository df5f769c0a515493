"""Brute-force exact FBAP/FSAP solvers for small instances.

These are the ground truth for optimality and ratio checks, so they share no
code with the algorithms they check beyond the model types.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .model import BandwidthAllocation, ContiguousColoring, Instance

DEFAULT_MAX_NODES = 10 ** 7


class BudgetExceeded(Exception):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"BudgetExceeded: search passed {nodes} nodes")


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")

    @classmethod
    def from_env(cls) -> "OracleBudget":
        raw = os.environ.get("FLEXALLOC_ORACLE_BUDGET")
        return cls(int(raw)) if raw else cls()


def _point_ranges(inst: Instance):
    points = sorted({j.start for j in inst.jobs})
    index = {t: k for k, t in enumerate(points)}
    spans = {}
    for j in inst.jobs:
        lo = index[j.start]
        hi = lo
        while hi < len(points) and points[hi] < j.end:
            hi += 1
        spans[j.id] = (lo, hi)
    return points, spans


def oracle_fbap(inst: Instance, budget: OracleBudget = None) -> BandwidthAllocation:
    """Exact max of sum p_i a_i over r_min(i) <= a_i <= r_max(i) under capacity."""
    budget = budget or OracleBudget()
    points, spans = _point_ranges(inst)
    jobs = sorted(inst.jobs, key=lambda j: (-j.profit * j.r_max, j.id))
    W = inst.capacity
    load = [0] * len(points)
    # suffix sums of p*r_max for the pruning bound
    tail = [0] * (len(jobs) + 1)
    for d in range(len(jobs) - 1, -1, -1):
        tail[d] = tail[d + 1] + jobs[d].profit * jobs[d].r_max
    best = [-1, None]
    choice = [0] * len(jobs)
    nodes = [0]

    def dfs(d, value):
        nodes[0] += 1
        if nodes[0] > budget.max_nodes:
            raise BudgetExceeded(nodes[0])
        if value + tail[d] <= best[0]:
            return
        if d == len(jobs):
            best[0] = value
            best[1] = list(choice)
            return
        j = jobs[d]
        lo, hi = spans[j.id]
        room = min((W - load[t] for t in range(lo, hi)), default=W)
        top = min(j.r_max, room)
        for a in range(top, j.r_min - 1, -1):
            for t in range(lo, hi):
                load[t] += a
            choice[d] = a
            dfs(d + 1, value + j.profit * a)
            for t in range(lo, hi):
                load[t] -= a

    dfs(0, 0)
    if best[1] is None:
        from .paging import Infeasible
        raise Infeasible(_first_infeasible_point(inst))
    return BandwidthAllocation({j.id: a for j, a in zip(jobs, best[1])})


def _first_infeasible_point(inst):
    for t in sorted({j.start for j in inst.jobs}):
        if sum(j.r_min for j in inst.jobs if j.start <= t < j.end) > inst.capacity:
            return t
    return -1


def _runs(free_mask: int, W: int):
    """Maximal runs of set bits in ``free_mask`` (bit c-1 is color c) as (first, length)."""
    out = []
    c = 1
    while c <= W:
        if free_mask >> (c - 1) & 1:
            f = c
            while c <= W and free_mask >> (c - 1) & 1:
                c += 1
            out.append((f, c - f))
        else:
            c += 1
    return out


def oracle_fsap(inst: Instance, budget: OracleBudget = None) -> ContiguousColoring:
    """Exact max-profit contiguous coloring by depth-first search in start order.

    At each job every block inside the colors left free by already placed,
    intersecting jobs is tried (longest first), plus leaving the job uncolored.
    The bound groups the undecided jobs by a greedy stabbing of their intervals:
    jobs sharing a point can together use at most the free colors there.
    Branches that cannot be gravity/extension normal forms are cut once all
    neighbours of a job are decided.
    """
    budget = budget or OracleBudget()
    W = inst.capacity
    full = (1 << W) - 1
    points, spans = _point_ranges(inst)
    jobs = sorted(inst.jobs, key=lambda j: (j.start, j.end, j.id))
    n = len(jobs)
    occ = [0] * len(points)
    placed = [None] * n
    best = [-1, None]
    nodes = [0]
    span = [spans[j.id] for j in jobs]
    # stabbing order: undecided jobs sorted by end, each group stabbed at its last point
    by_end = sorted(range(n), key=lambda d: (jobs[d].end, d))

    def busy_of(d):
        lo, hi = span[d]
        m = 0
        for t in range(lo, hi):
            m |= occ[t]
        return m

    def group_value(items, free):
        # fractional knapsack: jobs sharing one point split its free colors
        val = 0
        for p, u in sorted(items, reverse=True):
            take = u if u < free else free
            val += p * take
            free -= take
            if free <= 0:
                break
        return val

    def bound(d_from):
        total = 0
        stab = -1
        items = []
        for d in by_end:
            if d < d_from:
                continue
            lo, hi = span[d]
            j = jobs[d]
            free_runs = _runs(full & ~busy_of(d), W)
            u = min(j.r_max, max((ln for _, ln in free_runs), default=0))
            if not lo <= stab < hi:
                if items:
                    total += group_value(items, W - bin(occ[stab]).count("1"))
                stab = hi - 1
                items = []
            items.append((j.profit, u))
        if items:
            total += group_value(items, W - bin(occ[stab]).count("1"))
        return total

    # closing depth: once jobs [0, close[d]) are decided, every job meeting d is decided
    close_at = [[] for _ in range(n + 1)]
    for d in range(n):
        c = d + 1
        while c < n and jobs[c].start < jobs[d].end:
            c += 1
        close_at[c].append(d)

    def normalized(d):
        # an optimum can be pushed down and stretched up until every block rests on
        # color 1 or a neighbour, is capped by W, r_max or a neighbour, and no
        # uncolored job has a color free over its whole interval
        lo, hi = span[d]
        b = placed[d]
        around = busy_of(d)
        if b is None:
            return around == full
        first, length = b
        around &= ~(((1 << length) - 1) << (first - 1))
        if first > 1 and not around >> (first - 2) & 1:
            return False
        top = first + length - 1
        if length < jobs[d].r_max and top < W and not around >> top & 1:
            return False
        return True

    def dfs(d, value):
        nodes[0] += 1
        if nodes[0] > budget.max_nodes:
            raise BudgetExceeded(nodes[0])
        for c in close_at[d]:
            if not normalized(c):
                return
        if d == n:
            if value > best[0]:
                best[0] = value
                best[1] = list(placed)
            return
        if value + bound(d) <= best[0]:
            return
        j = jobs[d]
        lo, hi = span[d]
        free = full & ~busy_of(d)
        options = []
        for f, ln in _runs(free, W):
            for length in range(min(ln, j.r_max), max(j.r_min, 1) - 1, -1):
                for first in range(f, f + ln - length + 1):
                    options.append((length, first))
        options.sort(key=lambda o: (-o[0], o[1]))
        for length, first in options:
            mask = ((1 << length) - 1) << (first - 1)
            for t in range(lo, hi):
                occ[t] |= mask
            placed[d] = (first, length)
            dfs(d + 1, value + j.profit * length)
            for t in range(lo, hi):
                occ[t] &= ~mask
        placed[d] = None
        if j.r_min == 0:
            dfs(d + 1, value)

    dfs(0, 0)
    if best[1] is None:
        from .paging import Infeasible
        raise Infeasible(_first_infeasible_point(inst))
    return ContiguousColoring({jobs[d].id: b for d, b in enumerate(best[1]) if b})
