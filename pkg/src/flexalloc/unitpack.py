"""Exact block packing on a coarse color grid.

The color axis is cut into consecutive units (strips or grid cells) with given
sizes. A job either gets nothing or a run of consecutive units whose total
size lies in its allowed range, earning ``profit * size``. ``pack_units``
returns a max-profit packing by a sweep-ordered branch and bound.

When all units are equal, only packings in normal form are explored: each
block rests on unit 0 or on a unit used by an overlapping job, cannot grow
upward, and no unserved job has room for its smallest block. Pushing blocks
down and stretching them up turns any packing into one of these without losing
profit, so the optimum is unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence


class SearchBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class UnitJob:
    id: int
    start: int
    end: int
    profit: int
    min_colors: int     # smallest allowed block size (>= 1)
    max_colors: int     # largest allowed block size


def _free_runs(free: int, N: int):
    out = []
    u = 0
    while u < N:
        if free >> u & 1:
            f = u
            while u < N and free >> u & 1:
                u += 1
            out.append((f, u - f))
        else:
            u += 1
    return out


def pack_units(jobs: Sequence[UnitJob], unit_sizes: Sequence[int],
               max_nodes: int = 10 ** 7) -> Dict[int, tuple]:
    """``{id: (first_unit, n_units)}`` for the served jobs, units numbered from 0."""
    N = len(unit_sizes)
    prefix = [0]
    for s in unit_sizes:
        prefix.append(prefix[-1] + s)
    size = lambda f, c: prefix[f + c] - prefix[f]
    uniform = len(set(unit_sizes)) <= 1
    full = (1 << N) - 1
    jobs = sorted(jobs, key=lambda j: (j.start, j.end, j.id))
    n = len(jobs)
    points = sorted({j.start for j in jobs})
    span = []
    for j in jobs:
        lo = points.index(j.start)
        hi = lo
        while hi < len(points) and points[hi] < j.end:
            hi += 1
        span.append((lo, hi))
    occ = [0] * len(points)
    placed = [None] * n
    best = [-1, None]
    nodes = [0]
    by_end = sorted(range(n), key=lambda d: (jobs[d].end, d))
    unit = unit_sizes[0] if N else 0
    min_units = [(-(-j.min_colors // unit) if unit else 0) for j in jobs]

    def allowed(d, f, c):
        s = size(f, c)
        return jobs[d].min_colors <= s <= jobs[d].max_colors

    def busy_of(d):
        lo, hi = span[d]
        m = 0
        for t in range(lo, hi):
            m |= occ[t]
        return m

    def free_colors(mask):
        return sum(unit_sizes[u] for u in range(N) if not mask >> u & 1)

    def bound(d_from):
        total = 0
        stab = -1
        items = []

        def close():
            nonlocal total
            free = free_colors(occ[stab])
            for p, u in sorted(items, reverse=True):
                take = min(u, free)
                total += p * take
                free -= take
                if free <= 0:
                    break

        for d in by_end:
            if d < d_from:
                continue
            lo, hi = span[d]
            runs = _free_runs(full & ~busy_of(d), N)
            room = max((size(f, c) for f, c in runs), default=0)
            u = min(jobs[d].max_colors, room)
            if u < jobs[d].min_colors:
                continue
            if not lo <= stab < hi:
                if items:
                    close()
                stab = hi - 1
                items = []
            items.append((jobs[d].profit, u))
        if items:
            close()
        return total

    close_at = [[] for _ in range(n + 1)]
    for d in range(n):
        c = d + 1
        while c < n and jobs[c].start < jobs[d].end:
            c += 1
        close_at[c].append(d)

    def normal(d):
        around = busy_of(d)
        b = placed[d]
        if b is None:
            need = min_units[d]
            if need * unit > jobs[d].max_colors:
                return True
            return all(c < need for _, c in _free_runs(full & ~around, N))
        f, c = b
        around &= ~(((1 << c) - 1) << f)
        if f > 0 and not around >> (f - 1) & 1:
            return False
        if f + c < N and (c + 1) * unit <= jobs[d].max_colors and not around >> (f + c) & 1:
            return False
        return True

    def dfs(d, value):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise SearchBudgetExceeded(f"more than {max_nodes} search nodes")
        if uniform:
            for c in close_at[d]:
                if not normal(c):
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
        options = []
        for f0, ln in _free_runs(full & ~busy_of(d), N):
            for c in range(ln, 0, -1):
                for f in range(f0, f0 + ln - c + 1):
                    if allowed(d, f, c):
                        options.append((size(f, c), f, c))
        options.sort(key=lambda o: (-o[0], o[1]))
        for s, f, c in options:
            mask = ((1 << c) - 1) << f
            for t in range(lo, hi):
                occ[t] |= mask
            placed[d] = (f, c)
            dfs(d + 1, value + j.profit * s)
            for t in range(lo, hi):
                occ[t] &= ~mask
        placed[d] = None
        dfs(d + 1, value)

    dfs(0, 0)
    return {jobs[d].id: b for d, b in enumerate(best[1]) if b}
