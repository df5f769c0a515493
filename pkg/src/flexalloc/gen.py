"""Instance generators: seeded random profiles and the 3XC hardness gadget."""
from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from typing import Optional

from .model import ContiguousColoring, Instance, Job


class BadParams(ValueError):
    pass


class InvalidThreeXc(ValueError):
    pass


class NoCover(ValueError):
    pass


PROFILES = ("general", "proper", "uniform")


def gen_random(seed, n: int, W: int, max_time: int, profile: str = "general", *,
               max_req: int = None, max_profit: int = 5, max_len: int = None,
               rmin_max: int = 0) -> Instance:
    """Random instance, deterministic per seed.

    ``profile`` is ``general``, ``proper`` (no containment) or ``uniform``
    (``r_max = max_req``, unit profit, ``r_min = 0``). ``rmin_max`` caps the
    random minima of the general profile; minima are then trimmed so every
    point stays feasible.
    """
    if n < 0 or W < 1 or max_time < 1:
        raise BadParams("need n >= 0, W >= 1, max_time >= 1")
    if profile not in PROFILES:
        raise BadParams(f"unknown profile {profile!r}")
    if profile == "uniform":
        if max_req is None or not 1 <= max_req <= W:
            raise BadParams("uniform profile needs 1 <= max_req <= W")
    rng = random.Random(seed)
    max_len = max_len or max_time
    if profile == "proper":
        spans = _proper_spans(rng, n, max_time, max_len)
    else:
        spans = []
        for _ in range(n):
            s = rng.randrange(max_time)
            e = s + rng.randint(1, max(1, min(max_len, max_time - s)))
            spans.append((s, e))
    jobs = []
    for i, (s, e) in enumerate(spans):
        if profile == "uniform":
            jobs.append(Job(i, s, e, 0, max_req, 1))
            continue
        hi = rng.randint(1, W)
        lo = rng.randint(0, min(rmin_max, hi))
        jobs.append(Job(i, s, e, lo, hi, rng.randint(1, max_profit)))
    inst = Instance(W, jobs)
    if rmin_max:
        inst = _trim_minima(inst)
    return inst


def _proper_spans(rng, n, max_time, max_len):
    # co-sorted starts and ends: i-th start pairs with i-th end, so no interval nests another
    if n == 0:
        return []
    starts = sorted(rng.randrange(max_time) for _ in range(n))
    shift = rng.randint(1, max(1, max_len))
    ends = sorted(s + shift + rng.randint(0, max(0, max_len - shift)) for s in starts)
    out = []
    for s, e in zip(starts, ends):
        if out:
            ps, pe = out[-1]
            if s == ps:
                e = pe          # same start: identical span
            elif e <= pe:
                e = pe + 1      # distinct start: keep ends strictly increasing
        out.append((s, e))
    return out


def _trim_minima(inst: Instance) -> Instance:
    jobs = {j.id: j for j in inst.jobs}
    for t in sorted({j.start for j in inst.jobs}):
        alive = [j for j in jobs.values() if j.start <= t < j.end]
        excess = sum(j.r_min for j in alive) - inst.capacity
        for j in sorted(alive, key=lambda j: -j.id):
            if excess <= 0:
                break
            cut = min(j.r_min, excess)
            jobs[j.id] = Job(j.id, j.start, j.end, j.r_min - cut, j.r_max, j.profit)
            excess -= cut
    return Instance(inst.capacity, [jobs[j.id] for j in inst.jobs])


# --- 3XC reduction ------------------------------------------------------------

@dataclass(frozen=True)
class ThreeXcInstance:
    """Sets of exactly three elements over ``1..3n``; ``cover`` lists set indices (1-based)."""
    n: int
    sets: tuple
    cover: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(s) for s in self.sets))
        if self.cover is not None:
            object.__setattr__(self, "cover", tuple(self.cover))
        if self.n < 1:
            raise InvalidThreeXc("n must be >= 1")
        if len(self.sets) < self.n:
            raise InvalidThreeXc(f"need at least n={self.n} sets, got {len(self.sets)}")
        for k, s in enumerate(self.sets, 1):
            if len(s) != 3 or len(set(s)) != 3:
                raise InvalidThreeXc(f"set {k} must hold three distinct elements: {s}")
            if not all(1 <= e <= 3 * self.n for e in s):
                raise InvalidThreeXc(f"set {k} has elements outside 1..{3 * self.n}: {s}")
        if self.cover is not None:
            self.check_cover(self.cover)

    @property
    def m(self) -> int:
        return len(self.sets)

    def check_cover(self, cover):
        if len(cover) != self.n or len(set(cover)) != self.n:
            raise NoCover(f"cover must name {self.n} distinct sets, got {list(cover)}")
        seen = []
        for k in cover:
            if not 1 <= k <= self.m:
                raise NoCover(f"cover names unknown set {k}")
            seen.extend(self.sets[k - 1])
        if sorted(seen) != list(range(1, 3 * self.n + 1)):
            raise NoCover("cover sets do not partition the ground set")

    @classmethod
    def from_dict(cls, d) -> "ThreeXcInstance":
        if not isinstance(d, dict) or set(d) - {"n", "sets", "cover"} or not {"n", "sets"} <= set(d):
            raise InvalidThreeXc("expected an object with keys n, sets and optional cover")
        return cls(d["n"], d["sets"], d.get("cover"))

    def to_dict(self) -> dict:
        out = {"n": self.n, "sets": [list(s) for s in self.sets]}
        if self.cover is not None:
            out["cover"] = list(self.cover)
        return out


@dataclass(frozen=True)
class GadgetOutput:
    source: ThreeXcInstance
    instance: Instance
    labels: dict                  # job id -> readable name
    ids: dict                     # readable name -> job id
    big: int                      # the large profit unit P
    expected_profit: int
    witness: Optional[ContiguousColoring] = None


def gadget_profit(m: int, n: int) -> int:
    """Profit of the witness coloring built from an exact cover."""
    P = 8 * n + 45 * m
    return (42 * m + 14) * P * P + 405 * m * m + 45 * n * n + 16 * m


# Two-choice gadget, offsets from its start and profit class.
# 1-8 take one color, 9-16 take three; 9-12 and 13-16 are two chains that
# alternate between the shared 4-color bank and the rotating 3-color bank.
_GADGET = {
    1: (0, 2), 2: (3, 6), 3: (7, 10), 4: (11, 14),
    5: (1, 4), 6: (5, 8), 7: (9, 12), 8: (13, 15),
    9: (0, 2), 10: (3, 6), 11: (7, 10), 12: (11, 15),
    13: (0, 4), 14: (5, 8), 15: (9, 12), 16: (13, 15),
}


def gen_gadget(x: ThreeXcInstance) -> GadgetOutput:
    """FSAP instance (r_min = 0) whose optimum reaches ``gadget_profit`` iff ``x`` has a cover."""
    n, m = x.n, x.m
    W = 9 * m + 7
    P = 8 * n + 45 * m
    P2 = P * P
    end = 8 * n + 45 * m + 1
    jobs, labels = [], {}

    def add(name, s, e, rmax, profit):
        jid = len(jobs)
        jobs.append(Job(jid, s, e, 0, rmax, profit))
        labels[jid] = name

    for i in range(1, 3 * m + 4):
        if i <= 3 * n:
            ls, rs = i, 5 * n + 45 * m + i
        elif i <= 3 * m:
            ls, rs = 4 * n, 4 * n + 45 * m
        else:
            ls, rs = 4 * n + 15 * m, 4 * n + 30 * m
        add(f"L{i}", 0, ls, 3, P2)
        add(f"R{i}", rs, end, 3, P2)
    for i in range(1, m + 1):
        g = 4 * n + 15 * m + 15 * (i - 1)
        for q in range(1, 17):
            a, b = _GADGET[q]
            p = 1 if q in (1, 8) else (2 if q <= 7 else P2)
            add(f"G{i}.{q}", g + a, g + b, 1 if q <= 8 else 3, p)
        for k, e in enumerate(x.sets[i - 1]):
            # element pair meets at g+2, g+6, g+10; each part earns its own length
            ls, le = e, g + 3 + 4 * k
            rs, re_ = g + 2 + 4 * k, 5 * n + 45 * m + e
            add(f"E{i}.{k + 1}.L", ls, le, 3, le - ls)
            add(f"E{i}.{k + 1}.R", rs, re_, 3, re_ - rs)
        for k in range(3):
            # filler pair: meets at g+4, g+8, g+12
            add(f"F{i}.{k + 1}.L", 4 * n, g + 5 + 4 * k, 3, g + 5 + 4 * k - 4 * n)
            add(f"F{i}.{k + 1}.R", g + 4 + 4 * k, 4 * n + 45 * m, 3, 4 * n + 45 * m - g - 4 - 4 * k)
    out = GadgetOutput(x, Instance(W, jobs), labels, {v: k for k, v in labels.items()}, P,
                       gadget_profit(m, n))
    if x.cover is not None:
        out = dataclasses.replace(out, witness=gen_gadget_witness(out))
    return out


def gen_gadget_witness(out: GadgetOutput, cover=None) -> ContiguousColoring:
    """Coloring of the gadget instance built from an exact cover."""
    x = out.source
    cover = tuple(cover if cover is not None else (x.cover or ()))
    if not cover:
        raise NoCover("no cover given")
    x.check_cover(cover)
    n, m = x.n, x.m
    ids = out.ids
    blocks = {}

    def give(name, first, length=3):
        blocks[ids[name]] = (first, length)

    give(f"L{3 * m + 2}", 1, 1)
    give(f"R{3 * m + 2}", 1, 1)
    give(f"L{3 * m + 3}", 2)
    give(f"R{3 * m + 3}", 2)
    give(f"L{3 * m + 1}", 5)
    give(f"R{3 * m + 1}", 9 * m + 5)
    chosen = set(cover)
    k = 0
    for i in range(1, m + 1):
        base = 9 * i - 4          # four 3-blocks base, base+3, base+6, base+9
        if i in chosen:
            a, b, c = x.sets[i - 1]
            for q in (5, 6, 7, 8):
                give(f"G{i}.{q}", 1, 1)
            for q in (13, 14, 15, 16):
                give(f"G{i}.{q}", 2)
            for q in (9, 10, 11, 12):
                give(f"G{i}.{q}", base + 3 * (q - 9))
            for idx, e in enumerate((a, b, c)):
                give(f"L{e}", base + 3 * (idx + 1))
                give(f"E{i}.{idx + 1}.L", base + 3 * (idx + 1))
                give(f"E{i}.{idx + 1}.R", base + 3 * idx)
                give(f"R{e}", base + 3 * idx)
            k += 1
        else:
            h = 3 * (n + i - k)
            for q in (1, 2, 3, 4):
                give(f"G{i}.{q}", 1, 1)
            for q in (9, 10, 11, 12):
                give(f"G{i}.{q}", 2)
            for q in (13, 14, 15, 16):
                give(f"G{i}.{q}", base + 3 * (q - 13))
            give(f"R{h - 2}", base)
            give(f"L{h - 2}", base + 3)
            give(f"R{h - 1}", base + 3)
            give(f"L{h - 1}", base + 6)
            give(f"R{h}", base + 6)
            give(f"L{h}", base + 9)
            for idx in range(3):
                give(f"F{i}.{idx + 1}.R", base + 3 * idx)
                give(f"F{i}.{idx + 1}.L", base + 3 * (idx + 1))
    return ContiguousColoring(blocks)
