"""Core types for flexible bandwidth/storage allocation on intervals.

Time is an integer grid; every job occupies the half-open interval
``[start, end)``, so two jobs meeting at a single coordinate do not conflict.
Colors (resource units) are numbered ``1..W``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


class AllocationError(Exception):
    """Base class for verification failures."""


class CapacityViolation(AllocationError):
    def __init__(self, time: int, load: int, capacity: int):
        self.time = time
        self.load = load
        self.capacity = capacity
        super().__init__(f"CapacityViolation: load {load} > capacity {capacity} at t={time}")


class RangeViolation(AllocationError):
    def __init__(self, job_id: int, detail: str):
        self.job_id = job_id
        super().__init__(f"RangeViolation: job {job_id}: {detail}")


class UnknownJob(AllocationError):
    def __init__(self, job_id):
        self.job_id = job_id
        super().__init__(f"UnknownJob: {job_id}")


class BlockOverlap(AllocationError):
    def __init__(self, id_a: int, id_b: int, time: int, color: int):
        self.id_a, self.id_b, self.time, self.color = id_a, id_b, time, color
        super().__init__(
            f"BlockOverlap: jobs {id_a} and {id_b} share color {color} at t={time}")


class InvalidInstance(ValueError):
    pass


class FormatError(ValueError):
    """Malformed instance or solution file."""


@dataclass(frozen=True)
class Job:
    id: int
    start: int
    end: int
    r_min: int = 0
    r_max: int = 1
    profit: int = 1

    def __post_init__(self):
        if self.id < 0:
            raise InvalidInstance(f"job id must be >= 0, got {self.id}")
        if self.start < 0 or self.start >= self.end:
            raise InvalidInstance(f"job {self.id}: need 0 <= start < end, got [{self.start}, {self.end})")
        if not 0 <= self.r_min <= self.r_max or self.r_max < 1:
            raise InvalidInstance(f"job {self.id}: need 0 <= r_min <= r_max, r_max >= 1")
        if self.profit < 1:
            raise InvalidInstance(f"job {self.id}: profit must be >= 1")

    def contains(self, t: int) -> bool:
        return self.start <= t < self.end

    def intersects(self, other: "Job") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class Instance:
    capacity: int
    jobs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.capacity < 1:
            raise InvalidInstance("capacity must be >= 1")
        seen = set()
        for j in self.jobs:
            if j.id in seen:
                raise InvalidInstance(f"duplicate job id {j.id}")
            seen.add(j.id)
            if j.r_max > self.capacity:
                raise InvalidInstance(f"job {j.id}: r_max {j.r_max} exceeds capacity {self.capacity}")

    @property
    def n(self) -> int:
        return len(self.jobs)

    def job(self, job_id: int) -> Job:
        for j in self.jobs:
            if j.id == job_id:
                return j
        raise UnknownJob(job_id)

    def by_id(self) -> dict:
        return {j.id: j for j in self.jobs}

    def with_capacity(self, capacity: int) -> "Instance":
        return Instance(capacity, self.jobs)

    def translate(self, dt: int) -> "Instance":
        return Instance(self.capacity, [Job(j.id, j.start + dt, j.end + dt, j.r_min, j.r_max, j.profit)
                                        for j in self.jobs])


@dataclass(frozen=True)
class ProfitReport:
    total: int
    per_job: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class BandwidthAllocation:
    amounts: Mapping[int, int]

    def get(self, job_id: int) -> int:
        return self.amounts.get(job_id, 0)

    def profit(self, inst: Instance) -> int:
        jobs = inst.by_id()
        return sum(jobs[i].profit * a for i, a in self.amounts.items())


@dataclass(frozen=True)
class ContiguousColoring:
    """``blocks[id] = (first_color, length)``; a missing id means no colors."""
    blocks: Mapping[int, tuple]

    def length(self, job_id: int) -> int:
        b = self.blocks.get(job_id)
        return b[1] if b else 0

    def colors(self, job_id: int) -> range:
        b = self.blocks.get(job_id)
        if not b:
            return range(0)
        return range(b[0], b[0] + b[1])

    def to_allocation(self) -> BandwidthAllocation:
        return BandwidthAllocation({i: b[1] for i, b in self.blocks.items() if b})

    def profit(self, inst: Instance) -> int:
        jobs = inst.by_id()
        return sum(jobs[i].profit * b[1] for i, b in self.blocks.items() if b)


@dataclass(frozen=True)
class CircularColoring:
    """Blocks on a cycle of ``modulus`` colors; a block may wrap past ``modulus`` to 1."""
    blocks: Mapping[int, tuple]
    modulus: int

    def length(self, job_id: int) -> int:
        b = self.blocks.get(job_id)
        return b[1] if b else 0

    def colors(self, job_id: int) -> list:
        b = self.blocks.get(job_id)
        if not b:
            return []
        f, ln = b
        return [(f - 1 + d) % self.modulus + 1 for d in range(ln)]

    def last_color(self, job_id: int) -> int:
        f, ln = self.blocks[job_id]
        return (f - 2 + ln) % self.modulus + 1

    def to_allocation(self) -> BandwidthAllocation:
        return BandwidthAllocation({i: b[1] for i, b in self.blocks.items() if b})

    def profit(self, inst: Instance) -> int:
        jobs = inst.by_id()
        return sum(jobs[i].profit * b[1] for i, b in self.blocks.items() if b)


def event_points(inst: Instance) -> list:
    """Sorted distinct start coordinates; enough for every capacity check."""
    return sorted({j.start for j in inst.jobs})


def point_loads(inst: Instance, amounts: Mapping[int, int]) -> dict:
    """Load at every event point, via a sweep over sorted starts and ends."""
    starts = sorted((j.start, amounts.get(j.id, 0)) for j in inst.jobs)
    ends = sorted((j.end, amounts.get(j.id, 0)) for j in inst.jobs)
    loads = {}
    load = s = e = 0
    for t in event_points(inst):
        while s < len(starts) and starts[s][0] <= t:
            load += starts[s][1]
            s += 1
        while e < len(ends) and ends[e][0] <= t:
            load -= ends[e][1]
            e += 1
        loads[t] = load
    return loads


def is_proper(inst: Instance) -> bool:
    """True iff no job interval strictly contains another (identical intervals are fine)."""
    spans = sorted({(j.start, j.end) for j in inst.jobs}, key=lambda se: (se[0], -se[1]))
    max_end = -1
    for _, e in spans:
        if e <= max_end:
            return False
        max_end = e
    return True


def _check_ids(inst: Instance, ids: Iterable[int]) -> dict:
    jobs = inst.by_id()
    for i in ids:
        if i not in jobs:
            raise UnknownJob(i)
    return jobs


def _report(jobs: dict, amounts: Mapping[int, int]) -> ProfitReport:
    per_job = {i: jobs[i].profit * a for i, a in amounts.items() if a}
    return ProfitReport(sum(per_job.values()), per_job)


def verify_fbap(inst: Instance, alloc: BandwidthAllocation) -> ProfitReport:
    jobs = _check_ids(inst, alloc.amounts)
    for j in inst.jobs:
        a = alloc.get(j.id)
        if a < 0 or a > j.r_max:
            raise RangeViolation(j.id, f"amount {a} outside [0, {j.r_max}]")
        if a < j.r_min:
            raise RangeViolation(j.id, f"amount {a} below r_min {j.r_min}")
    for t, load in point_loads(inst, alloc.amounts).items():
        if load > inst.capacity:
            raise CapacityViolation(t, load, inst.capacity)
    return _report(jobs, alloc.amounts)


def _check_block_ranges(inst, blocks, jobs, modulus):
    for i, b in blocks.items():
        if not b:
            continue
        first, ln = b
        j = jobs[i]
        if ln < 1 or ln > j.r_max:
            raise RangeViolation(i, f"block length {ln} outside [1, {j.r_max}]")
        if first < 1 or first > modulus:
            raise RangeViolation(i, f"first color {first} outside [1, {modulus}]")
    for j in inst.jobs:
        if j.r_min > 0 and not blocks.get(j.id):
            raise RangeViolation(j.id, f"unserved job with r_min {j.r_min}")
        b = blocks.get(j.id)
        if b and b[1] < j.r_min:
            raise RangeViolation(j.id, f"block length {b[1]} below r_min {j.r_min}")


def _check_disjoint(inst, color_sets):
    """color_sets: id -> set of colors. Raises BlockOverlap on the first clash."""
    colored = sorted((j for j in inst.jobs if color_sets.get(j.id)), key=lambda j: (j.start, j.id))
    active = []
    for j in colored:
        active = [a for a in active if a.end > j.start]
        for a in active:
            common = color_sets[a.id] & color_sets[j.id]
            if common:
                raise BlockOverlap(a.id, j.id, j.start, min(common))
        active.append(j)


def verify_fsap(inst: Instance, col: ContiguousColoring) -> ProfitReport:
    jobs = _check_ids(inst, col.blocks)
    _check_block_ranges(inst, col.blocks, jobs, inst.capacity)
    for i, b in col.blocks.items():
        if b and b[0] + b[1] - 1 > inst.capacity:
            raise RangeViolation(i, f"block ({b[0]}, {b[1]}) runs past color {inst.capacity}")
    _check_disjoint(inst, {i: set(col.colors(i)) for i in col.blocks})
    return _report(jobs, {i: b[1] for i, b in col.blocks.items() if b})


def verify_circular(inst: Instance, col: CircularColoring) -> ProfitReport:
    jobs = _check_ids(inst, col.blocks)
    _check_block_ranges(inst, col.blocks, jobs, col.modulus)
    for i, b in col.blocks.items():
        if b and b[1] > col.modulus:
            raise RangeViolation(i, f"block length {b[1]} exceeds modulus {col.modulus}")
    _check_disjoint(inst, {i: set(col.colors(i)) for i in col.blocks})
    return _report(jobs, {i: b[1] for i, b in col.blocks.items() if b})


# --- file formats -----------------------------------------------------------

_JOB_KEYS = {"id", "start", "end", "rmin", "rmax", "profit"}
_ALLOC_KEYS = {"id", "amount", "first_color"}


def _require_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise FormatError(f"{where}: unknown fields {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise FormatError(f"{where}: missing fields {sorted(missing)}")


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{where}: expected integer, got {v!r}")
    return v


def instance_to_dict(inst: Instance) -> dict:
    return {
        "capacity": inst.capacity,
        "jobs": [{"id": j.id, "start": j.start, "end": j.end, "rmin": j.r_min,
                  "rmax": j.r_max, "profit": j.profit} for j in inst.jobs],
    }


def instance_from_dict(d) -> Instance:
    _require_keys(d, {"capacity", "jobs"}, {"capacity", "jobs"}, "instance")
    if not isinstance(d["jobs"], list):
        raise FormatError("instance: 'jobs' must be a list")
    jobs = []
    for k, jd in enumerate(d["jobs"]):
        _require_keys(jd, _JOB_KEYS, {"id", "start", "end", "rmax"}, f"jobs[{k}]")
        vals = {key: _int(jd[key], f"jobs[{k}].{key}") for key in jd}
        try:
            jobs.append(Job(vals["id"], vals["start"], vals["end"], vals.get("rmin", 0),
                            vals["rmax"], vals.get("profit", 1)))
        except InvalidInstance as exc:
            raise FormatError(str(exc)) from exc
    try:
        return Instance(_int(d["capacity"], "capacity"), jobs)
    except InvalidInstance as exc:
        raise FormatError(str(exc)) from exc


def solution_to_dict(inst: Instance, sol) -> dict:
    if isinstance(sol, ContiguousColoring):
        rows = [{"id": j.id, "amount": sol.length(j.id),
                 "first_color": sol.blocks[j.id][0] if sol.blocks.get(j.id) else None}
                for j in inst.jobs]
        kind = "fsap"
    elif isinstance(sol, BandwidthAllocation):
        rows = [{"id": j.id, "amount": sol.get(j.id), "first_color": None} for j in inst.jobs]
        kind = "fbap"
    else:
        raise TypeError(f"cannot serialize {type(sol).__name__}")
    return {"kind": kind, "alloc": rows, "total_profit": sol.profit(inst)}


def solution_from_dict(d):
    """Returns (kind, solution, declared_total_profit)."""
    _require_keys(d, {"kind", "alloc", "total_profit"}, {"kind", "alloc"}, "solution")
    kind = d["kind"]
    if kind not in ("fbap", "fsap"):
        raise FormatError(f"solution: kind must be 'fbap' or 'fsap', got {kind!r}")
    if not isinstance(d["alloc"], list):
        raise FormatError("solution: 'alloc' must be a list")
    amounts, blocks = {}, {}
    for k, row in enumerate(d["alloc"]):
        _require_keys(row, _ALLOC_KEYS, {"id", "amount"}, f"alloc[{k}]")
        jid = _int(row["id"], f"alloc[{k}].id")
        amount = _int(row["amount"], f"alloc[{k}].amount")
        first = row.get("first_color")
        if kind == "fbap":
            if first is not None:
                raise FormatError(f"alloc[{k}]: first_color must be null for fbap")
            amounts[jid] = amount
        elif amount > 0:
            if first is None:
                raise FormatError(f"alloc[{k}]: fsap block with amount > 0 needs first_color")
            blocks[jid] = (_int(first, f"alloc[{k}].first_color"), amount)
    total = d.get("total_profit")
    if total is not None:
        total = _int(total, "total_profit")
    sol = BandwidthAllocation(amounts) if kind == "fbap" else ContiguousColoring(blocks)
    return kind, sol, total


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> Instance:
    return instance_from_dict(load_json(path))


def save_instance(inst: Instance, path):
    dump_json(instance_to_dict(inst), path)
