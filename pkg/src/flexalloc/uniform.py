"""FSAP on uniform instances: every job has r_min = 0, r_max = Max and unit profit.

With ``k = ceil(W / Max)`` the solvers here are

* an exact channel layout when Max divides W,
* ``a_max_small``: the paging optimum split into full jobs (packed into k-1
  channels of Max colors) and partial jobs (an independent set of them gets the
  top ``W mod Max`` colors), which is exact for k <= 2 and within 2k/(2k-1)
  otherwise,
* ``uniform_ptas``: for k <= 1/eps an exact search over solutions built from
  strips of ``floor(eps Max / 4)`` colors, for larger k the best
  (k-1)-channel layout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .model import ContiguousColoring, Instance
from .paging import max_independent_set, max_k_colorable, paging_fba
from .unitpack import UnitJob, pack_units


class NotUniform(ValueError):
    pass


class NotMultiple(ValueError):
    pass


class StripTooSmall(ValueError):
    pass


class BadEpsilon(ValueError):
    pass


@dataclass(frozen=True)
class UniformParams:
    capacity: int
    max_req: int

    def __post_init__(self):
        if not 1 <= self.max_req <= self.capacity:
            raise NotUniform(f"need 1 <= Max <= W, got Max={self.max_req}, W={self.capacity}")

    @property
    def k(self) -> int:
        return -(-self.capacity // self.max_req)

    @property
    def remainder(self) -> int:
        return self.capacity % self.max_req

    @property
    def lam(self) -> Fraction:
        return Fraction(self.remainder, self.max_req)

    @classmethod
    def of(cls, inst: Instance, max_req: int = None) -> "UniformParams":
        """Check uniformity and read Max off the jobs (``max_req`` is needed only if there are none)."""
        reqs = {j.r_max for j in inst.jobs}
        if len(reqs) > 1:
            raise NotUniform(f"jobs have different r_max values {sorted(reqs)}")
        for j in inst.jobs:
            if j.r_min != 0 or j.profit != 1:
                raise NotUniform(f"job {j.id}: uniform instances need r_min = 0 and profit 1")
        if reqs:
            found = reqs.pop()
            if max_req is not None and max_req != found:
                raise NotUniform(f"jobs have r_max {found}, expected {max_req}")
            max_req = found
        return cls(inst.capacity, max_req if max_req is not None else inst.capacity)


def _params(inst, params):
    if params is None:
        return UniformParams.of(inst)
    if params.capacity != inst.capacity:
        raise NotUniform("params were built for another capacity")
    UniformParams.of(inst, params.max_req)
    return params


@dataclass(frozen=True)
class StripLayout:
    strip_size: int
    ranges: Tuple[Tuple[int, int], ...]       # inclusive (first, last) color of each strip

    @classmethod
    def build(cls, W: int, h: int) -> "StripLayout":
        if h < 1:
            raise StripTooSmall(f"strip size {h} < 1")
        ranges = tuple((c, min(c + h - 1, W)) for c in range(1, W + 1, h))
        return cls(h, ranges)

    @property
    def count(self) -> int:
        return len(self.ranges)

    def sizes(self) -> List[int]:
        return [b - a + 1 for a, b in self.ranges]


@dataclass(frozen=True)
class SupportSplit:
    full: frozenset          # jobs holding Max colors in the paging optimum
    partial: frozenset       # jobs holding some but fewer than Max
    amounts: dict

    @property
    def g1(self):
        return self.partial

    @property
    def g2(self):
        return self.full


def support_split(inst: Instance, params: UniformParams = None) -> SupportSplit:
    params = _params(inst, params)
    amounts = paging_fba(inst).amounts
    full = frozenset(i for i, a in amounts.items() if a == params.max_req)
    partial = frozenset(i for i, a in amounts.items() if 0 < a < params.max_req)
    return SupportSplit(full, partial, dict(amounts))


def _channel_blocks(chosen: dict, max_req: int) -> dict:
    return {i: ((c - 1) * max_req + 1, max_req) for i, c in chosen.items()}


def solve_uniform_exact_multiple(inst: Instance, params: UniformParams = None) -> ContiguousColoring:
    params = _params(inst, params)
    if params.remainder:
        raise NotMultiple(f"W={params.capacity} is not a multiple of Max={params.max_req}")
    if not inst.jobs:
        return ContiguousColoring({})
    chosen = max_k_colorable(list(inst.jobs), params.capacity // params.max_req)
    return ContiguousColoring(_channel_blocks(chosen, params.max_req))


def _greedy_channels(jobs, channels: int) -> dict:
    """Left-to-right interval coloring with the lowest free channel."""
    free = list(range(1, channels + 1))
    active = []                    # (end, channel)
    out = {}
    for j in sorted(jobs, key=lambda j: (j.start, j.end, j.id)):
        still = []
        for e, c in active:
            if e <= j.start:
                free.append(c)
            else:
                still.append((e, c))
        active = still
        if not free:
            raise AssertionError(f"job {j.id}: more than {channels} full jobs overlap")
        c = min(free)
        free.remove(c)
        out[j.id] = c
        active.append((j.end, c))
    return out


def a_max_small(inst: Instance, params: UniformParams = None) -> ContiguousColoring:
    params = _params(inst, params)
    if params.remainder == 0:
        return solve_uniform_exact_multiple(inst, params)
    split = support_split(inst, params)
    r = params.remainder
    odd = {i: a for i, a in split.amounts.items() if i in split.partial and a != r}
    assert not odd, f"partial jobs with amounts other than W mod Max: {odd}"
    jobs = inst.by_id()
    blocks = _channel_blocks(_greedy_channels([jobs[i] for i in split.full], params.k - 1),
                             params.max_req)
    top = (params.k - 1) * params.max_req + 1
    for i in max_independent_set([jobs[i] for i in split.partial]):
        blocks[i] = (top, r)
    return ContiguousColoring(blocks)


def _check_epsilon(epsilon) -> Fraction:
    if isinstance(epsilon, float):
        raise BadEpsilon("pass epsilon as a Fraction or an 'a/b' string")
    try:
        eps = Fraction(epsilon)
    except (TypeError, ValueError) as exc:
        raise BadEpsilon(f"cannot read epsilon {epsilon!r}") from exc
    if not 0 < eps < 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def strip_size(params: UniformParams, epsilon) -> int:
    return math.floor(_check_epsilon(epsilon) * params.max_req / 4)


def _strip_search(inst: Instance, params: UniformParams, h: int) -> ContiguousColoring:
    layout = StripLayout.build(params.capacity, h)
    sizes = layout.sizes()
    units = [UnitJob(j.id, j.start, j.end, 1, 1, params.max_req) for j in inst.jobs]
    packed = pack_units(units, sizes)
    blocks = {}
    for i, (f, c) in packed.items():
        first = layout.ranges[f][0]
        last = layout.ranges[f + c - 1][1]
        blocks[i] = (first, last - first + 1)
    return ContiguousColoring(blocks)


def strip_dp(inst: Instance, params: UniformParams = None, epsilon=Fraction(1, 2)) -> ContiguousColoring:
    """Best coloring in which every block is a run of whole strips."""
    params = _params(inst, params)
    h = strip_size(params, epsilon)
    if h < 1:
        raise StripTooSmall(f"floor(eps*Max/4) = {h} for Max={params.max_req}, eps={epsilon}")
    return _strip_search(inst, params, h)


def ptas_branch(params: UniformParams, epsilon) -> str:
    """'strips', 'exact' (strip size 1) or 'channels'."""
    eps = _check_epsilon(epsilon)
    if params.k * eps <= 1:
        return "strips" if strip_size(params, eps) >= 1 else "exact"
    return "channels"


def uniform_ptas(inst: Instance, epsilon, params: UniformParams = None) -> ContiguousColoring:
    params = _params(inst, params)
    branch = ptas_branch(params, epsilon)
    if not inst.jobs:
        return ContiguousColoring({})
    if branch == "strips":
        return strip_dp(inst, params, epsilon)
    if branch == "exact":
        return _strip_search(inst, params, 1)
    chosen = max_k_colorable(list(inst.jobs), params.k - 1)
    return ContiguousColoring(_channel_blocks(chosen, params.max_req))
