"""(5/4 + eps)-approximation for FSAP when no job interval nests inside another.

Two candidate solutions are built and the better one is kept:

* the best coloring that serves only wide jobs (``r_max >= eps W``), each
  with at least ``ceil(eps W)`` colors, found by an exact grid search;
* the narrow pipeline: a fractional FBAP optimum on ``floor((1-eps) W)``
  colors with the extra profit of wide jobs capped, rounded to an integral
  allocation, laid out as consecutive blocks on a circle, cut at the cheapest
  point and unrolled into a line, with the narrow jobs that straddle the cut
  moved into the spare top colors.

The optimum is unknown, so the narrow pipeline is run over a geometric grid of
guesses. Internally everything runs with ``eps / 3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .lp import (LpInfeasible, base_cap, build_lp_fba, reduced_capacity, round_lp_fba,
                 simplex_solve)
from .model import (BandwidthAllocation, CapacityViolation, CircularColoring, ContiguousColoring,
                    Instance, is_proper, point_loads, verify_circular, verify_fsap)
from .unitpack import UnitJob, pack_units

BETA = Fraction(4, 5)


class NotProper(ValueError):
    pass


class BadEpsilon(ValueError):
    pass


class TopBandOverflow(AssertionError):
    pass


def _eps(epsilon) -> Fraction:
    if isinstance(epsilon, float):
        raise BadEpsilon("pass epsilon as a Fraction or an 'a/b' string")
    try:
        e = Fraction(epsilon)
    except (TypeError, ValueError) as exc:
        raise BadEpsilon(f"cannot read epsilon {epsilon!r}") from exc
    if not 0 < e < 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {e}")
    return e


def _require_proper(inst: Instance):
    if not is_proper(inst):
        raise NotProper("some job interval strictly contains another")


def grid_step(W: int, epsilon) -> int:
    return max(1, math.floor(_eps(epsilon) ** 2 * W))


@dataclass(frozen=True)
class WideNarrowSplit:
    wide: frozenset
    narrow: frozenset

    @classmethod
    def by_rmax(cls, inst: Instance, epsilon) -> "WideNarrowSplit":
        thr = _eps(epsilon) * inst.capacity
        wide = frozenset(j.id for j in inst.jobs if j.r_max >= thr)
        return cls(wide, frozenset(j.id for j in inst.jobs) - wide)

    @classmethod
    def by_size(cls, col, W: int, epsilon) -> "WideNarrowSplit":
        """Split of the colored jobs by the number of colors they hold."""
        thr = _eps(epsilon) * W
        held = {i for i, b in col.blocks.items() if b}
        wide = frozenset(i for i in held if col.blocks[i][1] >= thr)
        return cls(wide, frozenset(held) - wide)


# --- wide-only search ---------------------------------------------------------

def wide_only_dp(inst: Instance, epsilon) -> ContiguousColoring:
    """Best coloring of wide jobs only, each served job holding >= ceil(eps W) colors.

    Block sizes and offsets are multiples of ``g = max(1, floor(eps^2 W))``.
    """
    eps = _eps(epsilon)
    W = inst.capacity
    g = grid_step(W, eps)
    floor_size = base_cap(W, eps)
    split = WideNarrowSplit.by_rmax(inst, eps)
    units = [UnitJob(j.id, j.start, j.end, j.profit, floor_size, j.r_max)
             for j in inst.jobs if j.id in split.wide]
    packed = pack_units(units, [g] * (W // g))
    return ContiguousColoring({i: (f * g + 1, c * g) for i, (f, c) in packed.items()})


# --- circular layout and cut ---------------------------------------------------

def circular_color(inst: Instance, alloc: BandwidthAllocation, modulus: int) -> CircularColoring:
    """Consecutive blocks in start order, wrapping at ``modulus``."""
    _require_proper(inst)
    for t, load in point_loads(inst, alloc.amounts).items():
        if load > modulus:
            raise CapacityViolation(t, load, modulus)
    nxt = 1
    blocks = {}
    for j in sorted(inst.jobs, key=lambda j: (j.start, j.end, j.id)):
        a = alloc.get(j.id)
        if a <= 0:
            continue
        blocks[j.id] = (nxt, a)
        nxt = (nxt - 1 + a) % modulus + 1
    return CircularColoring(blocks, modulus)


def shrink_wide(col: CircularColoring, wide, step: int) -> CircularColoring:
    """Round wide block lengths down to multiples of ``step`` by dropping their last colors."""
    blocks = dict(col.blocks)
    for i in wide:
        f, ln = blocks[i]
        ln -= ln % step
        if ln:
            blocks[i] = (f, ln)
        else:
            del blocks[i]
    return CircularColoring(blocks, col.modulus)


@dataclass(frozen=True)
class CutEvaluation:
    cut: int
    penalty: int
    split_sizes: Dict[int, Tuple[int, int]]     # crossing wide job -> (|Block1|, |Block2|)

    @property
    def crossing(self) -> frozenset:
        return frozenset(self.split_sizes)


def _split_at(block, cut, modulus):
    """(|Block1|, |Block2|) if the block holds both ``cut`` and the color after it, else None."""
    f, ln = block
    before = (cut - f) % modulus + 1        # colors f..cut, circularly
    if before >= ln:
        return None
    return before, ln - before


def evaluate_cut(col: CircularColoring, wide, profits: dict, cut: int) -> CutEvaluation:
    sizes = {}
    pen = 0
    for i in wide:
        b = col.blocks.get(i)
        if not b:
            continue
        s = _split_at(b, cut, col.modulus)
        if s:
            sizes[i] = s
            pen += profits[i] * min(s)
    return CutEvaluation(cut, pen, sizes)


def cut_candidates(col: CircularColoring, wide, W: int, epsilon) -> List[int]:
    """Grid points plus both sides of every wide-block end.

    Between consecutive candidates the crossing set is fixed and the penalty is
    a sum of concave terms, so the minimum over all cuts is attained here.
    """
    m = col.modulus
    g = grid_step(W, epsilon)
    cand = {(r * g - 1) % m + 1 for r in range(1, m // g + 1)}
    for i in wide:
        b = col.blocks.get(i)
        if not b:
            continue
        f, ln = b
        t = (f - 2 + ln) % m + 1
        for c in (f - 1, f, t - 1, t):
            cand.add((c - 1) % m + 1)
    return sorted(cand)


def select_cut(col: CircularColoring, split: WideNarrowSplit, epsilon, profits: dict,
               W: int = None, full_scan: bool = False) -> Tuple[int, CutEvaluation]:
    W = W if W is not None else col.modulus
    cands = range(1, col.modulus + 1) if full_scan else cut_candidates(col, split.wide, W, epsilon)
    best = None
    for c in cands:
        ev = evaluate_cut(col, split.wide, profits, c)
        if best is None or ev.penalty < best.penalty:
            best = ev
    return best.cut, best


def uncut_to_linear(col: CircularColoring, cut: int, split: WideNarrowSplit, W: int) -> ContiguousColoring:
    m = col.modulus
    renum = lambda c: (c - cut - 1) % m + 1
    crossing_narrow = []
    blocks = {}
    for i, b in col.blocks.items():
        if not b:
            continue
        s = _split_at(b, cut, m)
        if s is None:
            blocks[i] = (renum(b[0]), b[1])
        elif i in split.wide:
            b1, b2 = s
            blocks[i] = (renum(b[0]), b1) if b1 >= b2 else (1, b2)
        else:
            crossing_narrow.append(i)
            blocks[i] = (m + 1, b[1])
            if m + b[1] > W:
                raise TopBandOverflow(f"job {i} needs {b[1]} colors above {m}, only {W - m} exist")
    for i, (f, ln) in blocks.items():
        assert f + ln - 1 <= W, f"job {i}: block ({f}, {ln}) ran past {W}"
    return ContiguousColoring(blocks)


def crossing_narrow(col: CircularColoring, cut: int, split: WideNarrowSplit) -> List[int]:
    return sorted(i for i in split.narrow if col.blocks.get(i) and _split_at(col.blocks[i], cut, col.modulus))


# --- narrow pipeline ------------------------------------------------------------

@dataclass
class NarrowTrace:
    lp_objective: Fraction = Fraction(0)
    rounded: Optional[BandwidthAllocation] = None
    circular: Optional[CircularColoring] = None      # after wide rounding
    circular_raw: Optional[CircularColoring] = None
    split: Optional[WideNarrowSplit] = None
    cut: Optional[CutEvaluation] = None
    final: ContiguousColoring = field(default_factory=lambda: ContiguousColoring({}))

    def circular_profit(self, profits, ids) -> int:
        return sum(profits[i] * self.circular.length(i) for i in ids)

    def final_profit(self, profits, ids) -> int:
        return sum(profits[i] * self.final.length(i) for i in ids)


def narrow_color_trace(inst: Instance, epsilon, beta=BETA, opt_guess=None,
                       check_w: bool = True) -> NarrowTrace:
    eps = _eps(epsilon)
    _require_proper(inst)
    trace = NarrowTrace()
    if not inst.jobs:
        return trace
    W = inst.capacity
    if opt_guess is None:
        opt_guess = sum(j.profit * j.r_max for j in inst.jobs)
    prob = build_lp_fba(inst, eps, beta, opt_guess)
    frac = simplex_solve(prob)
    trace.lp_objective = frac.objective
    rounded = round_lp_fba(inst, frac, eps, check_w=check_w)
    trace.rounded = BandwidthAllocation({i: a for i, a in rounded.amounts().items() if a})
    m = reduced_capacity(W, eps)
    raw = circular_color(inst, trace.rounded, m)
    trace.circular_raw = raw
    split = WideNarrowSplit.by_size(raw, W, eps)
    col = shrink_wide(raw, split.wide, grid_step(W, eps))
    verify_circular(inst, col)
    trace.circular = col
    trace.split = split
    profits = {j.id: j.profit for j in inst.jobs}
    cut, ev = select_cut(col, split, eps, profits, W)
    trace.cut = ev
    movers = crossing_narrow(col, cut, split)
    jobs = inst.by_id()
    for a in range(len(movers)):
        for b in range(a + 1, len(movers)):
            assert not jobs[movers[a]].intersects(jobs[movers[b]]), "crossing narrow jobs overlap"
    trace.final = uncut_to_linear(col, cut, split, W)
    return trace


def a_narrow_color(inst: Instance, epsilon, beta=BETA, opt_guess=None,
                   check_w: bool = True) -> ContiguousColoring:
    return narrow_color_trace(inst, epsilon, beta, opt_guess, check_w).final


# --- driver -----------------------------------------------------------------------

@dataclass(frozen=True)
class GuessGrid:
    eps_hat: Fraction
    values: Tuple[int, ...]

    @classmethod
    def build(cls, upper: int, eps_hat) -> "GuessGrid":
        eps_hat = Fraction(eps_hat)
        vals = []
        x = Fraction(1)
        while True:
            v = math.ceil(x)
            if v > upper:
                break
            if not vals or v != vals[-1]:
                vals.append(v)
            x *= 1 + eps_hat
        if upper >= 1 and (not vals or vals[-1] < upper):
            vals.append(upper)
        return cls(eps_hat, tuple(vals))


@dataclass(frozen=True)
class ProperParams:
    epsilon: Fraction
    beta: Fraction = BETA

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _eps(self.epsilon))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 < self.beta < 1:
            raise BadEpsilon(f"beta must lie in (0, 1), got {self.beta}")

    @property
    def eps_hat(self) -> Fraction:
        return self.epsilon / 3


@dataclass
class ProperRun:
    coloring: ContiguousColoring
    profit: int
    branch: str                  # 'wide' or 'narrow'
    guess: Optional[int]
    wide_profit: int
    guesses_tried: int


def proper_fsap_run(inst: Instance, epsilon, beta=BETA) -> ProperRun:
    params = ProperParams(epsilon, beta)
    _require_proper(inst)
    eh = params.eps_hat
    W = inst.capacity
    wide = wide_only_dp(inst, eh)
    wide_p = verify_fsap(inst, wide).total
    best = ProperRun(wide, wide_p, "wide", None, wide_p, 0)
    if not inst.jobs:
        return best
    upper = sum(j.profit * j.r_max for j in inst.jobs)
    grid = GuessGrid.build(upper, eh)
    cap_x = base_cap(W, eh)
    thr = eh * W
    extra_max = sum(j.profit * (j.r_max - cap_x) for j in inst.jobs if j.r_max >= thr)
    tried = 0
    for guess in grid.values:
        tried += 1
        try:
            col = a_narrow_color(inst, eh, params.beta, guess, check_w=False)
        except LpInfeasible:
            continue
        p = verify_fsap(inst, col).total
        if p > best.profit:
            best = ProperRun(col, p, "narrow", guess, wide_p, 0)
        if params.beta * (1 - eh) * guess >= extra_max:
            break   # the wide-profit row no longer binds; larger guesses give the same program
    best.guesses_tried = tried
    return best


def proper_fsap(inst: Instance, epsilon, beta=BETA) -> ContiguousColoring:
    return proper_fsap_run(inst, epsilon, beta).coloring
