from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from flexalloc.gen import gen_random
from flexalloc.model import (BandwidthAllocation, CircularColoring, Instance, Job, verify_circular,
                             verify_fsap)
from flexalloc.oracle import oracle_fsap
from flexalloc.proper import (BETA, BadEpsilon, GuessGrid, NotProper, TopBandOverflow,
                              WideNarrowSplit, a_narrow_color, circular_color, crossing_narrow,
                              evaluate_cut, grid_step, narrow_color_trace, proper_fsap,
                              proper_fsap_run, select_cut, uncut_to_linear, wide_only_dp)
from flexalloc.uniform import uniform_ptas


def profit(inst, col):
    return verify_fsap(inst, col).total


def test_beta_balances_the_two_branches():
    assert BETA == F(4, 5)
    assert 1 / BETA == 4 / (4 - BETA) == F(5, 4)


def test_grid_step():
    assert grid_step(16, F(1, 4)) == 1
    assert grid_step(100, F(1, 4)) == 6
    assert grid_step(3, F(1, 4)) == 1


def test_split_by_request():
    inst = Instance(10, [Job(0, 0, 1, 0, 5), Job(1, 0, 1, 0, 4)])
    sp = WideNarrowSplit.by_rmax(inst, F(1, 2))
    assert sp.wide == {0} and sp.narrow == {1}


def test_wide_only_examples():
    one = Instance(6, [Job(0, 0, 3, 0, 6, 2)])
    assert profit(one, wide_only_dp(one, F(1, 4))) == 12
    apart = Instance(16, [Job(0, 0, 1, 0, 9), Job(1, 2, 3, 0, 12)])
    assert profit(apart, wide_only_dp(apart, F(1, 4))) == 21
    pair = Instance(16, [Job(0, 0, 2, 0, 10), Job(1, 1, 3, 0, 10)])
    col = wide_only_dp(pair, F(1, 4))
    assert profit(pair, col) == 16
    assert all(ln >= 4 for _, ln in col.blocks.values())


def test_wide_only_ignores_narrow_jobs():
    inst = Instance(16, [Job(0, 0, 2, 0, 3, 9)])
    assert wide_only_dp(inst, F(1, 4)).blocks == {}


def test_circular_example():
    inst = Instance(4, [Job(0, 0, 2, 0, 2), Job(1, 1, 3, 0, 2), Job(2, 2, 4, 0, 2)])
    col = circular_color(inst, BandwidthAllocation({0: 2, 1: 2, 2: 2}), 4)
    assert [col.blocks[i] for i in range(3)] == [(1, 2), (3, 2), (1, 2)]
    assert verify_circular(inst, col).total == 6


def test_circular_full_and_empty():
    inst = Instance(5, [Job(0, 0, 2, 0, 5)])
    assert circular_color(inst, BandwidthAllocation({0: 5}), 5).colors(0) == [1, 2, 3, 4, 5]
    assert circular_color(inst, BandwidthAllocation({}), 5).blocks == {}


def test_circular_needs_proper_instance():
    inst = Instance(4, [Job(0, 0, 4), Job(1, 1, 2)])
    with pytest.raises(NotProper):
        circular_color(inst, BandwidthAllocation({}), 4)


@given(st.integers(0, 10 ** 6), st.integers(1, 8), st.integers(2, 10))
def test_circular_layout_is_valid(seed, n, W):
    inst = gen_random(seed, n, W, 10, "proper", max_len=5)
    # greedy feasible amounts
    amounts = {}
    for j in inst.jobs:
        used = sum(amounts.get(k.id, 0) for k in inst.jobs if k.intersects(j) and k.id in amounts)
        amounts[j.id] = max(0, min(j.r_max, W - max(
            [sum(amounts.get(k.id, 0) for k in inst.jobs if k.id in amounts and k.contains(t))
             for t in range(j.start, j.end)] or [used])))
    col = circular_color(inst, BandwidthAllocation(amounts), W)
    assert verify_circular(inst, col).total == sum(j.profit * amounts[j.id] for j in inst.jobs)


def wrap_instance():
    inst = Instance(8, [Job(0, 0, 2, 0, 4, 3)])
    col = CircularColoring({0: (7, 4)}, 8)
    return inst, col, WideNarrowSplit(frozenset({0}), frozenset())


def test_cut_through_wrapping_block():
    _, col, split = wrap_instance()
    ev = evaluate_cut(col, split.wide, {0: 3}, 8)
    assert ev.split_sizes == {0: (2, 2)} and ev.penalty == 6
    assert ev.crossing == {0}


def test_cut_at_block_edge_costs_nothing():
    _, col, split = wrap_instance()
    cut, ev = select_cut(col, split, F(1, 4), {0: 3})
    assert ev.penalty == 0
    assert evaluate_cut(col, split.wide, {0: 3}, 2).penalty == 0


def test_wrapping_job_keeps_half():
    inst, col, split = wrap_instance()
    lin = uncut_to_linear(col, 8, split, 8)
    assert lin.blocks == {0: (7, 2)}
    assert profit(inst, lin) == 6


def test_no_crossing_keeps_profit():
    inst = Instance(8, [Job(0, 0, 2, 0, 3), Job(1, 1, 3, 0, 3)])
    col = CircularColoring({0: (1, 3), 1: (4, 3)}, 6)
    split = WideNarrowSplit(frozenset({0, 1}), frozenset())
    lin = uncut_to_linear(col, 6, split, 8)
    assert profit(inst, lin) == 6


def test_crossing_narrow_job_moves_to_top_band():
    inst = Instance(16, [Job(0, 0, 2, 0, 3)])
    col = CircularColoring({0: (11, 3)}, 12)
    split = WideNarrowSplit(frozenset(), frozenset({0}))
    assert crossing_narrow(col, 11, split) == [0]
    lin = uncut_to_linear(col, 11, split, 16)
    assert list(lin.colors(0)) == [13, 14, 15]
    verify_fsap(inst, lin)


def test_top_band_overflow():
    col = CircularColoring({0: (11, 3)}, 12)
    with pytest.raises(TopBandOverflow):
        uncut_to_linear(col, 11, WideNarrowSplit(frozenset(), frozenset({0})), 14)


@given(st.integers(2, 12), st.lists(st.tuples(st.integers(1, 12), st.integers(1, 6), st.integers(1, 4)),
                               max_size=4))
def test_restricted_cuts_match_full_scan(m, raw):
    blocks, profits = {}, {}
    for i, (f, ln, p) in enumerate(raw):
        blocks[i] = ((f - 1) % m + 1, min(ln, m))
        profits[i] = p
    col = CircularColoring(blocks, m)
    split = WideNarrowSplit(frozenset(blocks), frozenset())
    _, fast = select_cut(col, split, F(1, 4), profits, W=m)
    _, full = select_cut(col, split, F(1, 4), profits, W=m, full_scan=True)
    assert fast.penalty == full.penalty


def test_symmetric_pair_tie_goes_to_smallest_cut():
    col = CircularColoring({0: (1, 4), 1: (5, 4)}, 8)
    split = WideNarrowSplit(frozenset({0, 1}), frozenset())
    cut, ev = select_cut(col, split, F(1, 4), {0: 1, 1: 1}, full_scan=True)
    assert (cut, ev.penalty) == (4, 0)


def test_guess_grid():
    g = GuessGrid.build(10, F(1, 2))
    assert g.values == (1, 2, 3, 4, 6, 8, 10)
    assert GuessGrid.build(0, F(1, 2)).values == ()


def test_narrow_only_keeps_rounded_profit():
    inst = Instance(64, [Job(0, 0, 2, 0, 3, 2), Job(1, 1, 3, 0, 4, 1), Job(2, 2, 5, 0, 2, 3)])
    tr = narrow_color_trace(inst, F(1, 8))
    assert profit(inst, tr.final) == tr.lp_objective == 16


def test_single_wide_job():
    eps = F(1, 8)
    inst = Instance(64, [Job(0, 0, 4, 0, 40, 2)])
    tr = narrow_color_trace(inst, eps)
    assert 4 * profit(inst, tr.final) >= 3 * (1 - 2 * eps) * tr.lp_objective


def test_empty_pipeline():
    assert a_narrow_color(Instance(64, []), F(1, 8)).blocks == {}
    assert proper_fsap(Instance(4, []), F(1, 4)).blocks == {}


def test_small_pair_example():
    inst = Instance(4, [Job(1, 0, 2, 0, 4), Job(2, 1, 3, 0, 4)])
    got = profit(inst, proper_fsap(inst, F(1, 4)))
    assert oracle_fsap(inst).profit(inst) == 4
    assert got * (F(5, 4) + F(1, 4)) >= 4


def test_independent_jobs_get_full_request():
    wide = Instance(12, [Job(0, 0, 1, 0, 12, 2), Job(1, 1, 2, 0, 5, 1), Job(2, 2, 3, 0, 3, 4)])
    assert profit(wide, proper_fsap(wide, F(1, 3))) == 24 + 5 + 12
    narrow = Instance(40, [Job(0, 0, 1, 0, 3, 2), Job(1, 1, 2, 0, 4, 1), Job(2, 2, 3, 0, 1, 4)])
    assert profit(narrow, proper_fsap(narrow, F(1, 3))) == 6 + 4 + 4


def test_independent_mixed_jobs_lose_the_narrow_one():
    # wide branch skips narrow jobs; narrow branch caps usage below W
    inst = Instance(12, [Job(0, 0, 1, 0, 12, 2), Job(1, 1, 2, 0, 5, 1), Job(2, 2, 3, 0, 1, 4)])
    assert profit(inst, proper_fsap(inst, F(1, 3))) == 29 < oracle_fsap(inst).profit(inst)


def test_uniform_proper_cross_check():
    inst = Instance(12, [Job(i, i, i + 3, 0, 5) for i in range(5)])
    opt = oracle_fsap(inst).profit(inst)
    assert profit(inst, proper_fsap(inst, F(1, 3))) * (F(5, 4) + F(1, 3)) >= opt
    assert profit(inst, uniform_ptas(inst, F(1, 3))) >= F(2, 3) * opt


def test_rejects_nested_and_bad_epsilon():
    with pytest.raises(NotProper):
        proper_fsap(Instance(4, [Job(0, 0, 4), Job(1, 1, 2)]), F(1, 4))
    with pytest.raises(BadEpsilon):
        proper_fsap(Instance(4, []), F(3, 2))


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(16, 24), st.integers(1, 6))
def test_pipeline_lemmas_hold(seed, W, n):
    eps = F(1, 4)
    inst = gen_random(seed, n, W, 12, "proper", max_len=6)
    total = sum(j.profit * j.r_max for j in inst.jobs)
    tr = narrow_color_trace(inst, eps, opt_guess=max(1, seed % (total + 1)))
    verify_fsap(inst, tr.final)
    pr = {j.id: j.profit for j in inst.jobs}
    assert 4 * tr.final_profit(pr, tr.split.wide) >= 3 * tr.circular_profit(pr, tr.split.wide)
    assert tr.final_profit(pr, tr.split.narrow) == tr.circular_profit(pr, tr.split.narrow)
    assert tr.rounded.profit(inst) >= (1 - 2 * eps) * tr.lp_objective


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6), st.integers(16, 20), st.integers(1, 6), st.sampled_from([F(1, 4), F(1, 3)]))
def test_ratio_against_oracle(seed, W, n, eps):
    inst = gen_random(seed, n, W, 12, "proper", max_len=6)
    run = proper_fsap_run(inst, eps)
    assert run.profit == profit(inst, run.coloring)
    assert run.profit * (F(5, 4) + eps) >= oracle_fsap(inst).profit(inst)
