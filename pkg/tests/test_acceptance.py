"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import math
import random
import time
from fractions import Fraction as F

import pytest

from flexalloc.gen import ThreeXcInstance, gadget_profit, gen_gadget, gen_random
from flexalloc.lp import build_lp_fba, round_lp_fba, simplex_solve
from flexalloc.model import Instance, Job, is_proper, point_loads, verify_fbap, verify_fsap
from flexalloc.oracle import oracle_fbap, oracle_fsap
from flexalloc.paging import PagingStats, paging_fba, paging_sweep, point_load
from flexalloc.proper import crossing_narrow, narrow_color_trace, proper_fsap
from flexalloc.uniform import (UniformParams, a_max_small, solve_uniform_exact_multiple,
                               support_split, uniform_ptas)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def uniform_case(rng, seed, W, Max, n):
    return gen_random(seed, n, W, 10, "uniform", max_req=Max, max_len=5)


def test_paging_matches_oracle(report):
    rng = random.Random(101)
    t0 = time.perf_counter()
    bad = 0
    for s in range(300):
        inst = gen_random(s, rng.randint(1, 8), rng.randint(1, 6), 10, max_profit=1, rmin_max=1)
        got = verify_fbap(inst, paging_fba(inst)).total
        bad += got != oracle_fbap(inst).profit(inst)
    dt = time.perf_counter() - t0
    report(1, bad == 0 and dt < 30, f"{bad} mismatches in 300 runs, {dt:.1f}s < 30s")


def test_exact_multiple_matches_oracle(report):
    rng = random.Random(102)
    bad = 0
    for s in range(200):
        W = rng.choice([2, 4, 6])
        Max = rng.choice([d for d in range(1, W + 1) if W % d == 0])
        inst = uniform_case(rng, 2000 + s, W, Max, rng.randint(1, 8))
        got = verify_fsap(inst, solve_uniform_exact_multiple(inst)).total
        bad += got != oracle_fsap(inst).profit(inst)
    report(2, bad == 0, f"{bad} mismatches in 200 runs")


def test_max_small_ratio(report):
    rng = random.Random(103)
    bad = 0
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    misses = []
    for s in range(200):
        k = [1, 2, 3, 4][s % 4]
        while True:
            Max = rng.randint(1, 5 if k > 2 else 6)
            lo, hi = max(Max, (k - 1) * Max + 1), min(k * Max, 11)
            if lo <= hi:
                break
        W = rng.randint(lo, hi)
        inst = uniform_case(rng, 3000 + s, W, Max, rng.randint(1, 7))
        assert UniformParams.of(inst).k == k
        counts[k] += 1
        got = verify_fsap(inst, a_max_small(inst)).total
        opt = oracle_fsap(inst).profit(inst)
        if (got != opt) if k <= 2 else got < math.ceil(F(2 * k - 1, 2 * k) * opt):
            bad += 1
            misses.append(f"k={k} W={W} Max={Max}: {got} vs {opt}")
    report(3, bad == 0, f"{bad} violations in 200 runs, per k {counts}; {'; '.join(misses) or 'none'}")


def test_partial_support_structure(report):
    rng = random.Random(104)
    bad = tight_checked = 0
    for s in range(500):
        W = rng.randint(2, 14)
        Max = rng.randint(1, W)
        inst = uniform_case(rng, 4000 + s, W, Max, rng.randint(1, 9))
        p = UniformParams.of(inst)
        sp = support_split(inst, p)
        g1 = [inst.job(i) for i in sp.g1]
        ok = is_proper(Instance(W, g1)) and point_load(g1) <= 2
        ok = ok and all(sp.amounts[i] == p.remainder for i in sp.g1)
        # the tight-point claim is about W not a multiple of Max; otherwise g1 is empty
        if p.remainder:
            tight_checked += 1
            for t, load in point_loads(inst, sp.amounts).items():
                if load == W:
                    ok = ok and sum(1 for j in g1 if j.contains(t)) == 1
        fbap_opt = sum(sp.amounts.values())
        ok = ok and p.remainder * len(g1) * (p.k - 1 + p.lam) <= p.lam * fbap_opt
        bad += not ok
    report(4, bad == 0, f"{bad} failing runs of 500, tight points checked in {tight_checked}")


def test_ptas_bound(report):
    rng = random.Random(105)
    t0 = time.perf_counter()
    bad = 0
    for s in range(150):
        W = rng.randint(2, 16)
        Max = rng.randint(1, W)
        eps = F(1, 2) if s % 2 else F(1, 3)
        inst = uniform_case(rng, 5000 + s, W, Max, rng.randint(1, 7))
        got = verify_fsap(inst, uniform_ptas(inst, eps)).total
        opt = oracle_fsap(inst).profit(inst)
        bad += not math.ceil((1 - eps) * opt) <= got <= opt
    dt = time.perf_counter() - t0
    report(5, bad == 0 and dt < 120, f"{bad} violations in 150 runs, {dt:.1f}s < 120s")


def random_guess(rng, inst):
    total = sum(j.profit * j.r_max for j in inst.jobs)
    return max(1, int(total * rng.random()))


def test_lp_rounding(report):
    rng = random.Random(106)
    eps = F(1, 4)
    bad = nonint = 0
    for s in range(100):
        W = rng.randint(16, 24)
        inst = gen_random(6000 + s, rng.randint(1, 6), W, 12, "proper", max_len=6)
        frac = simplex_solve(build_lp_fba(inst, eps, F(4, 5), random_guess(rng, inst)))
        r = round_lp_fba(inst, frac, eps)
        nonint += not r.lp_round_solution.is_integral()
        bad += r.profit(inst) < (1 - 2 * eps) * frac.objective
    report(6, bad == 0 and nonint == 0, f"{bad} profit violations, {nonint} fractional vertices in 100 runs")


def test_cut_lemma(report):
    rng = random.Random(107)
    eps = F(1, 4)
    bad = crossed = 0
    for s in range(200):
        W = rng.randint(16, 24)
        inst = gen_random(7000 + s, rng.randint(1, 6), W, 12, "proper", max_len=6)
        tr = narrow_color_trace(inst, eps, opt_guess=random_guess(rng, inst))
        verify_fsap(inst, tr.final)
        pr = {j.id: j.profit for j in inst.jobs}
        ok = 4 * tr.final_profit(pr, tr.split.wide) >= 3 * tr.circular_profit(pr, tr.split.wide)
        ok = ok and tr.final_profit(pr, tr.split.narrow) == tr.circular_profit(pr, tr.split.narrow)
        bad += not ok
        crossed += bool(tr.cut.split_sizes or crossing_narrow(tr.circular, tr.cut.cut, tr.split))
    report(7, bad == 0, f"{bad} failing runs of 200, {crossed} runs had crossing jobs")


def test_proper_ratio(report):
    rng = random.Random(108)
    eps = F(1, 4)
    t0 = time.perf_counter()
    bad = 0
    worst = F(1)
    for s in range(100):
        W = rng.randint(16, 20)
        inst = gen_random(8000 + s, rng.randint(1, 7), W, 12, "proper", max_len=6)
        got = verify_fsap(inst, proper_fsap(inst, eps)).total
        opt = oracle_fsap(inst).profit(inst)
        # got >= opt / (3/2)  <=>  3 got >= 2 opt
        bad += 3 * got < 2 * opt
        if opt:
            worst = min(worst, F(got, opt))
    dt = time.perf_counter() - t0
    report(8, bad == 0 and dt < 600,
           f"{bad} violations in 100 runs, worst ratio {float(worst):.3f}, {dt:.1f}s < 600s")


def test_gadget_witness(report):
    cases = [
        ThreeXcInstance(1, [(1, 2, 3)], (1,)),
        ThreeXcInstance(1, [(1, 2, 3), (1, 2, 3)], (2,)),
        ThreeXcInstance(2, [(1, 2, 3), (4, 5, 6)], (1, 2)),
    ]
    t0 = time.perf_counter()
    ok = True
    got = []
    for x in cases:
        out = gen_gadget(x)
        total = verify_fsap(out.instance, out.witness).total
        got.append(total)
        ok = ok and total == gadget_profit(x.m, x.n) == out.expected_profit
    dt = time.perf_counter() - t0
    ok = ok and got[0] == 157770 and dt < 1
    report(9, ok, f"profits {got}, {dt:.3f}s < 1s")


def test_paging_scales(report):
    ratios = {}
    wall = None
    for n in (10 ** 4, 10 ** 5, 10 ** 6):
        rng = random.Random(n)
        starts = [rng.randrange(10 * n) for _ in range(n)]
        ends = [s + rng.randint(1, 100) for s in starts]
        hi = [rng.randint(1, 8) for _ in range(n)]
        st = PagingStats()
        paging_sweep(starts, ends, [0] * n, hi, 32, stats=st)
        ratios[n] = st.total() / (n * math.log2(n))
        if n == 10 ** 6:
            jobs = [Job(i, s, e, 0, h) for i, (s, e, h) in enumerate(zip(starts, ends, hi))]
            inst = Instance(32, jobs)
            t0 = time.perf_counter()
            paging_fba(inst)
            wall = time.perf_counter() - t0
    base = ratios[10 ** 4]
    ok = all(r <= 1.0 for r in ratios.values()) and all(r <= 1.5 * base for r in ratios.values())
    ok = ok and wall < 10
    shown = ", ".join(f"n={n}: {r:.3f}" for n, r in ratios.items())
    report(10, ok, f"ops/(n log2 n) {shown}; paging_fba on 10^6 took {wall:.1f}s < 10s")
