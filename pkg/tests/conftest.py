import itertools
import os

from hypothesis import HealthCheck, settings, strategies as st

from flexalloc.model import Instance, Job

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def enumerate_fbap(inst):
    """Plain product over every job's amount, no pruning. Returns the best profit or None."""
    jobs = list(inst.jobs)
    points = sorted({j.start for j in jobs})
    best = None
    for amounts in itertools.product(*[range(j.r_min, j.r_max + 1) for j in jobs]):
        ok = all(sum(a for j, a in zip(jobs, amounts) if j.start <= t < j.end) <= inst.capacity
                 for t in points)
        if ok:
            v = sum(j.profit * a for j, a in zip(jobs, amounts))
            best = v if best is None else max(best, v)
    return best


def enumerate_fsap(inst):
    """Plain product over every job's block, no pruning."""
    W = inst.capacity
    jobs = list(inst.jobs)
    choices = []
    for j in jobs:
        opts = [None] if j.r_min == 0 else []
        opts += [(f, ln) for ln in range(max(1, j.r_min), j.r_max + 1) for f in range(1, W - ln + 2)]
        choices.append(opts)
    best = None
    for pick in itertools.product(*choices):
        ok = True
        for (a, ba), (b, bb) in itertools.combinations(zip(jobs, pick), 2):
            if ba and bb and a.intersects(b):
                if ba[0] < bb[0] + bb[1] and bb[0] < ba[0] + ba[1]:
                    ok = False
                    break
        if ok:
            v = sum(j.profit * b[1] for j, b in zip(jobs, pick) if b)
            best = v if best is None else max(best, v)
    return best


@st.composite
def instances(draw, max_jobs=5, max_w=5, max_time=8, proper=False, rmin=False, unit_profit=False):
    W = draw(st.integers(1, max_w))
    n = draw(st.integers(0, max_jobs))
    jobs = []
    spans = []
    for i in range(n):
        s = draw(st.integers(0, max_time - 1))
        e = draw(st.integers(s + 1, max_time))
        spans.append((s, e))
    if proper:
        # k-th smallest start with k-th smallest end never nests
        starts = sorted(s for s, _ in spans)
        ends = sorted(e for _, e in spans)
        spans = []
        for s, e in zip(starts, ends):
            if spans and s == spans[-1][0]:
                e = spans[-1][1]
            elif spans and e <= spans[-1][1]:
                e = spans[-1][1] + 1
            spans.append((s, e))
    for i, (s, e) in enumerate(spans):
        hi = draw(st.integers(1, W))
        lo = draw(st.integers(0, min(hi, 1))) if rmin else 0
        p = 1 if unit_profit else draw(st.integers(1, 4))
        jobs.append(Job(i, s, e, lo, hi, p))
    return Instance(W, jobs)


def loads_ok(inst, amounts):
    for t in {j.start for j in inst.jobs}:
        if sum(amounts.get(j.id, 0) for j in inst.jobs if j.start <= t < j.end) > inst.capacity:
            return False
    return True
