"""Search for two-channel uniform instances where max-small misses the optimum.

Prints the smallest cases found (distinct endpoints).
"""
import random
import sys

from flexalloc.model import Instance, Job, verify_fsap
from flexalloc.oracle import oracle_fsap
from flexalloc.uniform import a_max_small


def main(trials=5000, seed=0):
    rng = random.Random(seed)
    found = []
    for _ in range(trials):
        Max = rng.randint(2, 4)
        W = rng.randint(Max + 1, 2 * Max - 1)
        n = rng.randint(2, 5)
        pts = rng.sample(range(14), 2 * n)
        jobs = [Job(i, min(pts[2 * i:2 * i + 2]), max(pts[2 * i:2 * i + 2]), 0, Max) for i in range(n)]
        inst = Instance(W, jobs)
        got = verify_fsap(inst, a_max_small(inst)).total
        opt = oracle_fsap(inst).profit(inst)
        if got != opt:
            found.append((n, W, Max, got, opt, sorted((j.start, j.end) for j in jobs)))
    found.sort()
    print(f"{len(found)} of {trials} instances below optimum")
    for row in found[:5]:
        print(row)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5000)
