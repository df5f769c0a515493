"""Ratio of each algorithm to the exact optimum over seeded random families.

    python scripts/ratio_sweep.py --family proper --runs 50 --epsilon 1/4
"""
import argparse
import csv
import sys
from fractions import Fraction

from flexalloc.gen import gen_random
from flexalloc.model import verify_fsap
from flexalloc.oracle import oracle_fsap
from flexalloc.proper import proper_fsap_run
from flexalloc.uniform import a_max_small, uniform_ptas


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", choices=["proper", "uniform"], default="proper")
    ap.add_argument("--runs", type=int, default=50)
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(1, 4))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["seed", "n", "W", "algo", "profit", "opt", "ratio"])
    worst = {}
    for s in range(args.seed, args.seed + args.runs):
        if args.family == "proper":
            W, n = 16 + s % 5, 1 + s % 7
            inst = gen_random(s, n, W, 12, "proper", max_len=6)
            sols = {"proper": proper_fsap_run(inst, args.epsilon).coloring}
        else:
            W, n = 4 + s % 10, 1 + s % 7
            Max = 1 + (s * 7) % W
            inst = gen_random(s, n, W, 10, "uniform", max_req=Max, max_len=5)
            sols = {"max-small": a_max_small(inst), "uniform-ptas": uniform_ptas(inst, args.epsilon)}
        opt = oracle_fsap(inst).profit(inst)
        for name, col in sols.items():
            got = verify_fsap(inst, col).total
            r = Fraction(got, opt) if opt else Fraction(1)
            worst[name] = min(worst.get(name, r), r)
            out.writerow([s, n, W, name, got, opt, f"{float(r):.4f}"])
    for name, r in worst.items():
        print(f"# worst {name}: {float(r):.4f}", file=sys.stderr)


if __name__ == "__main__":
    main()
