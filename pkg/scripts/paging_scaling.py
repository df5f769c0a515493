"""Wall time and operation counts of the paging sweep as n grows."""
import math
import random
import sys
import time

from flexalloc.paging import PagingStats, paging_sweep


def main(sizes=(10 ** 4, 10 ** 5, 10 ** 6)):
    print("n,seconds,pq_ops,steals,ops_per_nlogn")
    for n in sizes:
        rng = random.Random(n)
        starts = [rng.randrange(10 * n) for _ in range(n)]
        ends = [s + rng.randint(1, 100) for s in starts]
        hi = [rng.randint(1, 8) for _ in range(n)]
        st = PagingStats()
        t0 = time.perf_counter()
        paging_sweep(starts, ends, [0] * n, hi, 32, stats=st)
        dt = time.perf_counter() - t0
        print(f"{n},{dt:.3f},{st.pq_ops},{st.steals},{st.total() / (n * math.log2(n)):.4f}")


if __name__ == "__main__":
    main(tuple(int(a) for a in sys.argv[1:]) or (10 ** 4, 10 ** 5, 10 ** 6))
