"""Build the hardness gadget for a small 3XC instance and print its witness picture.

    python scripts/gadget_dump.py            # one set {1,2,3}
    python scripts/gadget_dump.py 2          # two disjoint sets
"""
import sys

from flexalloc.gen import ThreeXcInstance, gen_gadget
from flexalloc.model import verify_fsap
from flexalloc.render import render_ascii


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    sets = [(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(n)]
    out = gen_gadget(ThreeXcInstance(n, sets, tuple(range(1, n + 1))))
    inst = out.instance
    got = verify_fsap(inst, out.witness).total
    print(f"jobs={inst.n} W={inst.capacity} P={out.big} witness={got} expected={out.expected_profit}")
    print(render_ascii(inst, out.witness))


if __name__ == "__main__":
    main()
