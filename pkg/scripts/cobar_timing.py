"""Time cobar and bar cohomology of Num[x] / Z[x] as the window grows.

    python scripts/cobar_timing.py [--d-max 12]
"""

import argparse
import time

from binring import barcobar as bc


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--d-max", type=int, default=12)
    args = parser.parse_args()
    print(f"{'d_max':>5} {'cells':>7} {'cobar s':>9} {'bar s':>9} {'nonzero':>8}")
    for d in range(2, args.d_max + 1):
        C = bc.num_coalgebra(d)
        t0 = time.perf_counter()
        Om = bc.cobar_complex(C, d, d)
        H = Om.cohomology()
        t1 = time.perf_counter()
        HB = bc.bar_homology(bc.polynomial_algebra(d), d, d)
        t2 = time.perf_counter()
        cells = sum(Om.rank(n, e) for n in range(d + 1) for e in range(d + 1))
        nz = sum(not g.is_zero for g in H.values())
        assert nz == sum(not g.is_zero for g in HB.values()) == 2
        print(f"{d:>5} {cells:>7} {t1 - t0:>9.3f} {t2 - t1:>9.3f} {nz:>8}")


if __name__ == "__main__":
    main()
