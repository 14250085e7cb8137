"""Wall-clock cost of the main kernels as the truncation order grows.

    python3 scripts/timing_profile.py --orders 2 4 6 8 10
"""

import argparse
import time
from fractions import Fraction

from qdeform.ncalg import M2_CLASSICAL
from qdeform.ordering import ordering_map
from qdeform.rep import cg_table


def timed(f) -> float:
    t0 = time.perf_counter()
    f()
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 4, 6, 8])
    ap.add_argument("--degree", type=int, default=6, help="M(2) degree for the ordering inverse")
    args = ap.parse_args()
    print(f"{'order':>5s} {'cg(2,2)':>9s} {'phi3 images':>12s} {'inverse':>9s}")
    for n in args.orders:
        t_cg = timed(lambda: cg_table(Fraction(2), Fraction(2), True, n))
        phi = ordering_map("m2", "sympres", n)
        t_img = timed(lambda: [phi.image(e) for e in M2_CLASSICAL.monomials_of_degree(args.degree)])
        t_inv = timed(lambda: phi._inverse_degree(args.degree))
        print(f"{n:5d} {t_cg:9.3f} {t_img:12.3f} {t_inv:9.3f}")


if __name__ == "__main__":
    main()
