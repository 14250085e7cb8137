"""Star products of the generators under each ordering.

Prints ``g * g'`` for every ordered pair of generators and every ordering,
together with the commutator ``g * g' - g' * g``.

    python3 scripts/star_table.py --algebra m2 --order 4
"""

import argparse

from qdeform.ordering import KINDS
from qdeform.star import StarAlgebra


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", choices=("plane", "m2"), default="plane")
    ap.add_argument("--order", type=int, default=4)
    args = ap.parse_args()
    for kind in KINDS:
        sa = StarAlgebra.of(args.algebra, kind, args.order)
        gens = sa.source.generators
        print(f"== {kind} ordering ==")
        for i, g in enumerate(gens):
            for gp in gens[i + 1:]:
                p, q = sa.source.gen(g, args.order), sa.source.gen(gp, args.order)
                pq, qp = sa(p, q), sa(q, p)
                print(f"  {g} * {gp} = {pq.render()}")
                print(f"  {gp} * {g} = {qp.render()}")
                print(f"  [{g}, {gp}]_* = {(pq - qp).render()}")


if __name__ == "__main__":
    main()
