"""Count (monomial, generator) pairs where the transferred action differs
from the classical one, per ordering and degree.

    python3 scripts/rigidity_sweep.py --algebra plane --max-degree 6 --order 6
"""

import argparse
import json
import time

from qdeform.ordering import KINDS
from qdeform.rep import generators_for
from qdeform.star import TransferredAction, classical_action


def sweep(algebra: str, max_degree: int, order: int) -> list[dict]:
    rows = []
    for kind in KINDS:
        ta = TransferredAction.of(algebra, kind, order)
        cl = ta.ordering.source
        for k in range(max_degree + 1):
            t0 = time.perf_counter()
            total = bad = 0
            lowest = None  # lowest h-power at which a discrepancy shows up
            for e in cl.monomials_of_degree(k):
                p = cl.monomial(e, 1, order)
                for g in generators_for(cl):
                    total += 1
                    diff = ta(g, p) - classical_action(g, p)
                    if diff.is_zero():
                        continue
                    bad += 1
                    v = min(c.valuation() for c in diff.terms.values())
                    lowest = v if lowest is None else min(lowest, v)
            rows.append(
                {"ordering": kind, "degree": k, "pairs": total, "mismatches": bad,
                 "first_order": lowest, "seconds": round(time.perf_counter() - t0, 3)}
            )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", choices=("plane", "m2"), default="plane")
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--order", type=int, default=6)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = sweep(args.algebra, args.max_degree, args.order)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'ordering':10s} {'deg':>3s} {'pairs':>6s} {'mismatch':>8s} {'first h^k':>9s} {'sec':>7s}")
    for r in rows:
        first = "-" if r["first_order"] is None else str(r["first_order"])
        print(f"{r['ordering']:10s} {r['degree']:3d} {r['pairs']:6d} {r['mismatches']:8d} {first:>9s} {r['seconds']:7.3f}")


if __name__ == "__main__":
    main()
