"""Command-line front end.

    qdeform star [options] EXPR1 EXPR2
    qdeform verify [options] {requal,rigidity-plane,rigidity-m2,cg,product-formula,invariants,all}
    qdeform cg [options] J1 J2
    qdeform order-map [options] [--direction fwd|inv] EXPR

Exit status: 0 on success, 1 when a verification suite fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

from .ncalg import DegreeOverflow, algebra_by_name
from .ordering import KINDS, ordering_map
from .parser import ParseError, parse_poly
from .qarith import HalfInt
from .rep import cg_table
from .scalar import DEFAULT_ORDER
from .star import StarAlgebra
from .verify import SUITES, run_suite

__all__ = ["Config", "main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class Config:
    order: int = DEFAULT_ORDER
    algebra: str = "plane"
    ordering: str | None = None  # None: sympres, or every kind for property suites
    max_degree: int = 16
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")
        if self.max_degree < 1:
            raise ValueError("max degree must be >= 1")
        if self.algebra not in ("plane", "m2"):
            raise ValueError(f"unknown algebra {self.algebra!r}")
        if self.ordering is not None and self.ordering not in KINDS:
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def kind(self) -> str:
        return self.ordering or "sympres"

    @property
    def ordering_or_none(self) -> str | None:
        return self.ordering


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--order", type=int, default=sup, help="truncation order N (series mod h^N)")
    common.add_argument("--algebra", choices=("plane", "m2"), default=sup)
    common.add_argument("--ordering", choices=KINDS, default=sup)
    common.add_argument("--max-degree", type=int, default=sup, dest="max_degree")
    common.add_argument("--format", choices=("text", "json"), default=sup)
    common.add_argument("--seed", type=int, default=sup)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    ap = argparse.ArgumentParser(prog="qdeform", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star", parents=[common], help="star product of two commutative polynomials")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])

    p = sub.add_parser("cg", parents=[common], help="deformed and classical Clebsch-Gordan tables")
    p.add_argument("j1")
    p.add_argument("j2")

    p = sub.add_parser("order-map", parents=[common], help="apply an ordering prescription or its inverse")
    p.add_argument("expr")
    p.add_argument("--direction", choices=("fwd", "inv"), default="fwd")
    return ap


def _config(ns: argparse.Namespace) -> Config:
    fields = {k: getattr(ns, k) for k in Config.__dataclass_fields__ if hasattr(ns, k)}
    return Config(**fields)


def _emit(cfg: Config, text: str, payload: dict) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_star(cfg: Config, expr1: str, expr2: str) -> int:
    cl = algebra_by_name(f"{cfg.algebra}-classical", cfg.max_degree)
    p, q = parse_poly(expr1, cl, cfg.order), parse_poly(expr2, cl, cfg.order)
    sa = StarAlgebra(ordering_map(cfg.algebra, cfg.kind, cfg.order, cfg.max_degree))
    result = sa(p, q)
    _emit(cfg, result.render(), {"config": asdict(cfg) | {"ordering": cfg.kind}, "result": result.to_json()})
    return EXIT_OK


def cmd_order_map(cfg: Config, expr: str, direction: str) -> int:
    phi = ordering_map(cfg.algebra, cfg.kind, cfg.order, cfg.max_degree)
    if direction == "fwd":
        result = phi.forward(parse_poly(expr, phi.source, cfg.order))
    else:
        result = phi.inverse(parse_poly(expr, phi.target, cfg.order))
    payload = {"config": asdict(cfg) | {"ordering": cfg.kind}, "direction": direction, "result": result.to_json()}
    _emit(cfg, result.render(), payload)
    return EXIT_OK


def cmd_cg(cfg: Config, j1: str, j2: str) -> int:
    try:
        a, b = HalfInt.parse(j1), HalfInt.parse(j2)
    except ValueError as exc:
        raise ParseError(str(exc), f"{j1} {j2}", 0) from exc
    if a < 0 or b < 0:
        raise ParseError("spins must be nonnegative", f"{j1} {j2}", 0)
    dq = cg_table(a.value, b.value, True, cfg.order)
    dc = cg_table(a.value, b.value, False, cfg.order)
    lines = [f"V({a}) x V({b}), series mod h^{cfg.order}", "j\tm1\tm2\tdeformed\tclassical"]
    for key in sorted(dq.entries, key=lambda k: (-k[0], -(k[1] + k[2]), -k[1])):
        j, m1, m2 = key
        lines.append(f"{j}\t{m1}\t{m2}\t{dq.entries[key].render()}\t{dc.coeff(j, m1, m2).coeff(0)}")
    _emit(cfg, "\n".join(lines), {"deformed": dq.to_json(), "classical": dc.to_json()})
    return EXIT_OK


def cmd_verify(cfg: Config, suite: str) -> int:
    reports = run_suite(suite, cfg)
    passed = all(r["passed"] for r in reports)
    if cfg.format == "json":
        print(json.dumps({"passed": passed, "suites": reports}, indent=2))
    else:
        for r in reports:
            print(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['suite']} (order {r['order']}, {r['seconds']} s)")
            for c in r["checks"]:
                print(f"  {c['status'].upper():4s}  {c['name']}")
                if "witness" in c:
                    print(f"        witness: {json.dumps(c['witness'])}")
    return EXIT_OK if passed else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = _config(ns)
    except ValueError as exc:
        ap.error(str(exc))
    try:
        if ns.command == "star":
            return cmd_star(cfg, ns.expr1, ns.expr2)
        if ns.command == "order-map":
            return cmd_order_map(cfg, ns.expr, ns.direction)
        if ns.command == "cg":
            return cmd_cg(cfg, ns.j1, ns.j2)
        return cmd_verify(cfg, ns.suite)
    except (ParseError, DegreeOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
