"""Verification suites.

Every suite returns a JSON-ready report::

    {"suite": name, "order": N, "passed": bool,
     "checks": [{"name": ..., "status": "pass" | "fail", "witness": ...}]}

``witness`` is present on failures (and on expected counterexamples) and
holds a rendered polynomial or the offending indices.  All suites are
deterministic; the property suite draws its samples from a seeded
:class:`random.Random`.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, Iterable

from .ncalg import NCPoly, algebra_by_name
from .ordering import KINDS, m2_product_formula_check, ordering_map
from .qarith import as_half
from .rep import alpha_inv, alpha_inv_E_expansion, cg_table, generators_for, irrep_deformed
from .scalar import DEFAULT_ORDER, HSeries
from .star import StarAlgebra, TransferredAction, classical_action, invariance_report

__all__ = [
    "SUITES",
    "run_suite",
    "random_poly",
    "associativity_failures",
    "requal_suite",
    "rigidity_suite",
    "cg_suite",
    "product_formula_suite",
    "invariants_suite",
    "find_counterexample",
]

HALF_SPINS = [Fraction(k, 2) for k in range(1, 7)]


def _check(name: str, ok: bool, witness=None) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None:
        out["witness"] = witness
    return out


def _report(suite: str, order: int, checks: list[dict], **extra) -> dict:
    return {
        "suite": suite,
        "order": order,
        "passed": all(c["status"] == "pass" for c in checks),
        "checks": checks,
        **extra,
    }


# ---------------------------------------------------------------------------


def requal_suite(order: int = DEFAULT_ORDER, spins: Iterable = HALF_SPINS) -> dict:
    """alpha^-1(g hat) on the classical irrep equals the deformed irrep, and
    the closed form of alpha^-1(E hat) matches its second-order expansion."""
    checks = []
    for j in spins:
        j = as_half(j)
        for g in ("E", "F", "H"):
            lhs, rhs = alpha_inv(g, j, order), irrep_deformed(j, g, order)
            ok = lhs == rhs
            checks.append(_check(f"alpha_inv({g}) = R({g}), j={j}", ok, None if ok else (lhs - rhs).to_json()))
    expansion = alpha_inv_E_expansion()
    for j in (Fraction(1), Fraction(3, 2)):
        ok = alpha_inv("E", j, 3) == expansion.evaluate(j, 3)
        checks.append(_check(f"alpha_inv(E) to O(h^2), j={j}", ok))
    return _report("requal", order, checks)


def find_counterexample(kind: str, algebra: str = "plane", order: int = DEFAULT_ORDER, max_degree: int = 2):
    """First (monomial, generator) where the transferred action differs from
    the classical one, or None."""
    ta = TransferredAction.of(algebra, kind, order)
    cl = ta.ordering.source
    for k in range(max_degree + 1):
        for e in cl.monomials_of_degree(k):
            p = cl.monomial(e, 1, order)
            for g in generators_for(cl):
                diff = ta(g, p) - classical_action(g, p)
                if not diff.is_zero():
                    return {"monomial": p.render(), "generator": g, "difference": diff.render()}
    return None


def rigidity_suite(algebra: str, order: int = DEFAULT_ORDER, max_degree: int | None = None) -> dict:
    """Rigidity witness: the symmetry-preserving ordering intertwines the
    transferred and the classical action, the normal ordering does not."""
    if max_degree is None:
        max_degree = 8 if algebra == "plane" else 6
    ta = TransferredAction.of(algebra, "sympres", order)
    cl = ta.ordering.source
    checks = []
    for k in range(max_degree + 1):
        failures = []
        count = 0
        for e in cl.monomials_of_degree(k):
            p = cl.monomial(e, 1, order)
            for g in generators_for(cl):
                count += 1
                diff = ta(g, p) - classical_action(g, p)
                if not diff.is_zero():
                    failures.append({"monomial": p.render(), "generator": g, "difference": diff.render()})
        checks.append(
            _check(f"sympres transferred = classical, degree {k} ({count} cases)", not failures, failures or None)
        )
    cex = find_counterexample("normal", algebra, order, 2)
    checks.append(_check("normal ordering counterexample at degree <= 2", cex is not None, cex))
    return _report(f"rigidity-{algebra}", order, checks)


def cg_suite(order: int = DEFAULT_ORDER, jmax=2) -> dict:
    """Orthogonality and completeness of the CG tables, deformed and not,
    and agreement of the two at h^0."""
    jmax = as_half(jmax)
    checks = []
    spins = [Fraction(k, 2) for k in range(int(2 * jmax) + 1)]
    for j1 in spins:
        for j2 in spins:
            for deformed in (True, False):
                tab = cg_table(j1, j2, deformed, order)
                bad_o, bad_c = _orthogonality(tab), _completeness(tab)
                tag = f"j1={j1}, j2={j2}, {'deformed' if deformed else 'classical'}"
                checks.append(_check(f"orthogonality {tag}", not bad_o, bad_o or None))
                checks.append(_check(f"completeness {tag}", not bad_c, bad_c or None))
            dq = cg_table(j1, j2, True, order).truncate(1)
            dc = cg_table(j1, j2, False, order).truncate(1)
            ok = all(dq.coeff(*k) == dc.coeff(*k) for k in set(dq.entries) | set(dc.entries))
            checks.append(_check(f"h^0 limit j1={j1}, j2={j2}", ok))
    return _report("cg", order, checks)


def _weights(j: Fraction) -> list[Fraction]:
    return [-j + k for k in range(int(2 * j) + 1)]


def _orthogonality(tab) -> list:
    bad = []
    zero, one = HSeries.zero(tab.order), HSeries.one(tab.order)
    for j in tab.spins():
        for jp in tab.spins():
            for m in _weights(min(j, jp)):
                s = zero
                for m1 in _weights(tab.j1):
                    if abs(m - m1) <= tab.j2:
                        s = s + tab.coeff(j, m1, m - m1) * tab.coeff(jp, m1, m - m1)
                if s != (one if j == jp else zero):
                    bad.append([str(j), str(jp), str(m)])
    return bad


def _completeness(tab) -> list:
    bad = []
    zero, one = HSeries.zero(tab.order), HSeries.one(tab.order)
    for m1 in _weights(tab.j1):
        for m2 in _weights(tab.j2):
            for m1p in _weights(tab.j1):
                m2p = m1 + m2 - m1p
                if abs(m2p) > tab.j2:
                    continue
                s = zero
                for j in tab.spins():
                    if abs(m1 + m2) <= j:
                        s = s + tab.coeff(j, m1, m2) * tab.coeff(j, m1p, m2p)
                if s != (one if m1 == m1p else zero):
                    bad.append([str(m1), str(m2), str(m1p), str(m2p)])
    return bad


def product_formula_suite(order: int = DEFAULT_ORDER, jmax=Fraction(3, 2)) -> dict:
    """Products of top-spin basis elements of M(2) against the CG double sum."""
    jmax = as_half(jmax)
    checks = []
    spins = [Fraction(k, 2) for k in range(int(2 * jmax) + 1)]
    for j1 in spins:
        for j2 in spins:
            r = m2_product_formula_check(j1, j2, order)
            checks.append(
                _check(f"T({j1})T({j2}) = CG sum ({r['checked']} index sets)", r["passed"], r["failures"] or None)
            )
    return _report("product-formula", order, checks)


# ---------------------------------------------------------------------------
# seeded property checks


def random_poly(rng: random.Random, algebra, max_degree: int, order: int, max_terms: int = 3) -> NCPoly:
    """A random polynomial with small integer coefficients."""
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, max_degree)
        cut = sorted(rng.randint(0, k) for _ in range(algebra.ngens - 1))
        e = tuple(b - a for a, b in zip([0] + cut, cut + [k]))
        terms[e] = HSeries.const(rng.choice([-3, -2, -1, 1, 2, 3]), order)
    return NCPoly(algebra, terms, order)


def associativity_failures(sa: StarAlgebra, rng: random.Random, samples: int, max_degree: int, order: int) -> list:
    bad = []
    for _ in range(samples):
        p, q, r = (random_poly(rng, sa.source, max_degree, order) for _ in range(3))
        lhs, rhs = sa(sa(p, q), r), sa(p, sa(q, r))
        if lhs != rhs:
            bad.append({"p": p.render(), "q": q.render(), "r": r.render(), "difference": (lhs - rhs).render()})
    return bad


def _sl2_relations(alg_name: str) -> list[tuple[str, str, str, int]]:
    """(g, g', result, factor) with [g, g'] = factor * result."""
    if alg_name.startswith("plane"):
        return [("E", "F", "H", 1), ("H", "E", "E", 2), ("H", "F", "F", -2)]
    out = []
    for c in "12":
        out += [("E" + c, "F" + c, "H" + c, 1), ("H" + c, "E" + c, "E" + c, 2), ("H" + c, "F" + c, "F" + c, -2)]
    out += [(a, b, "", 0) for a in ("E1", "F1", "H1") for b in ("E2", "F2", "H2")]
    return out


def invariants_suite(
    order: int = DEFAULT_ORDER,
    algebra: str = "plane",
    ordering: str | None = None,
    seed: int = 0,
    samples: int = 20,
    max_degree: int = 4,
) -> dict:
    """Squared-length invariance plus seeded algebraic properties of star
    products and transferred actions."""
    rng = random.Random(seed)
    kinds = KINDS if ordering is None else (ordering,)
    checks = []

    inv = invariance_report(order)
    for entry in inv["checks"]:
        if entry["ordering"] in kinds:
            witness = {"value": entry["value"], "invariant": entry["invariant"]}
            checks.append(_check(f"squared length under {entry['ordering']} ordering", entry["status"] == "pass", witness))

    cl = algebra_by_name(f"{algebra}-classical")
    for kind in kinds:
        sa = StarAlgebra.of(algebra, kind, order)
        bad = associativity_failures(sa, rng, samples, max_degree, order)
        checks.append(_check(f"{kind}: star associativity ({samples} triples)", not bad, bad or None))

        bad = []
        for _ in range(samples):
            p, q = (random_poly(rng, cl, max_degree, order) for _ in range(2))
            if (sa(p, q) - p * q).truncate(1) != cl.zero(1):
                bad.append({"p": p.render(), "q": q.render()})
        checks.append(_check(f"{kind}: p*q - pq = O(h)", not bad, bad or None))

        ta = TransferredAction(sa.ordering)
        bad = []
        for _ in range(samples):
            p = random_poly(rng, cl, max_degree, order)
            for g, gp, res, f in _sl2_relations(algebra):
                lhs = ta(g, ta(gp, p)) - ta(gp, ta(g, p))
                rhs = ta(res, p) * f if f else cl.zero(order)
                if lhs != rhs:
                    bad.append({"p": p.render(), "pair": [g, gp]})
        checks.append(_check(f"{kind}: transferred action is a module action", not bad, bad or None))

    # phi^-1 phi' intertwines the star products of phi' and phi
    if len(kinds) > 1:
        bad = []
        pairs = [(a, b) for a in kinds for b in kinds if a != b]
        for _ in range(samples):
            a, b = pairs[rng.randrange(len(pairs))]
            phi, phip = ordering_map(algebra, a, order), ordering_map(algebra, b, order)
            iso = lambda x: phi.inverse(phip.forward(x))
            p, q = (random_poly(rng, cl, max_degree, order) for _ in range(2))
            lhs = iso(StarAlgebra(phip)(p, q))
            rhs = StarAlgebra(phi)(iso(p), iso(q))
            if lhs != rhs:
                bad.append({"orderings": [a, b], "p": p.render(), "q": q.render()})
        checks.append(_check("orderings give isomorphic star products", not bad, bad or None))
    return _report("invariants", order, checks, algebra=algebra, seed=seed)


# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[..., dict]] = {
    "requal": lambda cfg: requal_suite(cfg.order),
    "rigidity-plane": lambda cfg: rigidity_suite("plane", cfg.order, min(cfg.max_degree, 8)),
    "rigidity-m2": lambda cfg: rigidity_suite("m2", cfg.order, min(cfg.max_degree, 6)),
    "cg": lambda cfg: cg_suite(cfg.order),
    "product-formula": lambda cfg: product_formula_suite(cfg.order),
    "invariants": lambda cfg: invariants_suite(cfg.order, cfg.algebra, cfg.ordering_or_none, cfg.seed),
}


def run_suite(name: str, cfg) -> list[dict]:
    """Run one suite (or every suite for ``all``), timing each."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        t0 = time.perf_counter()
        rep = SUITES[n](cfg)
        rep["seconds"] = round(time.perf_counter() - t0, 3)
        out.append(rep)
    return out
