"""Star products and transferred symmetry actions.

Given an ordering prescription phi from commutative polynomials onto a
deformed algebra, the star product is ``p * q = phi^-1(phi(p) phi(q))``.  The
transferred action of a classical generator g is
``phi^-1(rho_h(alpha(g)) phi(p))``, where alpha is the algebra isomorphism
between the classical and deformed enveloping algebras.  alpha only enters
through its eigenvalues on irreducible components: on a spin-(j, m) vector
``alpha(E) = E_hat / f(j, m)`` with ``f`` from :func:`qdeform.rep.alpha_diag`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ncalg import M2, M2_CLASSICAL, Algebra, AlgebraMismatch, NCPoly
from .ordering import BasisLabel, OrderingMap, irreducible_basis, ordering_map
from .qarith import hexp
from .rep import act, alpha_diag, generators_for
from .scalar import DEFAULT_ORDER, HSeries

__all__ = [
    "StarAlgebra",
    "TransferredAction",
    "classical_action",
    "star",
    "transferred_action",
    "invariance_report",
]


@dataclass(frozen=True)
class StarAlgebra:
    ordering: OrderingMap

    @classmethod
    def of(cls, algebra: str, kind: str, order: int = DEFAULT_ORDER) -> "StarAlgebra":
        return cls(ordering_map(algebra, kind, order))

    @property
    def source(self) -> Algebra:
        return self.ordering.source

    def product(self, p: NCPoly, q: NCPoly) -> NCPoly:
        phi = self.ordering
        return phi.inverse(phi.forward(p) * phi.forward(q))

    def __call__(self, p: NCPoly, q: NCPoly) -> NCPoly:
        return self.product(p, q)


def star(sa: StarAlgebra, p: NCPoly, q: NCPoly) -> NCPoly:
    return sa.product(p, q)


# ---------------------------------------------------------------------------
# classical action as first-order differential operators

# generator -> [(source letter, target letter)], meaning sum target * d/d(source)
_PLANE_VECTOR_FIELDS = {"E": [(0, 1)], "F": [(1, 0)]}
_M2_VECTOR_FIELDS = {
    "E1": [(0, 2), (1, 3)],
    "F1": [(2, 0), (3, 1)],
    "E2": [(0, 1), (2, 3)],
    "F2": [(1, 0), (3, 2)],
}
# H as a diagonal field: coefficient of x_i d/dx_i
_H_WEIGHTS = {"H": (-1, 1), "H1": (-1, -1, 1, 1), "H2": (-1, 1, -1, 1)}


def classical_action(g: str, p: NCPoly) -> NCPoly:
    """Differential-operator action on a commutative polynomial.

    Plane: ``E = y d/dx``, ``F = x d/dy``, ``H = y d/dy - x d/dx``.
    M(2): ``E1 = c d/da + d d/db``, ``F1 = a d/dc + b d/dd``,
    ``E2 = b d/da + d d/dc``, ``F2 = a d/db + c d/dd`` and the matching Cartan
    elements.
    """
    alg = p.algebra
    if alg.deformed:
        raise AlgebraMismatch("classical_action needs a commutative algebra")
    if g not in generators_for(alg):
        raise ValueError(f"{g!r} does not act on {alg.name}")
    acc: dict = {}

    def add(e, c):
        cur = acc.get(e)
        acc[e] = c if cur is None else cur + c

    for e, c in p.terms.items():
        if g.startswith("H"):
            w = sum(a * b for a, b in zip(_H_WEIGHTS[g], e))
            if w:
                add(e, c * w)
            continue
        fields = (_PLANE_VECTOR_FIELDS if alg.ngens == 2 else _M2_VECTOR_FIELDS)[g]
        for src, tgt in fields:
            if e[src] == 0:
                continue
            f = list(e)
            f[src] -= 1
            f[tgt] += 1
            add(tuple(f), c * e[src])
    return NCPoly(alg, acc, p.order)


# ---------------------------------------------------------------------------
# transferred action


def _alpha_scale(g: str, lab: BasisLabel, order: int) -> HSeries:
    if g.startswith("H"):
        return HSeries.one(order)
    m = lab.m if lab.mp is None or g.endswith("1") else lab.mp
    return alpha_diag(g[0], lab.j, m, order).inv()


@dataclass(frozen=True)
class TransferredAction:
    ordering: OrderingMap

    @classmethod
    def of(cls, algebra: str, kind: str, order: int = DEFAULT_ORDER) -> "TransferredAction":
        return cls(ordering_map(algebra, kind, order))

    def deformed_side(self, g: str, q: NCPoly) -> NCPoly:
        """``rho_h(alpha(g))`` on an element of the deformed algebra."""
        if g.startswith("H"):
            return act(g, q)
        basis = irreducible_basis(q.algebra.name, self.ordering.order)
        coords = basis.decompose(q)
        scaled = {lab: c * _alpha_scale(g, lab, q.order) for lab, c in coords.items()}
        return act(g, basis.compose(scaled).truncate(q.order))

    def apply(self, g: str, p: NCPoly) -> NCPoly:
        phi = self.ordering
        return phi.inverse(self.deformed_side(g, phi.forward(p)))

    def __call__(self, g: str, p: NCPoly) -> NCPoly:
        return self.apply(g, p)


def transferred_action(ta: TransferredAction, g: str, p: NCPoly) -> NCPoly:
    return ta.apply(g, p)


# ---------------------------------------------------------------------------
# the squared length of Euclidean four-space


def invariance_report(order: int = DEFAULT_ORDER) -> dict:
    """Pull the deformed squared length back along the normal and the
    symmetry-preserving orderings and test each result for invariance."""
    cl = M2_CLASSICAL
    a, b, c, d = (cl.gen(x, order) for x in "abcd")
    classical_length = a * d - b * c
    eh = hexp(1, order)

    normal = StarAlgebra.of("m2", "normal", order)
    normal_value = normal(a, d) - normal(b, c) * eh
    normal_expected = a * d - b * c * eh

    qdet_hat = M2.gen("a", order) * M2.gen("d", order) - M2.gen("b", order) * M2.gen("c", order) * eh
    sympres_value = ordering_map("m2", "sympres", order).inverse(qdet_hat)

    def invariant(p: NCPoly) -> bool:
        return all(classical_action(g, p).is_zero() for g in generators_for(cl))

    entries = [
        {
            "ordering": "normal",
            "expression": "a*d - e(1)*b*c (star products)",
            "value": normal_value.render(),
            "expected": normal_expected.render(),
            "invariant": invariant(normal_value),
            "status": "pass" if normal_value == normal_expected and not invariant(normal_value) else "fail",
        },
        {
            "ordering": "sympres",
            "expression": "phi^-1(a*d - e(1)*b*c)",
            "value": sympres_value.render(),
            "expected": classical_length.render(),
            "invariant": invariant(sympres_value),
            "status": "pass" if sympres_value == classical_length and invariant(sympres_value) else "fail",
        },
    ]
    limit_ok = all(
        v.truncate(1) == classical_length.truncate(1) for v in (normal_value, sympres_value)
    )
    return {
        "order": order,
        "checks": entries,
        "classical_limit": "pass" if limit_ok else "fail",
        "passed": limit_ok and all(e["status"] == "pass" for e in entries),
    }
