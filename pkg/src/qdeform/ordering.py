"""Irreducible bases and ordering prescriptions.

An ordering prescription maps the commutative polynomial algebra (over
h-series) linearly onto a deformed algebra.  Three kinds are provided for
both the plane and M(2):

``normal``     monomial -> PBW word with the same exponents;
``symmetric``  monomial -> average of all distinct letter orderings;
``sympres``    the symmetry-preserving map, which identifies the
               irreducible bases of both sides.

Maps are stored degree by degree; inverses are computed by exact
elimination on the connected blocks of each graded component.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .linalg import connected_blocks, invert
from .ncalg import (
    M2,
    M2_CLASSICAL,
    PLANE,
    PLANE_CLASSICAL,
    Algebra,
    AlgebraMismatch,
    NCPoly,
    qdet,
)
from .qarith import DomainError, HalfLike, as_half, qbinom
from .rep import act, cg_table, ladder_coeff
from .scalar import DEFAULT_ORDER, HSeries, RadicalScalar, series_sqrt

__all__ = [
    "OrderingMap",
    "InternalInconsistency",
    "KINDS",
    "plane_irred_basis",
    "plane_ordering",
    "m2_irred_basis",
    "m2_sympres_ordering",
    "m2_sympres_pipeline",
    "m2_product_formula_check",
    "phi1_coefficients",
    "phi2_expansion",
    "ordering_map",
    "IrreducibleBasis",
    "sqrt_qbinom",
]

KINDS = ("normal", "symmetric", "sympres")


class InternalInconsistency(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def sqrt_qbinom(n: int, k: int, deformed: bool, order: int) -> HSeries:
    if deformed:
        return series_sqrt(qbinom(n, k, order))
    return HSeries.const(RadicalScalar.sqrt_of(math.comb(n, k)), order)


def _check_index(j: Fraction, m: Fraction) -> None:
    if j < 0 or abs(m) > j or (j - m).denominator != 1:
        raise DomainError(f"invalid index pair j={j}, m={m}")


# ---------------------------------------------------------------------------
# plane


def plane_irred_basis(j: HalfLike, m: HalfLike, deformed: bool = True, order: int = DEFAULT_ORDER) -> NCPoly:
    """(q-)binomial^{1/2} x^{j-m} y^{j+m}."""
    j, m = as_half(j), as_half(m)
    _check_index(j, m)
    alg = PLANE if deformed else PLANE_CLASSICAL
    k, l = int(j - m), int(j + m)
    return alg.monomial((k, l), sqrt_qbinom(k + l, l, deformed, order), order)


@lru_cache(maxsize=None)
def _sympres_plane_factor(k: int, l: int, order: int) -> HSeries:
    return sqrt_qbinom(k + l, k, True, order) * RadicalScalar.sqrt_of(Fraction(1, math.comb(k + l, k)))


# ---------------------------------------------------------------------------
# symmetric ordering via the noncommutative multinomial expansion


@lru_cache(maxsize=None)
def _symmetric_sums(alg: Algebra, degree: int, order: int) -> dict:
    """Map exponent vector -> sum of all words with those letter counts."""
    if degree == 0:
        return {alg.zero_exps(): alg.one(order)}
    prev = _symmetric_sums(alg, degree - 1, order)
    out: dict = {}
    for e, p in prev.items():
        for i in range(alg.ngens):
            e2 = list(e)
            e2[i] += 1
            e2 = tuple(e2)
            q = p * alg.gen(alg.generators[i], order)
            out[e2] = q if e2 not in out else out[e2] + q
    return out


def _multinomial(e) -> int:
    out = math.factorial(sum(e))
    for k in e:
        out //= math.factorial(k)
    return out


# ---------------------------------------------------------------------------
# M(2): irreducible basis by lowering from d^{2j}


@lru_cache(maxsize=None)
def _m2_basis_table(j: Fraction, deformed: bool, order: int) -> dict:
    alg = M2 if deformed else M2_CLASSICAL
    weights = [j - k for k in range(int(2 * j) + 1)]
    table = {(j, j): alg.monomial((0, 0, 0, int(2 * j)), 1, order)}
    for m in weights[1:]:
        up = table[(m + 1, j)]
        table[(m, j)] = act("F1", up) * ladder_coeff("F", j, m + 1, deformed, order).inv()
    for m in weights:
        for mp in weights[1:]:
            up = table[(m, mp + 1)]
            table[(m, mp)] = act("F2", up) * ladder_coeff("F", j, mp + 1, deformed, order).inv()
    return table


def m2_irred_basis(
    j: HalfLike, m: HalfLike, mp: HalfLike, deformed: bool = True, order: int = DEFAULT_ORDER
) -> NCPoly:
    """Basis element T^{(j,j)}_{m m'} of the (j, j) subrepresentation generated
    by d^{2j}; the first index belongs to the first sl2 copy."""
    j, m, mp = as_half(j), as_half(m), as_half(mp)
    _check_index(j, m)
    _check_index(j, mp)
    return _m2_basis_table(j, bool(deformed), order)[(m, mp)]


@lru_cache(maxsize=None)
def _qdet_power(k: int, deformed: bool, order: int) -> NCPoly:
    alg = M2 if deformed else M2_CLASSICAL
    if k == 0:
        return alg.one(order)
    return _qdet_power(k - 1, deformed, order) * qdet(order, alg)


def m2_reduced_element(n: Fraction, j: Fraction, m, mp, deformed: bool, order: int) -> NCPoly:
    """l^{2(n-j)} T^{(j,j)}_{m m'}."""
    return _qdet_power(int(n - j), deformed, order) * m2_irred_basis(j, m, mp, deformed, order)


# ---------------------------------------------------------------------------
# change of basis formulas for M(2)


def _halves(exps):
    A, B, C, D = exps
    na, nb, nc, nd = (Fraction(x, 2) for x in exps)
    J1, J2 = na + nb, nc + nd
    n1 = -na - nb + nc + nd
    n2 = -na + nb - nc + nd
    return J1, J2, n1, n2, J1 + J2


def _spins(n: Fraction, n1: Fraction, n2: Fraction) -> list[Fraction]:
    lo = max(abs(n1), abs(n2))
    return [lo + k for k in range(int(n - lo) + 1)]


def phi1_coefficients(exps, deformed: bool = True, order: int = DEFAULT_ORDER) -> dict:
    """Expansion of a normal-ordered monomial in the reduced basis.

    Returns ``{j: coeff}`` with ``a^A b^B c^C d^D = sum_j coeff_j
    l^{2(n-j)} T^{(j,j)}_{n1 n2}``.
    """
    A, B, C, D = exps
    J1, J2, n1, n2, n = _halves(exps)
    cg = cg_table(J1, J2, deformed, order)
    pref = (sqrt_qbinom(A + B, B, deformed, order) * sqrt_qbinom(C + D, C, deformed, order)).inv()
    out = {}
    for j in _spins(n, n1, n2):
        c = cg.coeff(j, -J1, J2) * cg.coeff(j, Fraction(B - A, 2), Fraction(D - C, 2)) * pref
        if not c.is_zero():
            out[j] = c
    return out


def phi2_expansion(exps, j: HalfLike, deformed: bool = True, order: int = DEFAULT_ORDER) -> dict:
    """Expansion of l^{2(n-j)} T^{(j,j)}_{n1 n2} in normal-ordered monomials,
    using the labels (n, n1, n2) of the monomial ``exps``.

    Returns ``{exps': coeff}``.
    """
    A, B, C, D = exps
    j = as_half(j)
    J1, J2, n1, n2, n = _halves(exps)
    cg = cg_table(J1, J2, deformed, order)
    lead = cg.coeff(j, -J1, J2)
    if lead.is_zero() or lead.coeff(0).is_zero():
        raise InternalInconsistency(f"vanishing boundary Clebsch-Gordan coefficient at j={j}")
    lead_inv = lead.inv()
    out = {}
    for k in range(-min(B, C), min(A, D) + 1):
        c = cg.coeff(j, Fraction(B - A, 2) + k, Fraction(D - C, 2) - k)
        if c.is_zero():
            continue
        c = (
            c
            * lead_inv
            * sqrt_qbinom(A + B, B + k, deformed, order)
            * sqrt_qbinom(C + D, C + k, deformed, order)
        )
        out[(A - k, B + k, C + k, D - k)] = c
    return out


def m2_sympres_ordering(exps, order: int = DEFAULT_ORDER) -> NCPoly:
    """Closed-form image of a^A b^B c^C d^D under the symmetry-preserving map."""
    A, B, C, D = exps
    J1, J2, n1, n2, n = _halves(exps)
    cl = cg_table(J1, J2, False, order)
    qt = cg_table(J1, J2, True, order)
    cl_pref = RadicalScalar.sqrt_of(Fraction(1, math.comb(A + B, B) * math.comb(C + D, C)))
    terms: dict = {}
    for j in _spins(n, n1, n2):
        left = cl.coeff(j, -J1, J2) * cl.coeff(j, Fraction(B - A, 2), Fraction(D - C, 2))
        if left.is_zero():
            continue
        q_lead = qt.coeff(j, -J1, J2)
        if q_lead.coeff(0).is_zero():
            raise InternalInconsistency(f"vanishing boundary coefficient at j={j}")
        left = left * q_lead.inv() * cl_pref
        for k in range(-min(B, C), min(A, D) + 1):
            right = qt.coeff(j, Fraction(B - A, 2) + k, Fraction(D - C, 2) - k)
            if right.is_zero():
                continue
            c = left * right * sqrt_qbinom(A + B, B + k, True, order) * sqrt_qbinom(C + D, C + k, True, order)
            e = (A - k, B + k, C + k, D - k)
            v = terms.get(e)
            terms[e] = c if v is None else v + c
    return NCPoly(M2, terms, order)


def m2_sympres_pipeline(exps, order: int = DEFAULT_ORDER) -> NCPoly:
    """Same map built by composition: expand classically in the reduced basis,
    then replace each l^{2(n-j)} T^{(j,j)} by its deformed counterpart
    computed by lowering and rewriting."""
    J1, J2, n1, n2, n = _halves(exps)
    out = M2.zero(order)
    for j, c in phi1_coefficients(exps, False, order).items():
        out = out + m2_reduced_element(n, j, n1, n2, True, order) * c
    return out


# ---------------------------------------------------------------------------
# ordering maps


class OrderingMap:
    """Graded linear isomorphism from a commutative algebra onto a deformed one."""

    def __init__(
        self,
        kind: str,
        source: Algebra,
        target: Algebra,
        order: int,
        image: Callable[[tuple], NCPoly],
    ):
        self.kind = kind
        self.source = source
        self.target = target
        self.order = order
        self._image_fn = image
        self._images: dict = {}
        self._inverse: dict = {}
        self._lock = threading.Lock()

    def image(self, exps) -> NCPoly:
        exps = tuple(exps)
        img = self._images.get(exps)
        if img is None:
            img = self._image_fn(exps)
            if img.algebra is not self.target:
                raise AlgebraMismatch("ordering image lands in the wrong algebra")
            self._images[exps] = img
        return img

    def forward(self, p: NCPoly) -> NCPoly:
        if p.algebra.name != self.source.name:
            raise AlgebraMismatch(f"expected {self.source.name}, got {p.algebra.name}")
        out = self.target.zero(min(p.order, self.order))
        for e, c in p.terms.items():
            out = out + self.image(e) * c
        return out

    def matrix(self, degree: int) -> tuple[list, list[list[HSeries]]]:
        """Monomials of the degree and the matrix M[target][source]."""
        monos = self.source.monomials_of_degree(degree)
        idx = {e: i for i, e in enumerate(monos)}
        zero = HSeries.zero(self.order)
        rows = [[zero] * len(monos) for _ in monos]
        for s, e in enumerate(monos):
            for t, c in self.image(e).terms.items():
                rows[idx[t]][s] = c
        return monos, rows

    def _inverse_degree(self, degree: int) -> dict:
        with self._lock:
            cached = self._inverse.get(degree)
            if cached is not None:
                return cached
            monos = self.source.monomials_of_degree(degree)
            edges = {e: set() for e in monos}
            for e in monos:
                for t in self.image(e).terms:
                    edges[e].add(t)
                    edges[t].add(e)
            inv: dict = {}
            for block in connected_blocks(edges):
                pos = {e: i for i, e in enumerate(block)}
                zero = HSeries.zero(self.order)
                mat = [[zero] * len(block) for _ in block]
                for s, e in enumerate(block):
                    for t, c in self.image(e).terms.items():
                        mat[pos[t]][s] = c
                minv = invert(mat, self.order)
                for ti, t in enumerate(block):
                    inv[t] = {s: minv[si][ti] for si, s in enumerate(block) if not minv[si][ti].is_zero()}
            self._inverse[degree] = inv
            return inv

    def inverse_image(self, exps) -> NCPoly:
        exps = tuple(exps)
        col = self._inverse_degree(sum(exps))[exps]
        return NCPoly(self.source, col, self.order)

    def inverse(self, q: NCPoly) -> NCPoly:
        if q.algebra.name != self.target.name:
            raise AlgebraMismatch(f"expected {self.target.name}, got {q.algebra.name}")
        n = min(q.order, self.order)
        acc: dict = {}
        for e, c in q.terms.items():
            for s, v in self._inverse_degree(sum(e))[e].items():
                w = v.truncate(n) * c.truncate(n)
                cur = acc.get(s)
                acc[s] = w if cur is None else cur + w
        return NCPoly(self.source, acc, n)

    def __call__(self, p: NCPoly) -> NCPoly:
        return self.forward(p)

    def to_json(self, max_degree: int) -> dict:
        degrees = []
        for k in range(max_degree + 1):
            monos, rows = self.matrix(k)
            degrees.append(
                {
                    "degree": k,
                    "monomials": [list(e) for e in monos],
                    "matrix": [[v.to_json() for v in r] for r in rows],
                }
            )
        return {
            "kind": self.kind,
            "source": self.source.name,
            "target": self.target.name,
            "order": self.order,
            "degrees": degrees,
        }


def _image_normal(target: Algebra, order: int):
    return lambda e: target.monomial(e, 1, order)


def _image_symmetric(target: Algebra, order: int):
    def f(e):
        total = _symmetric_sums(target, sum(e), order)[e]
        return total * Fraction(1, _multinomial(e))

    return f


def _image_sympres_plane(order: int):
    return lambda e: PLANE.monomial(e, _sympres_plane_factor(e[0], e[1], order), order)


@lru_cache(maxsize=None)
def ordering_map(algebra: str, kind: str, order: int = DEFAULT_ORDER, max_degree: int | None = None) -> OrderingMap:
    """Shared (memoized) ordering map for ``algebra`` in {plane, m2}."""
    if kind not in KINDS:
        raise ValueError(f"unknown ordering kind {kind!r}")
    if algebra == "plane":
        src, tgt = PLANE_CLASSICAL, PLANE
    elif algebra == "m2":
        src, tgt = M2_CLASSICAL, M2
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    if max_degree is not None:
        src, tgt = src.with_max_degree(max_degree), tgt.with_max_degree(max_degree)
    if kind == "normal":
        img = _image_normal(tgt, order)
    elif kind == "symmetric":
        img = _image_symmetric(tgt, order)
    elif algebra == "plane":
        base = _image_sympres_plane(order)
        img = lambda e: base(e).on_algebra(tgt)
    else:
        img = lambda e: m2_sympres_ordering(e, order).on_algebra(tgt)
    return OrderingMap(kind, src, tgt, order, img)


def plane_ordering(kind: str, p: NCPoly, order: int | None = None) -> NCPoly:
    """Apply the named plane ordering to a commutative polynomial."""
    if p.algebra.name != "plane-classical":
        raise AlgebraMismatch("plane orderings act on plane-classical polynomials")
    return ordering_map("plane", kind, order or p.order).forward(p)


# ---------------------------------------------------------------------------
# reduced-basis decomposition of the deformed algebras


@dataclass(frozen=True)
class BasisLabel:
    n: Fraction  # half the degree
    j: Fraction
    m: Fraction
    mp: Fraction | None = None  # second weight (M(2) only)


class IrreducibleBasis:
    """Reduced basis of a homogeneous component and coordinates in it.

    For the plane the elements are T^j_m with j = degree/2.  For M(2) they are
    l^{2(n-j)} T^{(j,j)}_{m m'} with n = degree/2.
    """

    def __init__(self, algebra: Algebra, order: int):
        self.algebra = algebra
        self.order = order
        self.deformed = algebra.deformed
        self._blocks: dict = {}
        self._lock = threading.Lock()

    def labels(self, degree: int) -> Iterator[BasisLabel]:
        n = Fraction(degree, 2)
        if self.algebra.ngens == 2:
            for k in range(degree + 1):
                yield BasisLabel(n, n, -n + k)
            return
        j = n
        while j >= 0:
            ws = [-j + k for k in range(int(2 * j) + 1)]
            for m in ws:
                for mp in ws:
                    yield BasisLabel(n, j, m, mp)
            j -= 1

    def element(self, lab: BasisLabel) -> NCPoly:
        if self.algebra.ngens == 2:
            return plane_irred_basis(lab.j, lab.m, self.deformed, self.order).on_algebra(self.algebra)
        return m2_reduced_element(lab.n, lab.j, lab.m, lab.mp, self.deformed, self.order).on_algebra(
            self.algebra
        )

    def _weight_key(self, lab: BasisLabel):
        return (2 * lab.m,) if lab.mp is None else (2 * lab.m, 2 * lab.mp)

    def _block(self, degree: int, weight: tuple):
        key = (degree, weight)
        with self._lock:
            blk = self._blocks.get(key)
            if blk is not None:
                return blk
            labs = [l for l in self.labels(degree) if self._weight_key(l) == weight]
            monos = [e for e in self.algebra.monomials_of_degree(degree) if self.algebra.weight(e) == weight]
            if len(labs) != len(monos):
                raise InternalInconsistency(f"basis size mismatch at degree {degree}, weight {weight}")
            pos = {e: i for i, e in enumerate(monos)}
            zero = HSeries.zero(self.order)
            mat = [[zero] * len(labs) for _ in monos]
            for s, lab in enumerate(labs):
                for e, c in self.element(lab).terms.items():
                    mat[pos[e]][s] = c
            blk = (labs, pos, invert(mat, self.order))
            self._blocks[key] = blk
            return blk

    def decompose(self, p: NCPoly) -> dict[BasisLabel, HSeries]:
        """Coordinates of ``p`` in the reduced basis."""
        out: dict = {}
        for e, c in p.terms.items():
            labs, pos, minv = self._block(sum(e), self.algebra.weight(e))
            col = pos[e]
            for i, lab in enumerate(labs):
                v = minv[i][col]
                if v.is_zero():
                    continue
                w = v.truncate(min(p.order, v.order)) * c
                cur = out.get(lab)
                out[lab] = w if cur is None else cur + w
        return {k: v for k, v in out.items() if not v.is_zero()}

    def compose(self, coords: dict[BasisLabel, HSeries]) -> NCPoly:
        out = self.algebra.zero(self.order)
        for lab, c in coords.items():
            out = out + self.element(lab) * c
        return out


@lru_cache(maxsize=None)
def irreducible_basis(algebra_name: str, order: int) -> IrreducibleBasis:
    from .ncalg import algebra_by_name

    return IrreducibleBasis(algebra_by_name(algebra_name), order)


def m2_product_formula_check(j1: HalfLike, j2: HalfLike, order: int = DEFAULT_ORDER, deformed: bool = True) -> dict:
    """Compare T^{(j1,j1)} T^{(j2,j2)}, computed by rewriting, with the
    Clebsch-Gordan double sum over l^{2(j1+j2-j)} T^{(j,j)}."""
    j1, j2 = as_half(j1), as_half(j2)
    cg = cg_table(j1, j2, deformed, order)
    w1 = [-j1 + k for k in range(int(2 * j1) + 1)]
    w2 = [-j2 + k for k in range(int(2 * j2) + 1)]
    n = j1 + j2
    checked, failures = 0, []
    for m1 in w1:
        for m1p in w1:
            left = m2_irred_basis(j1, m1, m1p, deformed, order)
            for m2 in w2:
                for m2p in w2:
                    lhs = left * m2_irred_basis(j2, m2, m2p, deformed, order)
                    rhs = lhs.algebra.zero(order)
                    m, mp = m1 + m2, m1p + m2p
                    for j in cg.spins():
                        if abs(m) > j or abs(mp) > j:
                            continue
                        c = cg.coeff(j, m1, m2) * cg.coeff(j, m1p, m2p)
                        if c.is_zero():
                            continue
                        rhs = rhs + m2_reduced_element(n, j, m, mp, deformed, order) * c
                    checked += 1
                    if lhs != rhs:
                        failures.append(
                            {"indices": [str(x) for x in (m1, m1p, m2, m2p)], "difference": (lhs - rhs).render()}
                        )
    return {"j1": str(j1), "j2": str(j2), "checked": checked, "passed": not failures, "failures": failures}
