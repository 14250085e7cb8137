"""Spin-j representations of U(sl2) and U_h(sl2), the map alpha^{-1},
tensor-product Clebsch-Gordan tables, and the symmetry action on the algebras.

Conventions.  Weight bases are ordered ``m = -j, ..., j``.  The deformed
coproduct is ``E -> E (x) K + 1 (x) E``, ``F -> F (x) 1 + K^{-1} (x) F`` with
``K = e^{hH}``.  The generators of the quantum plane and of ``M_h(2)`` form
spin-1/2 doublets in exactly the normalization of the deformed irreps, so
``E |> x = e^{h/2} y`` and ``F |> y = e^{-h/2} x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .ncalg import Algebra, NCPoly
from .qarith import HalfLike, as_half, hexp, qnum
from .scalar import DEFAULT_ORDER, HSeries, RadicalScalar, series_sqrt

__all__ = [
    "RepMatrix",
    "SymbolicOperator",
    "CGTable",
    "NormalizationError",
    "irrep_deformed",
    "irrep_classical",
    "irrep",
    "alpha_inv",
    "alpha_inv_operator",
    "alpha_inv_E_expansion",
    "alpha_diag",
    "qcartan",
    "coproduct_action",
    "cg_table",
    "act",
    "generators_for",
]


class NormalizationError(ArithmeticError):
    pass


def _weights(j: Fraction) -> list[Fraction]:
    return [-j + i for i in range(int(2 * j) + 1)]


@lru_cache(maxsize=None)
def _sqrt_qratio(a: Fraction, b: Fraction, order: int) -> HSeries:
    """sqrt([a][b]/(a b)); the removable singularity at a b = 0 is set to 1."""
    if a * b == 0:
        return HSeries.one(order)
    return series_sqrt(qnum(a, order) * qnum(b, order) * (1 / (a * b)))


@lru_cache(maxsize=None)
def _sqrt_qprod(a: Fraction, b: Fraction, order: int) -> HSeries:
    """sqrt([a][b]) = sqrt(a b) * sqrt([a][b]/(a b))."""
    if a * b == 0:
        return HSeries.zero(order)
    return _sqrt_qratio(a, b, order) * RadicalScalar.sqrt_of(a * b)


def ladder_coeff(g: str, j: Fraction, m: Fraction, deformed: bool, order: int) -> HSeries:
    """Matrix element <j, m +- 1| g |j, m> for g in {E, F}."""
    if g == "E":
        a, b = j + m + 1, j - m
        if not deformed:
            return HSeries.const(RadicalScalar.sqrt_of(a * b), order)
        return hexp(m + 1, order) * _sqrt_qprod(a, b, order)
    if g == "F":
        a, b = j + m, j - m + 1
        if not deformed:
            return HSeries.const(RadicalScalar.sqrt_of(a * b), order)
        return hexp(-m, order) * _sqrt_qprod(a, b, order)
    raise ValueError(f"not a ladder generator: {g}")


@dataclass(frozen=True)
class RepMatrix:
    """Square matrix on the spin-j weight basis; ``rows[i][k]`` is <m_i|.|m_k>."""

    j: Fraction
    rows: tuple

    @classmethod
    def zeros(cls, j, order: int) -> "RepMatrix":
        j = as_half(j)
        n = int(2 * j) + 1
        z = HSeries.zero(order)
        return cls(j, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_entries(cls, j, entries: Mapping, order: int) -> "RepMatrix":
        """Build from ``{(m_row, m_col): HSeries}``."""
        j = as_half(j)
        n = int(2 * j) + 1
        z = HSeries.zero(order)
        rows = [[z] * n for _ in range(n)]
        for (mr, mc), v in entries.items():
            rows[int(mr + j)][int(mc + j)] = v
        return cls(j, tuple(tuple(r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def order(self) -> int:
        return min((v.order for r in self.rows for v in r), default=DEFAULT_ORDER)

    def entry(self, m_row, m_col) -> HSeries:
        return self.rows[int(as_half(m_row) + self.j)][int(as_half(m_col) + self.j)]

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        n = self.dim
        order = min(self.order, other.order)
        out = []
        for i in range(n):
            row = []
            for k in range(n):
                acc = HSeries.zero(order)
                for l in range(n):
                    a, b = self.rows[i][l], other.rows[l][k]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return RepMatrix(self.j, tuple(out))

    def _zip(self, other, f) -> "RepMatrix":
        return RepMatrix(
            self.j,
            tuple(tuple(f(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, s):
        return RepMatrix(self.j, tuple(tuple(v * s for v in r) for r in self.rows))

    __rmul__ = __mul__

    def commutator(self, other: "RepMatrix") -> "RepMatrix":
        return self @ other - other @ self

    def truncate(self, order: int) -> "RepMatrix":
        return RepMatrix(self.j, tuple(tuple(v.truncate(order) for v in r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.j == other.j and self.rows == other.rows

    def __hash__(self):
        return hash((self.j, self.rows))

    def to_json(self) -> dict:
        return {
            "j": str(self.j),
            "rows": [[v.to_json() for v in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data) -> "RepMatrix":
        return cls(
            as_half(Fraction(data["j"])),
            tuple(tuple(HSeries.from_json(v) for v in r) for r in data["rows"]),
        )


def _diag(j: Fraction, f: Callable[[Fraction], HSeries], order: int) -> RepMatrix:
    return RepMatrix.from_entries(j, {(m, m): f(m) for m in _weights(j)}, order)


@lru_cache(maxsize=None)
def irrep(j, g: str, deformed: bool, order: int = DEFAULT_ORDER) -> RepMatrix:
    j = as_half(j)
    if j < 0:
        raise ValueError("spin must be nonnegative")
    if g == "H":
        return _diag(j, lambda m: HSeries.const(2 * m, order), order)
    if g == "E":
        ent = {(m + 1, m): ladder_coeff("E", j, m, deformed, order) for m in _weights(j) if m < j}
    elif g == "F":
        ent = {(m - 1, m): ladder_coeff("F", j, m, deformed, order) for m in _weights(j) if m > -j}
    else:
        raise ValueError(f"unknown generator {g!r}")
    return RepMatrix.from_entries(j, ent, order)


def irrep_deformed(j: HalfLike, g: str, order: int = DEFAULT_ORDER) -> RepMatrix:
    """Deformed spin-j representation matrix of E, F or H."""
    return irrep(as_half(j), g, True, order)


def irrep_classical(j: HalfLike, g: str, order: int = DEFAULT_ORDER) -> RepMatrix:
    return irrep(as_half(j), g, False, order)


def qcartan(j: HalfLike, order: int = DEFAULT_ORDER) -> RepMatrix:
    """(e^{hH} - e^{-hH}) / (e^h - e^{-h}) on the spin-j basis."""
    j = as_half(j)
    return _diag(j, lambda m: qnum(2 * m, order), order)


# ---------------------------------------------------------------------------
# alpha^{-1} as "generator times a function of (J, M)"


@dataclass(frozen=True)
class SymbolicOperator:
    """``g * f(J, M)``: a classical generator (or identity) after a diagonal
    function of the spin and weight operators.

    ``diag(j, m, order)`` gives the eigenvalue of ``f(J, M)`` on ``|j, m>``.
    """

    generator: str | None
    diag: Callable[[Fraction, Fraction, int], HSeries]
    label: str = field(default="")

    def evaluate(self, j: HalfLike, order: int = DEFAULT_ORDER) -> RepMatrix:
        j = as_half(j)
        d = _diag(j, lambda m: self.diag(j, m, order), order)
        if self.generator is None:
            return d
        return irrep(j, self.generator, False, order) @ d


def alpha_diag(g: str, j: Fraction, m: Fraction, order: int) -> HSeries:
    """Eigenvalue of the (J, M)-function multiplying g in alpha^{-1}(g hat)."""
    if g == "E":
        return hexp(m + 1, order) * _sqrt_qratio(j + m + 1, j - m, order)
    if g == "F":
        return hexp(-m, order) * _sqrt_qratio(j + m, j - m + 1, order)
    if g == "H":
        return HSeries.one(order)
    raise ValueError(f"unknown generator {g!r}")


def alpha_inv_operator(g: str) -> SymbolicOperator:
    return SymbolicOperator(g, lambda j, m, n: alpha_diag(g, j, m, n), f"alpha^-1({g})")


def alpha_inv(g: str, j: HalfLike, order: int = DEFAULT_ORDER) -> RepMatrix:
    """Matrix of alpha^{-1}(g hat) on the classical spin-j irrep."""
    return alpha_inv_operator(g).evaluate(j, order)


def alpha_inv_E_expansion() -> SymbolicOperator:
    """E{1 + (2+H)h/2 + [C + (1+H)(5+2H)] h^2/12}, valid to O(h^2)."""

    def diag(j, m, order):
        H = 2 * m
        C = 2 * j * (j + 1)
        coeffs = [Fraction(1), (2 + H) / 2, (C + (1 + H) * (5 + 2 * H)) / 12]
        return HSeries.rational(coeffs[:order] + [0] * max(0, order - 3), order)

    return SymbolicOperator("E", diag, "alpha^-1(E) to O(h^2)")


# ---------------------------------------------------------------------------
# tensor products


def coproduct_action(
    g: str,
    vec: Mapping[tuple, HSeries],
    j1: HalfLike,
    j2: HalfLike,
    deformed: bool = True,
    order: int = DEFAULT_ORDER,
) -> dict[tuple, HSeries]:
    """Act with g on a vector ``{(m1, m2): coeff}`` of V_{j1} (x) V_{j2}."""
    j1, j2 = as_half(j1), as_half(j2)
    out: dict[tuple, HSeries] = {}

    def add(key, v):
        cur = out.get(key)
        v = v if cur is None else cur + v
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v

    for (m1, m2), c in vec.items():
        if g == "H":
            add((m1, m2), c * (2 * (m1 + m2)))
        elif g == "E":
            if m1 < j1:
                k = hexp(2 * m2, order) if deformed else 1
                add((m1 + 1, m2), c * ladder_coeff("E", j1, m1, deformed, order) * k)
            if m2 < j2:
                add((m1, m2 + 1), c * ladder_coeff("E", j2, m2, deformed, order))
        elif g == "F":
            if m1 > -j1:
                add((m1 - 1, m2), c * ladder_coeff("F", j1, m1, deformed, order))
            if m2 > -j2:
                k = hexp(-2 * m1, order) if deformed else 1
                add((m1, m2 - 1), c * ladder_coeff("F", j2, m2, deformed, order) * k)
        else:
            raise ValueError(f"unknown generator {g!r}")
    return out


@dataclass(frozen=True)
class CGTable:
    j1: Fraction
    j2: Fraction
    deformed: bool
    order: int
    entries: Mapping  # (j, m1, m2) -> HSeries

    def coeff(self, j, m1, m2) -> HSeries:
        """<j1 j2; m1 m2 | j, m1+m2>; zero outside the allowed range."""
        return self.entries.get(
            (as_half(j), as_half(m1), as_half(m2)), HSeries.zero(self.order)
        )

    def spins(self) -> list[Fraction]:
        lo, hi = abs(self.j1 - self.j2), self.j1 + self.j2
        return [lo + k for k in range(int(hi - lo) + 1)]

    def truncate(self, order: int) -> "CGTable":
        ent = {k: v.truncate(order) for k, v in self.entries.items()}
        return CGTable(self.j1, self.j2, self.deformed, order, ent)

    def to_json(self) -> dict:
        return {
            "j1": str(self.j1),
            "j2": str(self.j2),
            "deformed": self.deformed,
            "order": self.order,
            "entries": [
                {"j": str(j), "m1": str(m1), "m2": str(m2), "coeff": v.to_json()}
                for (j, m1, m2), v in sorted(self.entries.items())
            ],
        }


@lru_cache(maxsize=None)
def _cg_table(j1: Fraction, j2: Fraction, deformed: bool, order: int) -> CGTable:
    entries: dict = {}
    for j in [j1 + j2 - k for k in range(int(j1 + j2 - abs(j1 - j2)) + 1)]:
        lo = max(-j1, j - j2)
        # highest-weight vector: kernel of Delta(E) on the weight-j space
        c = {j1: HSeries.one(order)}
        for m1p in [j1 - k for k in range(int(j1 - lo))]:
            # target (m1p, j + 1 - m1p) is hit from (m1p - 1, .) by E (x) K and
            # from (m1p, j - m1p) by 1 (x) E
            m1 = m1p - 1
            A = ladder_coeff("E", j1, m1, deformed, order)
            if deformed:
                A = A * hexp(2 * (j - m1), order)
            B = ladder_coeff("E", j2, j - m1p, deformed, order)
            c[m1] = -(c[m1p] * B) / A
        norm2 = HSeries.zero(order)
        for v in c.values():
            norm2 = norm2 + v * v
        lead = norm2.coeff(0)
        if not lead.is_rational() or lead.rational_part() <= 0:
            raise NormalizationError(f"bad norm^2 leading term {lead}")
        inv_norm = series_sqrt(norm2).inv()
        vec = {(m1, j - m1): v * inv_norm for m1, v in c.items()}
        m = j
        while True:
            for (m1, m2), v in vec.items():
                entries[(j, m1, m2)] = v
            if m == -j:
                break
            lowered = coproduct_action("F", vec, j1, j2, deformed, order)
            f = ladder_coeff("F", j, m, deformed, order).inv()
            vec = {k: v * f for k, v in lowered.items()}
            m -= 1
    return CGTable(j1, j2, deformed, order, entries)


def cg_table(j1: HalfLike, j2: HalfLike, deformed: bool = True, order: int = DEFAULT_ORDER) -> CGTable:
    """Clebsch-Gordan table for V_{j1} (x) V_{j2}, built by highest-weight
    search and lowering.  The coefficient of |j1, j1> (x) |j2, j - j1> in each
    highest-weight vector is positive."""
    j1, j2 = as_half(j1), as_half(j2)
    if j1 < 0 or j2 < 0:
        raise ValueError("spins must be nonnegative")
    return _cg_table(j1, j2, bool(deformed), order)


# ---------------------------------------------------------------------------
# symmetry action on the plane and on M(2), extended by the Leibniz rules

# generator -> {letter index: (target letter index, scale exponent/2)}
_PLANE_LADDERS = {"E": {0: 1}, "F": {1: 0}}
_M2_LADDERS = {
    "E1": {0: 2, 1: 3},
    "F1": {2: 0, 3: 1},
    "E2": {0: 1, 2: 3},
    "F2": {1: 0, 3: 2},
}


def generators_for(alg: Algebra) -> tuple[str, ...]:
    if alg.ngens == 2:
        return ("E", "F", "H")
    return ("E1", "F1", "H1", "E2", "F2", "H2")


def _copy(alg: Algebra, g: str) -> int:
    return 0 if alg.ngens == 2 else int(g[1]) - 1


def _letter_weight(alg: Algebra, i: int, copy: int) -> int:
    return alg.weight(alg.unit_exps(i))[copy]


@lru_cache(maxsize=100_000)
def _act_monomial(alg: Algebra, g: str, exps: tuple, order: int) -> NCPoly:
    copy = _copy(alg, g)
    kind = g[0]
    if kind == "H":
        return alg.monomial(exps, alg.weight(exps)[copy], order)
    nz = [i for i, e in enumerate(exps) if e]
    if not nz:
        return alg.zero(order)
    first = nz[0]
    rest = list(exps)
    rest[first] -= 1
    rest = tuple(rest)
    x = alg.monomial(alg.unit_exps(first), 1, order)
    rest_poly = alg.monomial(rest, 1, order)
    ladders = (_PLANE_LADDERS if alg.ngens == 2 else _M2_LADDERS)[g]
    gx = alg.zero(order)
    if first in ladders:
        scale = hexp(Fraction(1, 2) if kind == "E" else Fraction(-1, 2), order) if alg.deformed else 1
        gx = alg.monomial(alg.unit_exps(ladders[first]), scale, order)
    g_rest = _act_monomial(alg, g, rest, order) if any(rest) else alg.zero(order)
    if kind == "E":
        w = alg.weight(rest)[copy]
        k_rest = rest_poly * (hexp(w, order) if alg.deformed else 1)
        return gx * k_rest + x * g_rest
    # F
    w = _letter_weight(alg, first, copy)
    kinv_x = x * (hexp(-w, order) if alg.deformed else 1)
    return gx * rest_poly + kinv_x * g_rest


def act(g: str, p: NCPoly) -> NCPoly:
    """Action of a symmetry generator on an algebra element.

    For the plane ``g`` is one of E, F, H; for M(2) one of E1, F1, H1 (first
    index) or E2, F2, H2 (second index).  Deformed algebras use the deformed
    Leibniz rules, classical ones the ordinary derivation rule.
    """
    alg = p.algebra
    if g not in generators_for(alg):
        raise ValueError(f"{g!r} does not act on {alg.name}")
    out = alg.zero(p.order)
    for e, c in p.terms.items():
        out = out + _act_monomial(alg, g, e, p.order) * c
    return out
