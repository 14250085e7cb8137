"""Noncommutative polynomials with PBW normal forms.

Four hard-coded algebras are provided: the quantum plane (``x y = e^h y x``),
the quantum 2x2 matrices ``M_h(2)``, and their commutative limits.  Normal
forms are monomials with generators sorted by the fixed order (``x < y``,
``a < b < c < d``) and are stored as exponent vectors.

Two rewriting paths exist.  :func:`rewrite_word` is a plain word-rewriting
engine with a selectable strategy (used for :func:`normal_form` and for
confluence checks).  Multiplication goes through a memoized routine that
pushes one generator at a time into an already normal-ordered monomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .qarith import expsum
from .scalar import DEFAULT_ORDER, HSeries, RadicalScalar

__all__ = [
    "Algebra",
    "NCPoly",
    "UnknownGenerator",
    "AlgebraMismatch",
    "DegreeOverflow",
    "PLANE",
    "PLANE_CLASSICAL",
    "M2",
    "M2_CLASSICAL",
    "algebra_by_name",
    "normal_form",
    "rewrite_word",
    "qdet",
    "DEFAULT_MAX_DEGREE",
]

DEFAULT_MAX_DEGREE = 16

Exps = tuple  # exponent vector, one entry per generator


class UnknownGenerator(KeyError):
    pass


class AlgebraMismatch(TypeError):
    pass


class DegreeOverflow(OverflowError):
    pass


# A rule's right-hand side: tuple of (coefficient, word) where the coefficient
# is a linear combination of exponentials, ((k, c), ...) meaning sum c e^{k h}.
RuleRHS = tuple


# instances are interned by algebra_by_name, so identity comparison suffices
@dataclass(frozen=True, eq=False)
class Algebra:
    name: str
    generators: tuple[str, ...]
    rules: tuple = field(repr=False)  # ((hi, lo), RuleRHS) with hi > lo
    max_degree: int = DEFAULT_MAX_DEGREE

    @property
    def deformed(self) -> bool:
        return not self.name.endswith("-classical")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, g: str) -> int:
        try:
            return self.generators.index(g)
        except ValueError:
            raise UnknownGenerator(f"{g!r} is not a generator of {self.name}") from None

    def rule(self, hi: int, lo: int) -> RuleRHS:
        for key, rhs in self.rules:
            if key == (hi, lo):
                return rhs
        raise KeyError((hi, lo))

    def classical(self) -> "Algebra":
        if not self.deformed:
            return self
        return algebra_by_name(self.name + "-classical", self.max_degree)

    def quantum(self) -> "Algebra":
        if self.deformed:
            return self
        return algebra_by_name(self.name[: -len("-classical")], self.max_degree)

    def with_max_degree(self, max_degree: int) -> "Algebra":
        return algebra_by_name(self.name, max_degree)

    # -- element constructors ------------------------------------------------

    def unit_exps(self, i: int) -> Exps:
        e = [0] * self.ngens
        e[i] = 1
        return tuple(e)

    def zero_exps(self) -> Exps:
        return (0,) * self.ngens

    def one(self, order: int = DEFAULT_ORDER) -> "NCPoly":
        return NCPoly(self, {self.zero_exps(): HSeries.one(order)}, order)

    def zero(self, order: int = DEFAULT_ORDER) -> "NCPoly":
        return NCPoly(self, {}, order)

    def gen(self, g: str, order: int = DEFAULT_ORDER) -> "NCPoly":
        return NCPoly(self, {self.unit_exps(self.index(g)): HSeries.one(order)}, order)

    def monomial(self, exps: Sequence[int], coeff=1, order: int = DEFAULT_ORDER) -> "NCPoly":
        if not isinstance(coeff, HSeries):
            coeff = HSeries.const(coeff, order)
        return NCPoly(self, {tuple(exps): coeff}, order)

    def word(self, letters: Iterable[str], order: int = DEFAULT_ORDER) -> "NCPoly":
        out = self.one(order)
        for g in letters:
            out = out * self.gen(g, order)
        return out

    def monomials_of_degree(self, k: int) -> list[Exps]:
        return list(_compositions(k, self.ngens))

    def weight(self, exps: Exps) -> tuple[int, ...]:
        """H-eigenvalues of a monomial: one entry per sl2 copy."""
        if self.ngens == 2:
            x, y = exps
            return (y - x,)
        a, b, c, d = exps
        return (-a - b + c + d, -a + b - c + d)


def _compositions(k: int, n: int) -> Iterator[Exps]:
    # lexicographically descending in the first slot
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


_EINV = ((-1, 1),)
_ONE = ((0, 1),)

_PLANE_RULES = (((1, 0), (( _EINV, (0, 1)),)),)
_PLANE_C_RULES = (((1, 0), ((_ONE, (0, 1)),)),)

# a=0 b=1 c=2 d=3
_M2_RULES = (
    ((1, 0), ((_EINV, (0, 1)),)),  # ba -> e^-h ab
    ((2, 0), ((_EINV, (0, 2)),)),  # ca -> e^-h ac
    ((3, 1), ((_EINV, (1, 3)),)),  # db -> e^-h bd
    ((3, 2), ((_EINV, (2, 3)),)),  # dc -> e^-h cd
    ((2, 1), ((_ONE, (1, 2)),)),  # cb -> bc
    ((3, 0), ((_ONE, (0, 3)), (((-1, 1), (1, -1)), (1, 2)))),  # da -> ad - (e^h - e^-h) bc
)
_M2_C_RULES = tuple((key, ((_ONE, (key[1], key[0])),)) for key, _ in _M2_RULES)


@lru_cache(maxsize=None)
def algebra_by_name(name: str, max_degree: int = DEFAULT_MAX_DEGREE) -> Algebra:
    if name == "plane":
        return Algebra("plane", ("x", "y"), _PLANE_RULES, max_degree)
    if name == "plane-classical":
        return Algebra("plane-classical", ("x", "y"), _PLANE_C_RULES, max_degree)
    if name == "m2":
        return Algebra("m2", ("a", "b", "c", "d"), _M2_RULES, max_degree)
    if name == "m2-classical":
        return Algebra("m2-classical", ("a", "b", "c", "d"), _M2_C_RULES, max_degree)
    raise ValueError(f"unknown algebra {name!r}")


PLANE = algebra_by_name("plane")
PLANE_CLASSICAL = algebra_by_name("plane-classical")
M2 = algebra_by_name("m2")
M2_CLASSICAL = algebra_by_name("m2-classical")


@lru_cache(maxsize=None)
def _rule_coeff(coeff_key: tuple, order: int) -> HSeries:
    return expsum(dict(coeff_key), order)


def _rhs_series(rhs: RuleRHS, order: int) -> list[tuple[HSeries, tuple[int, ...]]]:
    return [(_rule_coeff(c, order), w) for c, w in rhs]


# ---------------------------------------------------------------------------
# fast multiplication kernel


def _add_into(acc: dict, exps: Exps, c: HSeries) -> None:
    cur = acc.get(exps)
    v = c if cur is None else cur + c
    if v.is_zero():
        acc.pop(exps, None)
    else:
        acc[exps] = v


@lru_cache(maxsize=200_000)
def _mul_gen(alg: Algebra, exps: Exps, g: int, order: int) -> tuple:
    """Normal form of (normal monomial) * (generator g) as a tuple of terms."""
    last = max((i for i, e in enumerate(exps) if e), default=-1)
    if last <= g:
        e = list(exps)
        e[g] += 1
        return ((tuple(e), HSeries.one(order)),)
    rest = list(exps)
    rest[last] -= 1
    rest = tuple(rest)
    acc: dict = {}
    for coeff, word in _rhs_series(alg.rule(last, g), order):
        terms = {rest: coeff}
        for letter in word:
            terms = _mul_terms_gen(alg, terms, letter, order)
        for e, c in terms.items():
            _add_into(acc, e, c)
    return tuple(sorted(acc.items()))


def _mul_terms_gen(alg: Algebra, terms: Mapping, g: int, order: int) -> dict:
    acc: dict = {}
    for e, c in terms.items():
        for e2, c2 in _mul_gen(alg, e, g, order):
            _add_into(acc, e2, c * c2)
    return acc


@lru_cache(maxsize=200_000)
def _mul_monomials(alg: Algebra, e1: Exps, e2: Exps, order: int) -> tuple:
    terms = {e1: HSeries.one(order)}
    for i, k in enumerate(e2):
        for _ in range(k):
            terms = _mul_terms_gen(alg, terms, i, order)
    return tuple(sorted(terms.items()))


# ---------------------------------------------------------------------------


class NCPoly:
    """Element of one of the algebras, in PBW normal form."""

    __slots__ = ("algebra", "order", "_terms", "_hash")

    def __init__(self, algebra: Algebra, terms: Mapping[Exps, HSeries], order: int):
        self.algebra = algebra
        self.order = order
        clean = {}
        for e, c in terms.items():
            if len(e) != algebra.ngens:
                raise ValueError(f"exponent vector {e} has wrong length for {algebra.name}")
            if c.order != order:
                c = c.truncate(order)
            if not c.is_zero():
                clean[tuple(e)] = c
        if clean and max(sum(e) for e in clean) > algebra.max_degree:
            raise DegreeOverflow(
                f"degree {max(sum(e) for e in clean)} exceeds cap {algebra.max_degree}"
            )
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms, order):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.order = order
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Exps, HSeries]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def coeff(self, exps: Sequence[int]) -> HSeries:
        return self._terms.get(tuple(exps), HSeries.zero(self.order))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, k: int) -> "NCPoly":
        return NCPoly._raw(
            self.algebra, {e: c for e, c in self._terms.items() if sum(e) == k}, self.order
        )

    def truncate(self, order: int) -> "NCPoly":
        return NCPoly(self.algebra, {e: c.truncate(order) for e, c in self._terms.items()}, order)

    def map_coeffs(self, f) -> "NCPoly":
        return NCPoly(self.algebra, {e: f(c) for e, c in self._terms.items()}, self.order)

    def on_algebra(self, algebra: Algebra) -> "NCPoly":
        """Reinterpret the same normal-ordered terms in another algebra."""
        if algebra.ngens != self.algebra.ngens:
            raise AlgebraMismatch(f"{self.algebra.name} vs {algebra.name}")
        return NCPoly(algebra, self._terms, self.order)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "NCPoly") -> int:
        if other.algebra.name != self.algebra.name:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
        return min(self.order, other.order)

    def _scalar(self, s) -> "NCPoly":
        if isinstance(s, (int, Fraction, RadicalScalar)):
            s = HSeries.const(s, self.order)
        n = min(self.order, s.order)
        out = {}
        for e, c in self._terms.items():
            v = c * s
            if not v.is_zero():
                out[e] = v
        return NCPoly._raw(self.algebra, out, n)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            if isinstance(other, (int, Fraction, RadicalScalar, HSeries)):
                other = self.algebra.one(self.order)._scalar(other)
            else:
                return NotImplemented
        n = self._check(other)
        acc = {e: c.truncate(n) for e, c in self._terms.items()}
        for e, c in other._terms.items():
            _add_into(acc, e, c.truncate(n))
        return NCPoly._raw(self.algebra, acc, n)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.algebra, {e: -c for e, c in self._terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar, HSeries)):
            return self._scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        n = self._check(other)
        deg = self.degree() + other.degree()
        if deg > self.algebra.max_degree:
            raise DegreeOverflow(f"product degree {deg} exceeds cap {self.algebra.max_degree}")
        alg = self.algebra
        acc: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                c = c1 * c2 if n == c1.order == c2.order else c1.truncate(n) * c2.truncate(n)
                for e, cm in _mul_monomials(alg, e1, e2, n):
                    _add_into(acc, e, c * cm)
        return NCPoly._raw(alg, acc, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar, HSeries)):
            return self._scalar(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one(self.order)._scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (
            self.algebra.name == other.algebra.name
            and self.order == other.order
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra.name, self.order, frozenset(self._terms.items())))
        return self._hash

    # -- rendering -----------------------------------------------------------

    def monomial_str(self, exps: Exps) -> str:
        parts = []
        for g, k in zip(self.algebra.generators, exps):
            if k == 1:
                parts.append(g)
            elif k > 1:
                parts.append(f"{g}^{k}")
        return "*".join(parts) if parts else "1"

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = self.monomial_str(e)
            if c == HSeries.one(self.order):
                out.append(mono)
            elif c == -HSeries.one(self.order):
                out.append(f"-{mono}")
            else:
                out.append(f"({c.render()})" + ("" if mono == "1" else f"*{mono}"))
        return " + ".join(out).replace("+ -", "- ")

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NCPoly[{self.algebra.name}]({self.render()})"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "order": self.order,
            "terms": [{"exps": list(e), "coeff": c.to_json()} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NCPoly":
        alg = algebra_by_name(data["algebra"])
        order = int(data["order"])
        return cls(
            alg,
            {tuple(t["exps"]): HSeries.from_json(t["coeff"]) for t in data["terms"]},
            order,
        )


# ---------------------------------------------------------------------------
# word rewriting


def _word_indices(alg: Algebra, word) -> tuple[int, ...]:
    if isinstance(word, str):
        word = list(word.replace("*", "").replace(" ", ""))
    return tuple(alg.index(g) if isinstance(g, str) else int(g) for g in word)


def rewrite_word(
    alg: Algebra,
    word,
    order: int = DEFAULT_ORDER,
    strategy: str = "leftmost",
    seed: int | None = None,
) -> dict[tuple[int, ...], HSeries]:
    """Rewrite a generator word to a combination of sorted words.

    ``strategy`` picks which inverted adjacent pair gets rewritten next:
    ``"leftmost"``, ``"rightmost"`` or ``"random"``.
    """
    rng = random.Random(seed)
    pending = {_word_indices(alg, word): HSeries.one(order)}
    done: dict[tuple[int, ...], HSeries] = {}
    while pending:
        w, c = pending.popitem()
        inversions = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not inversions:
            _add_into(done, w, c)
            continue
        if strategy == "leftmost":
            i = inversions[0]
        elif strategy == "rightmost":
            i = inversions[-1]
        elif strategy == "random":
            i = rng.choice(inversions)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for coeff, repl in _rhs_series(alg.rule(w[i], w[i + 1]), order):
            _add_into(pending, w[:i] + tuple(repl) + w[i + 2 :], c * coeff)
    return done


def normal_form(alg: Algebra, word, order: int = DEFAULT_ORDER, strategy: str = "leftmost") -> NCPoly:
    """PBW normal form of a word in the generators."""
    idx = _word_indices(alg, word)
    if len(idx) > alg.max_degree:
        raise DegreeOverflow(f"word length {len(idx)} exceeds cap {alg.max_degree}")
    terms: dict = {}
    for w, c in rewrite_word(alg, idx, order, strategy).items():
        e = [0] * alg.ngens
        for i in w:
            e[i] += 1
        _add_into(terms, tuple(e), c)
    return NCPoly(alg, terms, order)


def qdet(order: int = DEFAULT_ORDER, alg: Algebra = M2) -> NCPoly:
    """``a d - e^h b c`` (``a d - b c`` in the commutative limit)."""
    if alg.ngens != 4:
        raise AlgebraMismatch("quantum determinant needs an m2 algebra")
    coeff = expsum({1: 1} if alg.deformed else {0: 1}, order)
    return alg.monomial((1, 0, 0, 1), 1, order) - alg.monomial((0, 1, 1, 0), coeff, order)
