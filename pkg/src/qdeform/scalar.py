"""Exact scalars: rationals extended by square roots, and truncated hbar-series.

A :class:`RadicalScalar` is a finite sum ``sum_d r_d * sqrt(d)`` over squarefree
radicands ``d >= 1`` with rational ``r_d``.  An :class:`HSeries` is a power
series in ``h`` truncated at a fixed order ``N``: the coefficients of
``h^0 .. h^(N-1)`` are kept, everything beyond is unknown.

Internally an HSeries is stored radicand-major, ``{d: (c_0, ..., c_{N-1})}``
with rational ``c_k``, which keeps multiplication cheap when (as is almost
always the case here) a series is a single radical times a rational series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "RadicalScalar",
    "HSeries",
    "NotInvertible",
    "NotASquareRootDomain",
    "radical_mul",
    "series_inv",
    "series_sqrt",
    "squarefree_split",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 8

ZERO = Fraction(0)
ONE = Fraction(1)


class NotInvertible(ArithmeticError):
    pass


class NotASquareRootDomain(ArithmeticError):
    pass


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    s, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return s, d * n


@lru_cache(maxsize=4096)
def _radicand_product(d1: int, d2: int) -> tuple[int, int]:
    return squarefree_split(d1 * d2)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class RadicalScalar:
    """Exact element of Q[sqrt(2), sqrt(3), ...]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        for d, r in (terms or {}).items():
            r = _frac(r)
            if r == 0:
                continue
            s, dd = squarefree_split(int(d))
            clean[dd] = clean.get(dd, ZERO) + r * s
            if clean[dd] == 0:
                del clean[dd]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "RadicalScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "RadicalScalar":
        if isinstance(x, RadicalScalar):
            return x
        x = _frac(x)
        return cls._raw({1: x} if x else {})

    @classmethod
    def sqrt_of(cls, q) -> "RadicalScalar":
        """Exact square root of a nonnegative rational."""
        q = _frac(q)
        if q < 0:
            raise NotASquareRootDomain(f"sqrt of negative rational {q}")
        if q == 0:
            return cls._raw({})
        # sqrt(p/q) = sqrt(p*q)/q
        s, d = squarefree_split(q.numerator * q.denominator)
        return cls._raw({d: Fraction(s, q.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def rational_part(self) -> Fraction:
        return self._terms.get(1, ZERO)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for d, r in other._terms.items():
            v = out.get(d, ZERO) + r
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return RadicalScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar._raw({d: -r for d, r in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return radical_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "RadicalScalar":
        if len(self._terms) != 1:
            raise NotInvertible(f"cannot invert multi-term radical {self}")
        ((d, r),) = self._terms.items()
        # 1/(r sqrt d) = sqrt(d)/(r d)
        return RadicalScalar._raw({d: 1 / (r * d)})

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __float__(self):
        return float(sum(float(r) * d**0.5 for d, r in self._terms.items()))

    def sign(self) -> int:
        """Sign of the real value (exact for single terms, float otherwise)."""
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            (r,) = self._terms.values()
            return 1 if r > 0 else -1
        v = float(self)
        return (v > 0) - (v < 0)

    def to_json(self) -> list[list[int]]:
        return [[r.numerator, r.denominator, d] for d, r in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "RadicalScalar":
        return cls({int(d): Fraction(int(n), int(q)) for n, q, d in data})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d, r in sorted(self._terms.items()):
            if d == 1:
                parts.append(str(r))
            elif r == 1:
                parts.append(f"sqrt({d})")
            elif r == -1:
                parts.append(f"-sqrt({d})")
            else:
                parts.append(f"{r}*sqrt({d})")
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    def __repr__(self):
        return f"RadicalScalar({self})"


def _coerce_or_none(x):
    if isinstance(x, RadicalScalar):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return RadicalScalar.coerce(x)
    return None


def radical_mul(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    """Exact product, radicands reduced to squarefree form."""
    a, b = RadicalScalar.coerce(a), RadicalScalar.coerce(b)
    out: dict[int, Fraction] = {}
    for d1, r1 in a._terms.items():
        for d2, r2 in b._terms.items():
            s, d = _radicand_product(d1, d2)
            v = out.get(d, ZERO) + r1 * r2 * s
            if v:
                out[d] = v
            else:
                out.pop(d, None)
    return RadicalScalar._raw(out)


# ---------------------------------------------------------------------------
# rational series kernels (tuples of Fractions of equal length)


def _rmul(a: tuple, b: tuple, n: int) -> list:
    out = [ZERO] * n
    for i, x in enumerate(a[:n]):
        if x:
            for k, y in enumerate(b[: n - i]):
                if y:
                    out[i + k] += x * y
    return out


def _rinv(a: tuple, n: int) -> list:
    """Inverse of a rational series with nonzero constant term."""
    a0 = a[0]
    out = [ZERO] * n
    out[0] = 1 / a0
    for k in range(1, n):
        acc = ZERO
        for i in range(1, k + 1):
            if a[i]:
                acc += a[i] * out[k - i]
        out[k] = -acc / a0
    return out


def _rsqrt(a: tuple, n: int) -> list:
    """Square root of a rational series with constant term 1."""
    out = [ZERO] * n
    out[0] = ONE
    for k in range(1, n):
        acc = a[k]
        for i in range(1, k):
            acc -= out[i] * out[k - i]
        out[k] = acc / 2
    return out


Scalarish = Union[int, Fraction, RadicalScalar]


class HSeries:
    """Power series in h with RadicalScalar coefficients, truncated at ``order``."""

    __slots__ = ("order", "_parts", "_hash")

    def __init__(self, coeffs: Iterable[Scalarish] = (), order: int | None = None):
        coeffs = [RadicalScalar.coerce(c) for c in coeffs]
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        parts: dict[int, list] = {}
        for k, c in enumerate(coeffs[:order]):
            for d, r in c._terms.items():
                parts.setdefault(d, [ZERO] * order)[k] = r
        self.order = order
        self._parts = {d: tuple(v) for d, v in parts.items() if any(v)}
        self._hash = None

    @classmethod
    def _raw(cls, parts: dict, order: int) -> "HSeries":
        obj = cls.__new__(cls)
        obj.order = order
        obj._parts = parts
        obj._hash = None
        return obj

    @classmethod
    def from_parts(cls, parts: Mapping[int, Iterable], order: int) -> "HSeries":
        """Build from ``{radicand: rational coefficient list}``."""
        out: dict[int, list] = {}
        for d, cs in parts.items():
            s, dd = squarefree_split(int(d))
            cs = [_frac(c) for c in cs][:order]
            cs += [ZERO] * (order - len(cs))
            acc = out.setdefault(dd, [ZERO] * order)
            for k, c in enumerate(cs):
                acc[k] += c * s
        return cls._raw({d: tuple(v) for d, v in out.items() if any(v)}, order)

    @classmethod
    def rational(cls, coeffs: Iterable, order: int) -> "HSeries":
        return cls.from_parts({1: list(coeffs)}, order)

    @classmethod
    def const(cls, c: Scalarish, order: int) -> "HSeries":
        c = RadicalScalar.coerce(c)
        return cls._raw(
            {d: (r,) + (ZERO,) * (order - 1) for d, r in c._terms.items()}, order
        )

    @classmethod
    def zero(cls, order: int) -> "HSeries":
        return cls._raw({}, order)

    @classmethod
    def one(cls, order: int) -> "HSeries":
        return cls.const(1, order)

    @classmethod
    def h(cls, order: int) -> "HSeries":
        return cls.rational([0, 1], order)

    # -- access --------------------------------------------------------------

    @property
    def parts(self) -> dict[int, tuple]:
        return dict(self._parts)

    def coeff(self, k: int) -> RadicalScalar:
        if not 0 <= k < self.order:
            raise IndexError(k)
        return RadicalScalar._raw({d: v[k] for d, v in self._parts.items() if v[k]})

    @property
    def coeffs(self) -> list[RadicalScalar]:
        return [self.coeff(k) for k in range(self.order)]

    def is_zero(self) -> bool:
        return not self._parts

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._parts)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order`` for zero)."""
        v = self.order
        for cs in self._parts.values():
            for k, c in enumerate(cs):
                if c:
                    v = min(v, k)
                    break
        return v

    def truncate(self, order: int) -> "HSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        if order == self.order:
            return self
        parts = {d: v[:order] for d, v in self._parts.items() if any(v[:order])}
        return HSeries._raw(parts, order)

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "HSeries | None":
        if isinstance(other, HSeries):
            return other
        if isinstance(other, (int, Fraction, RadicalScalar)):
            return HSeries.const(other, self.order)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        out = {d: list(v[:n]) for d, v in self._parts.items()}
        for d, v in other._parts.items():
            acc = out.get(d)
            if acc is None:
                out[d] = list(v[:n])
            else:
                for k in range(n):
                    acc[k] += v[k]
        return HSeries._raw({d: tuple(v) for d, v in out.items() if any(v)}, n)

    __radd__ = __add__

    def __neg__(self):
        return HSeries._raw(
            {d: tuple(-c for c in v) for d, v in self._parts.items()}, self.order
        )

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return HSeries.zero(self.order)
            return HSeries._raw(
                {d: tuple(c * other for c in v) for d, v in self._parts.items()},
                self.order,
            )
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        out: dict[int, list] = {}
        for d1, v1 in self._parts.items():
            for d2, v2 in other._parts.items():
                s, d = _radicand_product(d1, d2)
                prod = _rmul(v1, v2, n)
                acc = out.get(d)
                if acc is None:
                    out[d] = [c * s for c in prod] if s != 1 else prod
                else:
                    for k in range(n):
                        acc[k] += prod[k] * s
        return HSeries._raw({d: tuple(v) for d, v in out.items() if any(v)}, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * series_inv(other)

    def __rtruediv__(self, other):
        return series_inv(self) * other

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = HSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "HSeries":
        """Multiply by ``h^k`` (k >= 0)."""
        n = self.order
        parts = {}
        for d, v in self._parts.items():
            w = (ZERO,) * k + v[: max(n - k, 0)]
            if any(w):
                parts[d] = w
        return HSeries._raw(parts, n)

    def substitute_neg_h(self) -> "HSeries":
        """Formal substitution h -> -h."""
        return HSeries._raw(
            {
                d: tuple(c if k % 2 == 0 else -c for k, c in enumerate(v))
                for d, v in self._parts.items()
            },
            self.order,
        )

    def inv(self) -> "HSeries":
        return series_inv(self)

    def sqrt(self) -> "HSeries":
        return series_sqrt(self)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar)):
            other = HSeries.const(other, self.order)
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and self._parts == other._parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, frozenset(self._parts.items())))
        return self._hash

    def agrees_with(self, other: "HSeries", order: int | None = None) -> bool:
        """Equality up to ``order`` (default: the smaller of the two orders)."""
        n = min(self.order, other.order) if order is None else order
        return self.truncate(n) == other.truncate(n)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "HSeries":
        order = int(data["order"])
        coeffs = [RadicalScalar.from_json(c) for c in data["coeffs"]]
        if len(coeffs) != order:
            raise ValueError("coefficient list length does not match order")
        return cls(coeffs, order)

    def render(self, var: str = "h") -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = str(c)
            if len(c._terms) > 1:
                cs = f"({cs})"
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        terms.append(f"O({var}^{self.order})")
        s = " + ".join(terms).replace("+ -", "- ")
        return s

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"HSeries({self.render()})"


def series_inv(s: HSeries) -> HSeries:
    """Multiplicative inverse; the constant term must be a single radical term."""
    n = s.order
    lead = s.coeff(0)
    if lead.is_zero():
        raise NotInvertible("constant term is zero")
    if not lead.is_single_term():
        raise NotInvertible(f"constant term {lead} is a multi-term radical sum")
    ((d, r),) = lead._terms.items()
    if len(s._parts) == 1:
        # single radical part: sqrt(d) * a(h)  ->  sqrt(d)/d * 1/a(h)
        inv = _rinv(s._parts[d], n)
        return HSeries._raw({d: tuple(c / d for c in inv)}, n)
    # s = lead * (1 + u), 1/s = lead^-1 * sum (-u)^k
    lead_inv = HSeries.const(lead.inverse(), n)
    u = s * lead_inv - 1
    acc = HSeries.one(n)
    term = HSeries.one(n)
    for _ in range(1, n):
        term = -(term * u)
        if term.is_zero():
            break
        acc = acc + term
    return acc * lead_inv


def series_sqrt(s: HSeries) -> HSeries:
    """Square root with positive leading coefficient.

    The constant term must be a positive rational ``p/q``; the result has
    leading coefficient ``sqrt(p q)/q`` stored as a radical.
    """
    n = s.order
    lead = s.coeff(0)
    if lead.is_zero() or not lead.is_rational() or lead.rational_part() <= 0:
        raise NotASquareRootDomain(f"cannot take sqrt with leading coefficient {lead}")
    c0 = lead.rational_part()
    root0 = RadicalScalar.sqrt_of(c0)
    if s.is_rational():
        tail = _rsqrt(tuple(c / c0 for c in s._parts[1]), n)
        return HSeries.rational(tail, n) * root0
    # s = c0 (1 + u); sqrt(1+u) = sum binom(1/2, k) u^k
    u = s * (1 / c0) - 1
    acc = HSeries.one(n)
    term = HSeries.one(n)
    coef = ONE
    for k in range(1, n):
        coef = coef * (Fraction(1, 2) - (k - 1)) / k
        term = term * u
        if term.is_zero():
            break
        acc = acc + term * coef
    return acc * root0
