"""q-deformed arithmetic in the h-adic picture, q = e^h.

All functions return rational :class:`~qdeform.scalar.HSeries`.  Results are
memoized per ``(argument, order)`` with :func:`functools.lru_cache`, which is
safe for concurrent readers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

from .scalar import DEFAULT_ORDER, HSeries

__all__ = [
    "HalfInt",
    "DomainError",
    "as_half",
    "hexp",
    "qnum",
    "qfactorial",
    "qbinom",
    "expsum",
]


class DomainError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """Exact element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        text = text.strip()
        try:
            v = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a half-integer: {text!r}") from exc
        return cls.of(v)

    @classmethod
    def of(cls, x: "HalfLike") -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        v = Fraction(x)
        if (2 * v).denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(2 * v))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __eq__(self, other):
        try:
            return self.twice == HalfInt.of(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return self.twice / 2

    def __str__(self):
        return str(self.value)


HalfLike = Union[HalfInt, int, Fraction]


def as_half(x: HalfLike) -> Fraction:
    """Validate a half-integer and return it as a Fraction."""
    return HalfInt.of(x).value


@lru_cache(maxsize=None)
def _hexp(a: Fraction, order: int) -> HSeries:
    coeffs = [Fraction(1)]
    for n in range(1, order):
        coeffs.append(coeffs[-1] * a / n)
    return HSeries.rational(coeffs, order)


def hexp(a: HalfLike | Fraction, order: int = DEFAULT_ORDER) -> HSeries:
    """The series ``e^{a h}``."""
    return _hexp(Fraction(a), order)


def expsum(terms: dict, order: int = DEFAULT_ORDER) -> HSeries:
    """``sum_k c_k e^{k h}`` for a mapping ``{k: c_k}``."""
    out = HSeries.zero(order)
    for k, c in terms.items():
        out = out + hexp(k, order) * Fraction(c)
    return out


@lru_cache(maxsize=None)
def _sinhc(a: Fraction, order: int) -> HSeries:
    # sinh(a h)/h = sum_k a^(2k+1) h^(2k) / (2k+1)!
    coeffs = [Fraction(0)] * order
    for k in range(0, order, 2):
        coeffs[k] = a ** (k + 1) / math.factorial(k + 1)
    return HSeries.rational(coeffs, order)


@lru_cache(maxsize=None)
def _qnum(a: Fraction, order: int) -> HSeries:
    return _sinhc(a, order) / _sinhc(Fraction(1), order)


def qnum(a: HalfLike | Fraction, order: int = DEFAULT_ORDER) -> HSeries:
    """Quantum number ``[a] = (e^{ha} - e^{-ha}) / (e^h - e^{-h})``."""
    return _qnum(Fraction(a), order)


@lru_cache(maxsize=None)
def qfactorial(n: int, order: int = DEFAULT_ORDER) -> HSeries:
    """``[n]! = [1][2]...[n]``."""
    if n < 0:
        raise DomainError(f"negative factorial argument {n}")
    if n == 0:
        return HSeries.one(order)
    return qfactorial(n - 1, order) * qnum(n, order)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, order: int = DEFAULT_ORDER) -> HSeries:
    """``e^{h k(k-n)} [n]! / ([n-k]! [k]!)``."""
    if not 0 <= k <= n:
        raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    return (
        hexp(k * (k - n), order)
        * qfactorial(n, order)
        / (qfactorial(n - k, order) * qfactorial(k, order))
    )
