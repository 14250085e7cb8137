"""Plain-ASCII expression parser for polynomials in the supported algebras.

Grammar (whitespace-insensitive)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := power (('*'|'/') power)*
    power   := atom ['^' INT]
    atom    := NUMBER | 'h' | 'e' '(' expr ')' | 'sqrt' '(' expr ')'
             | GENERATOR | '(' expr ')'

``h`` is the deformation parameter and ``e(k)`` stands for ``exp(k h)``.
Division and ``sqrt`` are only allowed on scalar subexpressions, and
``e(k)`` needs a rational ``k``.  Products are taken in the algebra, so word
order matters for deformed algebras.
"""

from __future__ import annotations

import re

from .ncalg import Algebra, NCPoly, UnknownGenerator
from .qarith import hexp
from .scalar import DEFAULT_ORDER, HSeries, NotASquareRootDomain, NotInvertible

__all__ = ["ParseError", "parse_poly", "parse_scalar"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    for m in _TOKEN.finditer(text):
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        out.append((kind, m.group(0), m.start()))
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, algebra: Algebra, order: int):
        self.text = text
        self.alg = algebra
        self.order = order
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise self.error(f"expected {op!r}", tok)

    def scalar(self, c) -> NCPoly:
        return self.alg.monomial(self.alg.zero_exps(), c, self.order)

    def as_series(self, p: NCPoly, tok) -> HSeries:
        if any(sum(e) for e in p.terms):
            raise self.error("expected a scalar expression", tok)
        return p.coeff(self.alg.zero_exps())

    def parse(self) -> NCPoly:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPoly:
        acc = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            tok = self.peek()
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
                continue
            s = self.as_series(rhs, tok)
            try:
                acc = acc * s.inv()
            except (NotInvertible, ZeroDivisionError) as exc:
                raise self.error("division by a non-invertible scalar", tok) from exc
        return acc

    def power(self) -> NCPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                raise self.error("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> NCPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.scalar(int(val))
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "name":
            if val in self.alg.generators:
                return self.alg.gen(val, self.order)
            if val == "h":
                return self.scalar(HSeries.h(self.order))
            if val in ("e", "sqrt") and self.peek()[:2] == ("op", "("):
                self.take()
                inner_tok = self.peek()
                inner = self.as_series(self.expr(), inner_tok)
                self.expect(")")
                if val == "sqrt":
                    try:
                        return self.scalar(inner.sqrt())
                    except (NotASquareRootDomain, NotInvertible) as exc:
                        raise self.error("square root needs a positive rational leading term", inner_tok) from exc
                k = inner.coeff(0)
                if inner != HSeries.const(k, inner.order) or not k.is_rational():
                    raise self.error("e(k) needs a rational k", inner_tok)
                return self.scalar(hexp(k.rational_part(), self.order))
            raise self.error(f"unknown symbol {val!r} for algebra {self.alg.name}", tok)
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse_poly(text: str, algebra: Algebra, order: int = DEFAULT_ORDER) -> NCPoly:
    """Parse ``text`` into an element of ``algebra``.

    >>> from qdeform.ncalg import PLANE
    >>> parse_poly("y*x", PLANE, 3).render()
    '(1 - h + 1/2*h^2 + O(h^3))*x*y'
    """
    try:
        return _Parser(text, algebra, order).parse()
    except UnknownGenerator as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_scalar(text: str, algebra: Algebra, order: int = DEFAULT_ORDER) -> HSeries:
    p = parse_poly(text, algebra, order)
    if any(sum(e) for e in p.terms):
        raise ParseError("expected a scalar expression", text, 0)
    return p.coeff(algebra.zero_exps())
