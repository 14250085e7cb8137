"""Exact Gauss-Jordan inversion over truncated h-series.

A pivot must have a nonzero constant term made of a single radical term, so
that it can be inverted with :func:`~qdeform.scalar.series_inv`.  Rational
pivots are preferred when there is a choice.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .scalar import HSeries, NotInvertible

__all__ = ["invert", "connected_blocks"]


def _pivot_rank(v: HSeries):
    c = v.coeff(0)
    if c.is_zero() or not c.is_single_term():
        return None
    return 0 if c.is_rational() else 1


def invert(matrix: Sequence[Sequence[HSeries]], order: int) -> list[list[HSeries]]:
    n = len(matrix)
    zero = HSeries.zero(order)
    one = HSeries.one(order)
    a = [[v.truncate(order) for v in row] + [one if i == k else zero for k in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        best = None
        for r in range(col, n):
            rank = _pivot_rank(a[r][col])
            if rank is not None and (best is None or rank < best[0]):
                best = (rank, r)
                if rank == 0:
                    break
        if best is None:
            raise NotInvertible(f"no admissible pivot in column {col}")
        r = best[1]
        a[col], a[r] = a[r], a[col]
        piv_inv = a[col][col].inv()
        a[col] = [v * piv_inv if not v.is_zero() else v for v in a[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f.is_zero():
                continue
            prow = a[col]
            a[r] = [v - f * p if not p.is_zero() else v for v, p in zip(a[r], prow)]
    return [row[n:] for row in a]


def connected_blocks(edges: dict[Hashable, set]) -> list[list]:
    """Connected components of an undirected graph given as adjacency sets."""
    seen: set = set()
    blocks = []
    for start in edges:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in edges.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        blocks.append(sorted(comp))
    return blocks
