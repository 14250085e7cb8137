from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdeform.scalar import (
    HSeries,
    NotASquareRootDomain,
    NotInvertible,
    RadicalScalar,
    series_sqrt,
    squarefree_split,
)

N = 6
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
radicands = st.sampled_from([1, 2, 3, 5, 6])


@st.composite
def scalars(draw):
    return RadicalScalar({d: draw(rationals) for d in draw(st.lists(radicands, max_size=3))})


@st.composite
def series(draw, unit=False):
    coeffs = [draw(scalars()) for _ in range(N)]
    if unit:
        coeffs[0] = RadicalScalar({draw(radicands): draw(rationals.filter(bool))})
    return HSeries(coeffs, N)


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(50) == (5, 2)
    assert squarefree_split(30) == (1, 30)


def test_radical_products_reduce():
    r2, r3 = RadicalScalar.sqrt_of(2), RadicalScalar.sqrt_of(3)
    assert r2 * r2 == RadicalScalar.coerce(2)
    assert r2 * r3 == RadicalScalar.sqrt_of(6)
    assert RadicalScalar.sqrt_of(Fraction(1, 2)) == r2 * Fraction(1, 2)
    assert str(RadicalScalar.sqrt_of(Fraction(1, 2))) == "1/2*sqrt(2)"


def test_radical_sign_and_inverse():
    x = RadicalScalar({1: 1, 2: -1})  # 1 - sqrt 2 < 0
    assert x.sign() == -1
    assert RadicalScalar.sqrt_of(8).inverse() == RadicalScalar.sqrt_of(2) * Fraction(1, 4)
    with pytest.raises(NotInvertible):
        x.inverse()


def test_sqrt_of_negative_rejected():
    with pytest.raises(NotASquareRootDomain):
        RadicalScalar.sqrt_of(-2)


@given(scalars())
def test_scalar_json_roundtrip(x):
    assert RadicalScalar.from_json(x.to_json()) == x


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == HSeries.zero(N)


@given(series(unit=True))
def test_inverse(a):
    assert a * a.inv() == HSeries.one(N)


@given(st.lists(rationals, min_size=N, max_size=N), st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=50))
def test_sqrt_squares_back(tail, lead):
    s = HSeries([lead] + tail[1:], N)
    r = series_sqrt(s)
    assert r * r == s


def test_sqrt_needs_rational_positive_lead():
    with pytest.raises(NotASquareRootDomain):
        series_sqrt(HSeries([-1, 1], 3))


@given(series())
def test_json_roundtrip(a):
    assert HSeries.from_json(a.to_json()) == a


@given(series(), series())
def test_truncation_is_a_ring_map(a, b):
    assert (a * b).truncate(3) == a.truncate(3) * b.truncate(3)


def test_order_of_result_is_min():
    assert (HSeries.one(3) + HSeries.one(5)).order == 3


def test_shift_and_substitution():
    h = HSeries.h(4)
    assert h * h == HSeries([0, 0, 1], 4)
    e = HSeries([1, 1, Fraction(1, 2), Fraction(1, 6)], 4)
    assert e.substitute_neg_h() * e == HSeries.one(4)


def test_render():
    assert HSeries([1, -1, Fraction(1, 2)], 3).render() == "1 - h + 1/2*h^2 + O(h^3)"
    assert HSeries.zero(2).render() == "O(h^2)"
