import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeform.ncalg import M2_CLASSICAL, PLANE, PLANE_CLASSICAL, AlgebraMismatch, NCPoly
from qdeform.ordering import KINDS, ordering_map
from qdeform.qarith import hexp
from qdeform.rep import generators_for
from qdeform.scalar import HSeries
from qdeform.star import StarAlgebra, TransferredAction, classical_action, invariance_report, star
from qdeform.verify import associativity_failures, find_counterexample, random_poly

N = 6
x, y = PLANE_CLASSICAL.gen("x", N), PLANE_CLASSICAL.gen("y", N)


def test_normal_plane_products():
    sa = StarAlgebra.of("plane", "normal", N)
    assert star(sa, x, y) == x * y
    assert star(sa, y, x) == x * y * hexp(-1, N)


def test_sympres_plane_product():
    sa = StarAlgebra.of("plane", "sympres", N)
    frozen = [1, Fr(1, 2), Fr(-1, 8), Fr(-5, 48), Fr(17, 384), Fr(121, 3840)]
    assert sa(x, y) == x * y * HSeries(frozen, N)
    assert sa(x, y) == x * y * (HSeries.const(2, N) / (1 + hexp(-2, N))).sqrt()


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("algebra", ["plane", "m2"])
def test_unit(kind, algebra):
    sa = StarAlgebra.of(algebra, kind, N)
    rng = random.Random(5)
    for _ in range(5):
        p = random_poly(rng, sa.source, 3, N)
        assert sa(sa.source.one(N), p) == p
        assert sa(p, sa.source.one(N)) == p


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("algebra", ["plane", "m2"])
def test_associativity_and_classical_limit(kind, algebra):
    sa = StarAlgebra.of(algebra, kind, N)
    assert associativity_failures(sa, random.Random(11), 10, 3, N) == []
    rng = random.Random(12)
    for _ in range(10):
        p, q = random_poly(rng, sa.source, 3, N), random_poly(rng, sa.source, 3, N)
        assert (sa(p, q) - p * q).truncate(1).is_zero()


def test_star_rejects_deformed_input():
    sa = StarAlgebra.of("plane", "normal", N)
    with pytest.raises(AlgebraMismatch):
        sa(PLANE.gen("x", N), x)


def test_classical_action_examples():
    assert classical_action("E", x) == y
    assert classical_action("H", x * x) == x * x * -2
    assert classical_action("F", y * y) == x * y * 2
    a, d = M2_CLASSICAL.gen("a", N), M2_CLASSICAL.gen("d", N)
    assert classical_action("E1", a) == M2_CLASSICAL.gen("c", N)
    assert classical_action("F2", d) == M2_CLASSICAL.gen("c", N)
    assert classical_action("H2", a * d) == M2_CLASSICAL.zero(N)


def test_classical_action_rejects_deformed():
    with pytest.raises(AlgebraMismatch):
        classical_action("E", PLANE.gen("x", N))


@st.composite
def plane_polys(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(0, 5))
        i = draw(st.integers(0, k))
        terms[(i, k - i)] = HSeries.const(draw(st.integers(-3, 3)), N)
    return NCPoly(PLANE_CLASSICAL, terms, N)


@given(plane_polys(), plane_polys(), st.sampled_from(["E", "F", "H"]))
def test_classical_action_is_a_derivation(p, q, g):
    assert classical_action(g, p * q) == classical_action(g, p) * q + p * classical_action(g, q)


@settings(max_examples=30)
@given(plane_polys(), st.sampled_from(["E", "F", "H"]))
def test_sympres_transfer_is_classical(p, g):
    ta = TransferredAction.of("plane", "sympres", N)
    assert ta(g, p) == classical_action(g, p)


def test_normal_ordering_breaks_transfer_on_xy():
    ta = TransferredAction.of("plane", "normal", N)
    diff = ta("E", x * y) - classical_action("E", x * y)
    assert not diff.is_zero()
    assert diff.truncate(1).is_zero()
    assert not diff.truncate(2).is_zero()


@pytest.mark.parametrize("kind", KINDS)
def test_cartan_transfer_is_trivial(kind):
    ta = TransferredAction.of("m2", kind, N)
    p = M2_CLASSICAL.monomial((2, 1, 0, 1), 3, N)
    for g in ("H1", "H2"):
        assert ta(g, p) == classical_action(g, p)


@pytest.mark.parametrize("kind", KINDS)
def test_transfer_is_classical_at_h0(kind):
    ta = TransferredAction.of("m2", kind, N)
    for e in M2_CLASSICAL.monomials_of_degree(3):
        p = M2_CLASSICAL.monomial(e, 1, N)
        for g in generators_for(M2_CLASSICAL):
            assert (ta(g, p) - classical_action(g, p)).truncate(1).is_zero()


def test_transfer_respects_sl2_relations_under_normal_ordering():
    ta = TransferredAction.of("plane", "normal", N)
    for k in range(5):
        for e in PLANE_CLASSICAL.monomials_of_degree(k):
            p = PLANE_CLASSICAL.monomial(e, 1, N)
            assert ta("E", ta("F", p)) - ta("F", ta("E", p)) == ta("H", p)


def test_counterexample_search():
    cex = find_counterexample("normal", "plane", N)
    assert cex is not None and cex["monomial"] == "x^2"
    assert find_counterexample("sympres", "plane", N, 4) is None


def test_invariance_report():
    rep = invariance_report(N)
    assert rep["passed"]
    normal, sympres = rep["checks"]
    assert normal["invariant"] is False and sympres["invariant"] is True
    assert sympres["value"] == "a*d - b*c"


def test_orderings_give_isomorphic_star_products():
    rng = random.Random(3)
    phi, phip = ordering_map("m2", "normal", N), ordering_map("m2", "sympres", N)
    iso = lambda p: phi.inverse(phip.forward(p))
    for _ in range(10):
        p, q = random_poly(rng, M2_CLASSICAL, 3, N), random_poly(rng, M2_CLASSICAL, 3, N)
        assert iso(StarAlgebra(phip)(p, q)) == StarAlgebra(phi)(iso(p), iso(q))
