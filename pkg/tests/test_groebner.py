import random

import pytest
from hypothesis import given, settings, strategies as st

from quasimap import groebner, quadric
from quasimap.acceptance import random_coprime_pair
from quasimap.groebner import BudgetExceeded, buchberger, is_groebner, reduce, s_polynomial
from quasimap.polyring import LEX, MonomialOrder, Polynomial, Ring
from quasimap.quadric import QuasimapSpec

XY = Ring(("x", "y"), MonomialOrder((0, 1), LEX))
F1 = XY.parse("x^3 - 2*x*y")
F2 = XY.parse("x^2*y - 2*y^2 + x")
R3 = Ring(("a", "b", "c"))


def test_s_polynomial_examples():
    assert s_polynomial(F1, F2) == XY.parse("x^2")
    assert not s_polynomial(F1, F1)
    f, g = XY.parse("x^2 + y"), XY.parse("y^2 + x")
    s = s_polynomial(f, g)
    assert XY.key(s.lm()) < XY.key((2, 2))
    with pytest.raises(ValueError):
        s_polynomial(F1, XY.zero())


def test_reduce_examples():
    assert reduce(XY.parse("x^2"), [F1, F2]) == XY.parse("x^2")
    assert not reduce(F1, [F1])
    assert not reduce(XY.parse("x^2"), buchberger([F1, F2]))


def test_is_groebner_examples():
    ok, cert = is_groebner([F1, F2])
    assert not ok and cert.normal_form == XY.parse("x^2")
    assert is_groebner([F1]) == (True, None)
    ok, cert = is_groebner(quadric.relations(QuasimapSpec(6, 1, 1)))
    assert ok and cert is None


def test_buchberger_examples():
    quad = quadric.relations(QuasimapSpec(4, 0, 0, "orthonormal"))
    gb = buchberger(quad)
    assert list(gb) == [quad[0].monic()]
    rels = quadric.relations(QuasimapSpec(6, 0, 0))
    assert len(buchberger(rels)) == len(rels)
    n2 = quadric.relations(QuasimapSpec(2, 0, 1))
    assert len(buchberger(n2)) > len(n2)


def test_budget(monkeypatch):
    n2 = quadric.relations(QuasimapSpec(2, 0, 3))
    with pytest.raises(BudgetExceeded):
        buchberger(n2, max_pairs=2)
    monkeypatch.setenv(groebner.PAIR_BUDGET_ENV, "1")
    with pytest.raises(BudgetExceeded):
        buchberger(n2)
    monkeypatch.delenv(groebner.PAIR_BUDGET_ENV)
    with pytest.raises(BudgetExceeded):
        buchberger(n2, max_degree=2)


def polys(ring, max_terms=4):
    return st.dictionaries(
        st.lists(st.integers(0, 2), min_size=ring.nvars, max_size=ring.nvars).map(tuple),
        st.integers(-3, 3).filter(bool),
        min_size=1,
        max_size=max_terms,
    ).map(lambda d: Polynomial.from_dict(ring, d))


IDEAL = buchberger([R3.parse("a^2 - b*c"), R3.parse("a*b - c^2 + a")])


@given(polys(R3), st.lists(polys(R3), min_size=1, max_size=3))
def test_cofactors_reconstruct(f, G):
    r, qs = reduce(f, G, cofactors=True)
    total = r
    for q, g in zip(qs, G):
        total = total + q * g
    assert total == f


@given(polys(R3))
def test_reduce_idempotent(f):
    r = reduce(f, IDEAL)
    assert reduce(r, IDEAL) == r


@settings(max_examples=40)
@given(polys(R3, 3), polys(R3, 3))
def test_normal_forms_are_multiplicative(f, g):
    lhs = reduce(f * g, IDEAL)
    rhs = reduce(reduce(f, IDEAL) * reduce(g, IDEAL), IDEAL)
    assert lhs == rhs


def test_coprime_skip_on_random_pairs():
    rng = random.Random(5)
    ring = Ring(("a", "b", "c", "d"))
    for _ in range(300):
        f, g = random_coprime_pair(rng, ring)
        assert not reduce(s_polynomial(f, g), [f, g])


@settings(max_examples=25)
@given(st.randoms(use_true_random=False))
def test_reduced_basis_unique_under_shuffle(rnd):
    seed = quadric.relations(QuasimapSpec(2, 0, 2))
    other = list(seed)
    rnd.shuffle(other)
    a, b = buchberger(seed), buchberger(other)
    assert list(a) == list(b)
    assert is_groebner(a)[0]


def test_truncated_basis_matches_full_in_low_degree():
    seed = quadric.relations(QuasimapSpec(2, 0, 2))
    full = buchberger(seed)
    low = buchberger(seed, truncate=3)
    assert [g for g in full if g.degree() <= 3] == [g for g in low if g.degree() <= 3]
    assert low.stats["truncated_at"] == 3
