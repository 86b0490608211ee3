from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from quasimap import hilbert, quadric
from quasimap.groebner import reduce
from quasimap.polyring import mono_divides
from quasimap.quadric import HYPERBOLIC, ORTHONORMAL, QuasimapSpec

specs = st.builds(QuasimapSpec, st.integers(2, 8), st.integers(0, 2), st.integers(0, 2), st.sampled_from([HYPERBOLIC, ORTHONORMAL]))


def test_relation_examples():
    (r,) = quadric.relations(QuasimapSpec(3, 0, 0, ORTHONORMAL))
    assert str(r) == "lam3[0]^2 + lam2[0]^2 + lam1[0]^2"
    A = quadric.algebra(QuasimapSpec(4, 0, 1))
    assert A.relation_indices == [0, 1, 2]
    r1 = A.relation_map[1]
    assert r1 == A.ring.parse("f1[0]*g1[1] + f1[1]*g1[0] + f2[0]*g2[1] + f2[1]*g2[0]")
    (r0,) = quadric.relations(QuasimapSpec(3, 0, 0))
    assert r0 == r0.ring.parse("f1[0]*g1[0] + h[0]^2")


@given(specs)
def test_relation_shape(spec):
    A = quadric.algebra(spec)
    assert len(A.table) == spec.n * (spec.N1 + spec.N2 + 1)
    assert A.relation_indices == list(range(-2 * spec.N1, 2 * spec.N2 + 1))
    for l, r in A.relation_map.items():
        assert r.is_homogeneous() and r.degree() == 2
        assert {A.table.weight_of(m) for m in r.monomials()} == {l}


@given(specs.filter(lambda s: s.coords == HYPERBOLIC))
def test_snake_leading_monomials(spec):
    lead = [r.lm() for r in quadric.relations(spec)]
    assert lead == quadric.expected_leading_monomials(spec)


def test_leading_monomial_examples():
    A = quadric.algebra(QuasimapSpec(6, 0, 1))
    r = A.relation_map
    assert A.ring.monomial_str(r[0].lm()) == "g1[0]*f1[0]"
    assert A.ring.monomial_str(r[1].lm()) == "g3[0]*f3[1]"
    B = quadric.algebra(QuasimapSpec(5, 0, 0))
    assert B.ring.monomial_str(B.relation_map[0].lm()) == "h[0]^2"
    C = quadric.algebra(QuasimapSpec(4, 0, 1))
    assert C.ring.monomial_str(C.relation_map[1].lm()) == "g2[0]*f2[1]"
    with pytest.raises(ValueError):
        quadric.snake_order(QuasimapSpec(4, 0, 0, ORTHONORMAL))


def test_literal_lex_reading_disagrees():
    spec = QuasimapSpec(6, 0, 0)
    A = quadric.algebra(spec)
    ring = A.ring.with_order(quadric.lex_snake_order(spec))
    lead = A.relations[0].reorder(ring).lm()
    assert lead != quadric.expected_leading_monomials(spec)[0]


def test_chain_monomial_examples():
    even = quadric.diagram_poset(QuasimapSpec(6, 0, 0))
    t = even.table
    m = [0] * len(t)
    m[t.index("g", 1, 0)] = m[t.index("f", 1, 0)] = 1
    assert not quadric.is_chain_monomial(tuple(m), even)
    m = [0] * len(t)
    m[t.index("f", 2, 0)] = 1
    m[t.index("g", 2, 0)] = 2
    assert quadric.is_chain_monomial(tuple(m), even)
    odd = quadric.diagram_poset(QuasimapSpec(5, 0, 0))
    m = [0] * len(odd.table)
    m[odd.table.index("h", 0, 0)] = 2
    assert not quadric.is_chain_monomial(tuple(m), odd)
    with pytest.raises(ValueError):
        quadric.diagram_poset(QuasimapSpec(2, 0, 1))


@pytest.mark.parametrize("n,N1,N2", [(3, 0, 1), (4, 0, 1), (5, 1, 0), (6, 0, 1), (7, 0, 0)])
def test_chain_complement_is_staircase(n, N1, N2):
    spec = QuasimapSpec(n, N1, N2)
    poset = quadric.diagram_poset(spec)
    lead = quadric.expected_leading_monomials(spec)
    k = len(poset.table)
    D = 6 if k <= 8 else 4
    for d in range(D + 1):
        for combo in combinations_with_replacement(range(k), d):
            e = [0] * k
            for i in combo:
                e[i] += 1
            m = tuple(e)
            divisible = any(mono_divides(L, m) for L in lead)
            assert quadric.is_chain_monomial(m, poset) == (not divisible)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_posets_are_antisymmetric(n):
    p = quadric.diagram_poset(QuasimapSpec(n, 1, 1))
    assert p.is_antisymmetric()
    ext = p.linear_extension()
    pos = {x: i for i, x in enumerate(ext)}
    assert all(pos[a] < pos[b] for a, b in p.covers)


def test_shift_involution():
    spec = QuasimapSpec(3, 0, 1)
    sub = quadric.shift_involution(spec)
    src, dst = quadric.algebra(spec), quadric.algebra(spec.flipped())
    image = sub.apply(src.relation_map[2], dst.ring)
    assert image == dst.relation_map[-2]
    assert sub.compose(quadric.shift_involution(spec.flipped())).is_identity()
    sym = QuasimapSpec(4, 1, 1)
    s2 = quadric.shift_involution(sym)
    A = quadric.algebra(sym)
    for l, r in A.relation_map.items():
        assert s2.apply(r, A.ring) == A.relation_map[-l]


@given(specs)
def test_shift_involution_maps_ideal(spec):
    sub = quadric.shift_involution(spec)
    dst = quadric.algebra(spec.flipped())
    gens = dst.relations
    for r in quadric.relations(spec):
        assert not reduce(sub.apply(r, dst.ring), hilbert.groebner_basis(spec.flipped(), truncate=2))
    assert gens


def test_spec_text_roundtrip_and_validation():
    s = QuasimapSpec(5, 1, 2, ORTHONORMAL)
    assert QuasimapSpec.parse(str(s)) == s
    for bad in [(1, 0, 0), (3, -1, 0), (3, 0, 0, "polar")]:
        with pytest.raises(ValueError):
            QuasimapSpec(*bad)
