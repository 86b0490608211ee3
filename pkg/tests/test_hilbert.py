from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from quasimap import hilbert, quadric
from quasimap.hilbert import (
    BigradedSeries,
    WindowTooSmall,
    chain_series,
    closed_form,
    numerator_from_series,
    palindrome_check,
    pbw_dual_dims,
    rational_q1,
    staircase_series,
)
from quasimap.quadric import ORTHONORMAL, QuasimapSpec


def quadric_dims(n, D):
    return rational_q1([1, 0, -1], n, D)


@pytest.mark.parametrize("n", range(3, 9))
def test_single_square_staircase(n):
    lead = [tuple([0] * (n - 1) + [2])]
    s = staircase_series(lead, [0] * n, 10)
    assert s.at_q1() == quadric_dims(n, 10)
    assert s.at_q1()[:3] == [1, n, n * (n + 1) // 2 - 1]


def test_empty_leading_set_is_free():
    s = staircase_series([], [0, 0, 0], 6)
    assert s.at_q1() == [comb(d + 2, 2) for d in range(7)]


def test_n2_bottom_window():
    assert hilbert.series(QuasimapSpec(2, 0, 0), 8).at_q1() == [1] + [2] * 8


def test_chain_interval_examples():
    spec = QuasimapSpec(6, 0, 0)
    p = quadric.diagram_poset(spec)
    t = p.table
    iv = p.interval(t.index("f", 3, 0), t.index("f", 2, 0))
    assert chain_series(p, iv, 8).at_q1() == [d + 1 for d in range(9)]
    assert chain_series(p, [], 5).at_q1() == [1, 0, 0, 0, 0, 0]
    for n in (3, 5, 7):
        assert hilbert.spec_chain_series(QuasimapSpec(n, 0, 0), 8).at_q1() == quadric_dims(n, 8)


def test_chain_series_rejects_n2():
    with pytest.raises(ValueError):
        hilbert.spec_chain_series(QuasimapSpec(2, 0, 1), 4)


def test_closed_form_examples():
    assert closed_form(QuasimapSpec(3, 0, 0), 4).at_q1() == [1, 3, 5, 7, 9]
    want = [sum(comb(3, j) * (-1) ** j * comb(10 + d - 2 * j - 1, d - 2 * j) for j in range(4) if 2 * j <= d)
            for d in range(9)]
    assert closed_form(QuasimapSpec(5, 0, 1), 8).at_q1() == want
    assert closed_form(QuasimapSpec(4, 1, 1), 3)[(0, 0)] == 1
    with pytest.raises(ValueError):
        closed_form(QuasimapSpec(2, 0, 0), 3)


small = st.builds(QuasimapSpec, st.integers(3, 6), st.integers(0, 1), st.integers(0, 1))


@settings(max_examples=20)
@given(small)
def test_three_routes_agree(spec):
    a = hilbert.series(spec, 6)
    assert a == hilbert.spec_chain_series(spec, 6) == closed_form(spec, 6)
    assert a.is_nonnegative()


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("N1,N2", [(0, 0), (0, 1), (1, 1)])
def test_orthonormal_equals_hyperbolic(n, N1, N2):
    a = hilbert.series(QuasimapSpec(n, N1, N2, ORTHONORMAL), 5, truncate=5)
    b = hilbert.series(QuasimapSpec(n, N1, N2), 5)
    assert a == b


@given(small, st.integers(0, 5))
def test_q1_specialization(spec, D):
    s = closed_form(spec, D)
    assert s.at_q1() == rational_q1([1], 1, 0)[:0] + hilbert.SeriesExpr(
        tuple((0, 2) for _ in range(2 * (spec.N1 + spec.N2) + 1)),
        ((0, 1, spec.n * (spec.N1 + spec.N2 + 1)),),
    ).expand(D).at_q1()


def test_series_window_helpers():
    s = BigradedSeries({(0, 0): 1, (1, 2): 3, (5, 0): 4}, (0, 3))
    assert s[(5, 0)] == 0
    assert s.at_q1() == [1, 3, 0, 0]
    assert BigradedSeries.from_rows(s.to_rows(), (0, 3)) == s
    other = BigradedSeries({(0, 0): 1, (1, 2): 2}, (0, 1))
    assert not s.agrees_with(other)
    assert s.mismatches(other) == [((1, 2), 3, 2)]
    assert s.q1_text() == "1 + 3*t^1"


def test_pbw_examples():
    r = pbw_dual_dims(hilbert.series(QuasimapSpec(5, 0, 0), 6), 6)
    assert r.dims == [5, 1, 0, 0, 0, 0] and r.consistent
    r = pbw_dual_dims(hilbert.series(QuasimapSpec(3, 0, 1), 8), 8)
    assert r.dims[:2] == [6, 3] and not any(r.dims[2:])
    r = pbw_dual_dims(hilbert.series(QuasimapSpec(2, 0, 3), 12), 12)
    assert r.first_negative is not None and r.first_negative < 12
    assert "PBW inconsistency" in str(r)
    with pytest.raises(WindowTooSmall):
        pbw_dual_dims([1, 2], 5)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_pbw_roundtrip(dims):
    # build A(t) from chosen dims and recover them
    D = 8
    L = dims + [0] * (D - len(dims))
    inv = [1] + [0] * D
    for k, e in enumerate(L, start=1):
        inv = hilbert._series_mul(inv, hilbert._power_factor(k, 1 if k % 2 else -1, e if k % 2 else -e, D), D)
    A_alt = hilbert._series_inverse(inv, D)
    A = [c * (-1) ** i for i, c in enumerate(A_alt)]
    assert pbw_dual_dims(A, D).dims == L


def _one_minus_t2(k):
    out = [0] * (2 * k + 1)
    for i in range(k + 1):
        out[2 * i] = (-1) ** i * comb(k, i)
    return out


def test_palindrome_examples():
    for k in (0, 2, 4):
        assert palindrome_check(_one_minus_t2(k))
    # odd powers are anti-palindromic, which a literal reversal test rejects
    for k in (1, 3, 5):
        c = _one_minus_t2(k)
        assert not palindrome_check(c) and c[::-1] == [-v for v in c]
    num = numerator_from_series(hilbert.series(QuasimapSpec(2, 0, 1), 12), 2)
    assert num == [1, 2, 0, -2, 1] and not palindrome_check(num)
    assert palindrome_check([1])
    with pytest.raises(WindowTooSmall):
        numerator_from_series(hilbert.series(QuasimapSpec(2, 0, 3), 10), 4)


@given(st.integers(-5, 5).filter(bool), st.lists(st.integers(-5, 5), max_size=5))
def test_palindrome_of_symmetrized(x0, rest):
    xs = [x0] + rest
    assert palindrome_check(xs + xs[::-1])
    assert palindrome_check(xs + [0] * 3) == palindrome_check(xs)


def test_closed_form_numerator():
    for n, N1, N2 in [(3, 0, 1), (4, 1, 1), (5, 0, 2)]:
        K = n * (N1 + N2 + 1)
        num = numerator_from_series(closed_form(QuasimapSpec(n, N1, N2), 3 * K), K)
        assert num == _one_minus_t2(2 * (N1 + N2) + 1)


def test_quotient_algebra_model():
    A = quadric.algebra(QuasimapSpec(3, 0, 1))
    Q = hilbert.QuotientAlgebra(A, 4)
    assert Q.series() == closed_form(QuasimapSpec(3, 0, 1), 4)
    h0 = A.table.index("h", 0, 0)
    m = [0] * len(A.table)
    m[h0] = 1
    nf = Q.multiply_variable(h0, tuple(m))
    # h[0]^2 = -f1[0]*g1[0] modulo the relation
    assert len(nf) == 1 and list(nf.values()) == [-1]
