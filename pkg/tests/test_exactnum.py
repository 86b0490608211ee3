import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quasimap.exactnum import (
    ExactMatrix,
    bareiss_rank,
    gaussian_rank,
    nullity,
    rank,
    rank_mod_p,
    sparse_integer_rank,
    transpose,
)


def small_matrices(max_dim=6, lo=-3, hi=3):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(ExactMatrix.dense)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_identity_and_zero():
    assert rank(ExactMatrix.identity(2)) == 2
    assert rank(ExactMatrix.zeros(3, 4)) == 0
    assert rank(ExactMatrix.zeros(0, 0)) == 0


def test_transpose_examples():
    assert transpose(ExactMatrix.dense([[5]])) == ExactMatrix.dense([[5]])
    m = ExactMatrix.dense([[1, 2, 3], [4, 5, 6]])
    t = transpose(m)
    assert (t.rows, t.cols) == (3, 2)
    assert all(t[j, i] == m[i, j] for i in range(2) for j in range(3))


def test_bareiss_matches_gaussian_on_1000_random_matrices():
    rng = random.Random(7)
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = ExactMatrix.dense([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
        g = gaussian_rank(m)
        assert bareiss_rank(m) == g
        assert sparse_integer_rank(m) == g


@given(small_matrices())
def test_rank_transpose_invariant(m):
    assert rank(m) == rank(transpose(m))


@given(small_matrices(), st.randoms(use_true_random=False), rationals.filter(bool))
def test_rank_invariant_under_permutation_and_scaling(m, rnd, c):
    rows = list(range(m.rows))
    cols = list(range(m.cols))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    p = m.permute(rows, cols).scale_row(0, c)
    assert rank(p) == rank(m)


@given(small_matrices(5, -9, 9))
def test_modular_rank_is_lower_bound(m):
    assert rank_mod_p(m) <= rank(m)
    assert rank_mod_p(m, 3) <= rank(m)


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=3, max_size=3))
def test_rational_entries(rows):
    m = ExactMatrix.dense(rows)
    assert bareiss_rank(m) == gaussian_rank(m) == sparse_integer_rank(m)
    assert nullity(m) == m.cols - rank(m)


def test_transpose_involution_random_4x4():
    rng = random.Random(3)
    m = ExactMatrix.dense([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)] for _ in range(4)])
    assert transpose(transpose(m)) == m


def test_matmul_and_triplets():
    a = ExactMatrix.from_triplets(2, 2, [(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 1, -3)])
    assert a.to_lists() == [[1, 2], [0, 0]]
    b = ExactMatrix.dense([[1], [1]])
    assert (a @ b).to_lists() == [[3], [0]]
    with pytest.raises(ValueError):
        b @ b
    with pytest.raises(IndexError):
        ExactMatrix.from_triplets(1, 1, [(0, 1, 1)])
    with pytest.raises(ValueError):
        ExactMatrix.dense([[1, 2], [3]])


def test_large_sparse_path_agrees_with_bareiss():
    rng = random.Random(11)
    rows = []
    for i in range(220):
        row = {}
        for _ in range(3):
            row[rng.randrange(200)] = rng.choice([-2, -1, 1, 2])
        rows.append(row)
    m = ExactMatrix.from_rows(rows, 200)
    assert m.rows * m.cols > 40_000
    assert rank(m) == bareiss_rank(m)


def test_brst_bottom_block_has_rank_one():
    from quasimap import brst
    from quasimap.quadric import QuasimapSpec

    cx = brst.build_complex(QuasimapSpec(3, 0, 0, "orthonormal"), 2)
    assert rank(cx.differentials[(2, 1, 0)]) == 1
