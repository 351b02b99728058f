"""The brute-force graded oracle and bounded word-equality search."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from nilcox.linalg import rank_mod_p, rank_rational
from nilcox.nca import algebra, dimension, hilbert
from nilcox.oracle import (
    STILL_GROWING, ResourceBudgetError, WordEquality, _nonzero_words, _relation_rows,
    graded_dimension, graded_dimensions, graded_report, total_dimension_if_finite, words_equal,
)
from nilcox.presentations import INF, GeneralizedCoxeterMatrix, type_a_matrix

EQ, NE, INC = WordEquality.EQUAL, WordEquality.UNEQUAL, WordEquality.INCONCLUSIVE


def ctx(n, d):
    return type_a_matrix(n, [2] * (n - 1) + [d])


def test_degree_zero_is_one():
    for M in (ctx(2, 3), type_a_matrix(2, [3, 3]), GeneralizedCoxeterMatrix.from_data([2, 2], {(1, 2): INF})):
        assert graded_dimension(M, 0) == 1


def test_top_degree_of_nc_a_2_3():
    assert graded_dimension(ctx(2, 3), 4) == 1
    assert graded_dimension(ctx(2, 3), 5) == 0


def test_a2_with_two_heavy_nodes_never_vanishes():
    dims = graded_dimensions(type_a_matrix(2, [3, 3]), 10)
    assert dims == [1, 2, 4, 5, 6, 6, 5, 4, 4, 4, 4]


def test_total_dimension_examples():
    assert total_dimension_if_finite(ctx(2, 3), 6) == 10
    assert total_dimension_if_finite(type_a_matrix(3), 8) == 24
    assert total_dimension_if_finite(type_a_matrix(2, [3, 3]), 8) == STILL_GROWING


@pytest.mark.parametrize("n,d", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
def test_graded_dims_match_hilbert(n, d):
    rep = graded_report(ctx(n, d), len(hilbert(n, d)) + 1)
    assert rep.graded_dims == hilbert(n, d) + [0]
    assert rep.total == dimension(n, d)
    assert not rep.truncated


# frozen oracle outputs for presentations outside NC_A(n, d)
FROZEN = [
    (GeneralizedCoxeterMatrix.from_data([4, 4, 4], {(1, 2): 3, (2, 3): 3, (1, 3): 3}), 10,
     [1, 3, 9, 24, 60, 147, 357, 858, 2058, 4926, 11784]),
    (GeneralizedCoxeterMatrix.from_data([2, 2, 2], {(1, 2): 4, (2, 3): 4}), 10,
     [1, 3, 5, 8, 11, 13, 16, 19, 21, 24, 27]),
    (GeneralizedCoxeterMatrix.from_data([2, 2, 2], {(1, 2): 3, (2, 3): 3, (1, 3): 3}), 8,
     [1, 3, 6, 9, 12, 15, 18, 21, 24]),
    (GeneralizedCoxeterMatrix.from_data([2, 2], {(1, 2): INF}), 8, [1, 2, 2, 2, 2, 2, 2, 2, 2]),
    (GeneralizedCoxeterMatrix.from_data([2, 3], {(1, 2): 4}), 8, [1, 2, 3, 4, 4, 4, 3, 3, 3]),
    (GeneralizedCoxeterMatrix.from_data([2, 3, 2], {(1, 2): 3, (2, 3): 3}), 8, [1, 3, 6, 10, 11, 9, 7, 6, 7]),
]


@pytest.mark.parametrize("M,D,dims", FROZEN)
def test_frozen_graded_dims(M, D, dims):
    rep = graded_report(M, D)
    assert rep.graded_dims == dims
    assert rep.truncated
    assert rep.total == STILL_GROWING


def test_graded_dims_bounded_by_word_count():
    M = FROZEN[0][0]
    for D, v in enumerate(FROZEN[0][2]):
        assert 0 <= v <= 3 ** D


def test_stop_at_zero_flag():
    rep = graded_report(ctx(2, 2), 6, stop_at_zero=False)
    assert rep.graded_dims == [1, 2, 2, 1, 0, 0, 0]


def test_budget_is_enforced():
    M = type_a_matrix(4)
    with pytest.raises(ResourceBudgetError):
        graded_dimension(M, 12)
    with pytest.raises(ResourceBudgetError):
        graded_dimension(ctx(2, 3), 4, word_budget=10)
    with pytest.raises(ValueError):
        graded_dimension(M, -1)


@pytest.mark.parametrize("M,D", [(ctx(3, 3), 5), (type_a_matrix(2, [3, 3]), 7), (FROZEN[0][0], 6)])
def test_prime_and_rational_ranks_agree(M, D):
    codes, digits = _nonzero_words(M.size, M.orders, D)
    A = _relation_rows(M, D, codes, digits)
    assert rank_mod_p(A, 32003) == rank_rational(A)


# -- word equality ------------------------------------------------------------------

def test_words_equal_examples():
    A2 = type_a_matrix(2)
    assert words_equal(A2, [1, 2, 1], [2, 1, 2]) == EQ
    assert words_equal(ctx(2, 3), [2, 1, 2, 1], None) == EQ
    assert words_equal(A2, [1, 2], [2, 1]) == NE


def test_words_equal_zero_and_inconclusive():
    assert words_equal(ctx(2, 3), None, None) == EQ
    assert words_equal(ctx(2, 3), [1, 2], None) == NE
    M = type_a_matrix(4)
    word = [1, 2, 1, 3, 2, 1, 4, 3, 2, 1]
    assert words_equal(M, word, word[::-1], search_bound=5) == INC
    with pytest.raises(ValueError):
        words_equal(M, [5], [1])


@pytest.mark.parametrize("n,d", [(2, 3), (3, 3), (3, 4)])
def test_expand_is_equal_to_any_word_with_the_same_normal_form(n, d):
    A, M = algebra(n, d), ctx(n, d)
    rng = random.Random(n * 10 + d)
    for _ in range(150):
        letters = [rng.randint(1, n) for _ in range(rng.randint(0, 7))]
        x = A.normal_form(letters)
        if x.is_zero():
            assert words_equal(M, letters, None) == EQ
        else:
            (b,) = x.terms
            assert words_equal(M, b.expand(), letters) == EQ


@settings(max_examples=60)
@given(st.data())
def test_words_equal_agrees_with_normal_form(data):
    n, d = data.draw(st.sampled_from([(2, 3), (3, 3), (3, 2)]))
    A, M = algebra(n, d), ctx(n, d)
    u = data.draw(st.lists(st.integers(1, n), max_size=6))
    v = data.draw(st.lists(st.integers(1, n), min_size=len(u), max_size=len(u)))
    expected = EQ if A.normal_form(u) == A.normal_form(v) else NE
    assert words_equal(M, u, v) == expected
