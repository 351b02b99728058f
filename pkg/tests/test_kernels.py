"""Both kernel backends must agree with each other and with an independent dense rank."""

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nilcox import _kernels_py, kernels
from nilcox.linalg import CharacteristicMismatch, SparseMatrix, exact_rank, rank_mod_p, rank_rational

BACKENDS = kernels.backends()


def test_compiled_backend_is_built():
    # the extension is part of the package; a silent fallback would hide a broken build
    assert "cython" in BACKENDS
    assert kernels.BACKEND in ("cython", "python")


def _fraction_rank(dense):
    from fractions import Fraction
    rows = [[Fraction(x) for x in r] for r in dense]
    rank, col, ncols = 0, 0, len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


dense_matrices = st.integers(1, 9).flatmap(lambda c: st.lists(
    st.lists(st.sampled_from([0, 0, 0, 1, -1, 2, -3, 7]), min_size=c, max_size=c), min_size=1, max_size=10))


@pytest.mark.parametrize("name", sorted(BACKENDS))
@given(dense_matrices)
def test_rank_matches_fractions(name, dense):
    mod = BACKENDS[name]
    A = SparseMatrix.from_dense(dense)
    expected = _fraction_rank(dense)
    assert mod.rank_integer(A.indptr, A.indices, A.data, A.ncols) == expected
    assert mod.rank_modp(A.indptr, A.indices, np.mod(A.data, 32003), A.ncols, 32003) == expected


def test_characteristic_dependence_is_visible():
    # det = 2: rank 2 over Q and mod 32003, rank 1 mod 2
    A = SparseMatrix.from_dense([[1, 1], [1, -1]])
    assert rank_rational(A) == 2
    assert rank_mod_p(A, 2) == 1
    with pytest.raises(CharacteristicMismatch):
        exact_rank(A, p=2)


def test_duplicate_entries_are_summed():
    A = SparseMatrix(np.array([0, 3]), np.array([0, 0, 1]), np.array([1, -1, 5]), 2)
    for mod in BACKENDS.values():
        assert mod.rank_integer(A.indptr, A.indices, A.data, 2) == 1


def test_overflow_falls_back_to_big_integers():
    # fraction-free growth on a dense random matrix with large entries exceeds the 64-bit guard
    rng = random.Random(0)
    dense = [[rng.randint(-10**6, 10**6) for _ in range(12)] for _ in range(12)]
    A = SparseMatrix.from_dense(dense)
    assert kernels.rank_integer(A.indptr, A.indices, A.data, A.ncols) == _fraction_rank(dense)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_apply_words(name):
    mod = BACKENDS[name]
    table = np.array([[1, 2, -1], [2, -1, 0]], dtype=np.int64)
    assert mod.apply_word(table, np.array([0, 1]), 2) == 1  # gen 1 first (2 -> 0), then gen 0 (0 -> 1)
    assert mod.apply_word(table, np.array([1, 1]), 1) == -1
    flat = np.array([0, 1, 1, 1], dtype=np.int64)
    out = mod.apply_words(table, flat, np.array([0, 2, 4]), np.array([2, 1]))
    assert list(out) == [1, -1]


def test_backends_agree_on_oracle_sized_matrix():
    rng = random.Random(5)
    rows = []
    for _ in range(3000):
        a, b = rng.randrange(2000), rng.randrange(2000)
        rows.append({a: 1} if a == b else {a: 1, b: -1})
    A = SparseMatrix.from_rows(rows, 2000)
    ranks = {name: mod.rank_integer(A.indptr, A.indices, A.data, A.ncols) for name, mod in BACKENDS.items()}
    assert len(set(ranks.values())) == 1
    assert _kernels_py.rank_modp(A.indptr, A.indices, np.mod(A.data, 32003), 2000, 32003) == ranks["python"]
