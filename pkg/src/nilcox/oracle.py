"""Brute-force graded dimensions of NC(M) as a quotient of the free algebra.

The degree-D component of the free algebra on generators ``T_1..T_g`` has the
words of length D as basis. The relations of NC(M) are homogeneous, so the
ideal in degree D is spanned by ``u r v`` for relations ``r`` and padding
words ``u, v``. Two kinds occur:

* monomials ``u T_a^{d_a} v``: these are exactly the words containing a run
  ``a^{d_a}`` (the set Z), so they kill those columns outright;
* braid binomials ``u (aba...) v - u (bab...) v``.

Hence ``dim = |words not in Z| - rank(binomials restricted to non-Z columns)``.
A binomial whose partner lies in Z restricts to a single entry.

This module deliberately knows nothing about the NC_A normal form engine.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from nilcox.linalg import DEFAULT_PRIME, SparseMatrix, exact_rank
from nilcox.presentations import INF, GeneralizedCoxeterMatrix, require_valid

__all__ = [
    "DEFAULT_WORD_BUDGET", "STILL_GROWING", "ResourceBudgetError", "GradedQuotientReport",
    "WordEquality", "graded_dimension", "graded_dimensions", "graded_report",
    "total_dimension_if_finite", "words_equal",
]

DEFAULT_WORD_BUDGET = 5_000_000
STILL_GROWING = "still growing"


class ResourceBudgetError(RuntimeError):
    """The requested degree needs more words than the configured budget."""


class WordEquality(str, enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    INCONCLUSIVE = "inconclusive"


@dataclass
class GradedQuotientReport:
    presentation: GeneralizedCoxeterMatrix
    max_degree: int
    graded_dims: list[int] = field(default_factory=list)
    truncated: bool = True

    @property
    def total(self) -> int | str:
        return STILL_GROWING if self.truncated else sum(self.graded_dims)


def _braid_pairs(M: GeneralizedCoxeterMatrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """0-based letter patterns (aba..., bab...) of each finite braid relation, a < b."""
    pairs = []
    for a in range(M.size):
        for b in range(a + 1, M.size):
            m = M.bond(a + 1, b + 1)
            if m is INF:
                continue
            pairs.append((tuple(a if t % 2 == 0 else b for t in range(m)),
                          tuple(b if t % 2 == 0 else a for t in range(m))))
    return pairs


def _nonzero_words(g: int, orders: Sequence[int], degree: int):
    """Sorted base-g codes of words avoiding every run ``a^{d_a}``, and their digit matrix."""
    codes = np.arange(g, dtype=np.int64)
    last = codes.copy()
    run = np.ones(g, dtype=np.int64)
    ords = np.asarray(orders, dtype=np.int64)
    keep = run < ords[last]
    codes, last, run = codes[keep], last[keep], run[keep]
    for _ in range(degree - 1):
        letters = np.tile(np.arange(g, dtype=np.int64), len(codes))
        new_codes = np.repeat(codes * g, g) + letters
        new_run = np.where(np.repeat(last, g) == letters, np.repeat(run, g) + 1, 1)
        keep = new_run < ords[letters]
        codes, last, run = new_codes[keep], letters[keep], new_run[keep]
    digits = np.empty((len(codes), degree), dtype=np.int8)
    rest = codes.copy()
    for pos in range(degree - 1, -1, -1):
        digits[:, pos] = rest % g
        rest //= g
    return codes, digits


def _relation_rows(M: GeneralizedCoxeterMatrix, degree: int, codes: np.ndarray, digits: np.ndarray) -> SparseMatrix:
    g = M.size
    n_words = len(codes)
    heads, tails = [], []
    powers = g ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    for left, right in _braid_pairs(M):
        m = len(left)
        for p in range(degree - m + 1):
            for src, dst, keep_pairs in ((left, right, True), (right, left, False)):
                window = digits[:, p:p + m]
                hit = np.all(window == np.asarray(src, dtype=np.int8), axis=1)
                if not hit.any():
                    continue
                rows = np.nonzero(hit)[0]
                shift = int(np.dot(np.asarray(dst, dtype=np.int64) - np.asarray(src, dtype=np.int64),
                                   powers[p:p + m]))
                partner_codes = codes[rows] + shift
                pos = np.searchsorted(codes, partner_codes)
                pos_clip = np.minimum(pos, n_words - 1)
                found = codes[pos_clip] == partner_codes
                if keep_pairs:
                    heads.append(rows[found])
                    tails.append(pos_clip[found])
                heads.append(rows[~found])
                tails.append(np.full(int((~found).sum()), -1, dtype=np.int64))
    if heads:
        h = np.concatenate(heads)
        t = np.concatenate(tails)
    else:
        h = t = np.empty(0, dtype=np.int64)
    # dedupe; singletons first so they become pivots before long binomial chains form
    pairs = np.unique(np.stack([t, h], axis=1), axis=0)
    t, h = pairs[:, 0], pairs[:, 1]
    single = t < 0
    n_rows = len(h)
    indptr = np.empty(n_rows + 1, dtype=np.int64)
    indptr[0] = 0
    sizes = np.where(single, 1, 2)
    indptr[1:] = np.cumsum(sizes)
    indices = np.empty(int(indptr[-1]), dtype=np.int64)
    data = np.empty(int(indptr[-1]), dtype=np.int64)
    starts = indptr[:-1]
    indices[starts] = h
    data[starts] = 1
    pair_starts = starts[~single]
    indices[pair_starts + 1] = t[~single]
    data[pair_starts + 1] = -1
    return SparseMatrix(indptr, indices, data, n_words)


def graded_dimension(M: GeneralizedCoxeterMatrix, degree: int, *,
                     word_budget: int = DEFAULT_WORD_BUDGET,
                     prime: int = DEFAULT_PRIME, confirm: bool = True) -> int:
    """Dimension of the degree-``degree`` component of NC(M).

    The rank is computed mod ``prime`` and, when ``confirm`` is set, again over
    the rationals; disagreement raises :class:`~nilcox.linalg.CharacteristicMismatch`.
    """
    require_valid(M)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree == 0:
        return 1
    g = M.size
    if g ** degree > word_budget:
        raise ResourceBudgetError(
            f"degree {degree} has {g ** degree} words over {g} letters; budget is {word_budget}")
    codes, digits = _nonzero_words(g, M.orders, degree)
    if len(codes) == 0:
        return 0
    A = _relation_rows(M, degree, codes, digits)
    return len(codes) - exact_rank(A, prime, confirm=confirm)


def graded_dimensions(M: GeneralizedCoxeterMatrix, max_degree: int, **kw) -> list[int]:
    return graded_report(M, max_degree, **kw).graded_dims


def graded_report(M: GeneralizedCoxeterMatrix, max_degree: int, *, stop_at_zero: bool = True,
                  **kw) -> GradedQuotientReport:
    """Graded dimensions for degrees ``0..max_degree``.

    Once a degree vanishes every higher one does too (the algebra is generated
    in degree 1), so the scan stops there unless ``stop_at_zero`` is False.
    """
    dims = []
    for D in range(max_degree + 1):
        dims.append(graded_dimension(M, D, **kw))
        if dims[-1] == 0 and stop_at_zero:
            break
    return GradedQuotientReport(M, max_degree, dims, truncated=dims[-1] != 0)


def total_dimension_if_finite(M: GeneralizedCoxeterMatrix, max_degree: int, **kw) -> int | str:
    return graded_report(M, max_degree, **kw).total


# -- bounded rewriting search ---------------------------------------------------

def _contains_power(word: tuple[int, ...], orders: Sequence[int]) -> bool:
    run, prev = 0, None
    for a in word:
        run = run + 1 if a == prev else 1
        prev = a
        if run >= orders[a - 1]:
            return True
    return False


def _braid_neighbors(word: tuple[int, ...], M: GeneralizedCoxeterMatrix):
    n = len(word)
    for a in M.nodes():
        for b in M.nodes():
            if a == b:
                continue
            m = M.bond(a, b)
            if m is INF or m > n:
                continue
            src = tuple(a if t % 2 == 0 else b for t in range(m))
            dst = tuple(b if t % 2 == 0 else a for t in range(m))
            for p in range(n - m + 1):
                if word[p:p + m] == src:
                    yield word[:p] + dst + word[p + m:]


@dataclass
class _Closure:
    words: set
    is_zero: bool
    exhausted: bool


def _closure(M: GeneralizedCoxeterMatrix, word: tuple[int, ...], bound: int) -> _Closure:
    orders = M.orders
    seen = {word}
    queue = deque([word])
    while queue:
        x = queue.popleft()
        if _contains_power(x, orders):
            return _Closure(seen, True, False)
        for y in _braid_neighbors(x, M):
            if y not in seen:
                if len(seen) >= bound:
                    return _Closure(seen, False, False)
                seen.add(y)
                queue.append(y)
    return _Closure(seen, False, True)


def words_equal(M: GeneralizedCoxeterMatrix, u: Optional[Sequence[int]], v: Optional[Sequence[int]],
                search_bound: int = 10_000) -> WordEquality:
    """Decide ``u == v`` in NC(M) by exploring braid-move classes; ``None`` is the zero word.

    A class that reaches a word containing ``T_a^{d_a}`` is zero. Answers are
    definite only when the relevant classes are exhausted within ``search_bound`` words.
    """
    require_valid(M)
    for w in (u, v):
        if w is not None and any(not 1 <= a <= M.size for a in w):
            raise ValueError(f"letters of {list(w)} outside 1..{M.size}")
    if u is None and v is None:
        return WordEquality.EQUAL
    if u is None:
        u, v = v, u
    u = tuple(u)
    cu = _closure(M, u, search_bound)
    if v is None:
        if cu.is_zero:
            return WordEquality.EQUAL
        return WordEquality.UNEQUAL if cu.exhausted else WordEquality.INCONCLUSIVE
    v = tuple(v)
    if not cu.is_zero and v in cu.words:
        return WordEquality.EQUAL
    cv = _closure(M, v, search_bound)
    if cu.is_zero and cv.is_zero:
        return WordEquality.EQUAL
    if cu.is_zero or cv.is_zero:
        other = cv if cu.is_zero else cu
        return WordEquality.UNEQUAL if other.exhausted else WordEquality.INCONCLUSIVE
    if u in cv.words:
        return WordEquality.EQUAL
    if cu.exhausted or cv.exhausted:
        return WordEquality.UNEQUAL
    return WordEquality.INCONCLUSIVE
