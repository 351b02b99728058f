"""
Symmetric groups in one-line notation.

A permutation of ``{1, ..., n}`` is stored as the tuple ``(w(1), ..., w(n))``.
Products compose right to left, ``(u * v)(x) == u(v(x))``, so the word
``[i1, ..., ik]`` multiplies out to ``s_{i1} * ... * s_{ik}``.

>>> w = Permutation.from_word([2, 1], 3)
>>> w
Permutation((3, 1, 2))
>>> w.length()
2
>>> canonical_decompose(w)
CanonicalDecomposition(prefix=Permutation((1, 2, 3)), m_prime=1)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation", "CanonicalDecomposition",
    "length", "longest_element", "canonical_decompose", "canonical_reduced_word",
    "descending_run", "all_permutations",
]


@dataclass(frozen=True, order=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.mapping)}: {self.mapping}")

    def __repr__(self):
        return f"Permutation({self.mapping!r})"

    @property
    def n(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> Permutation:
        """The simple transposition ``s_i`` swapping ``i`` and ``i+1`` in ``S_n``."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not a generator of S_{n}")
        m = list(range(1, n + 1))
        m[i - 1], m[i] = m[i], m[i - 1]
        return cls(tuple(m))

    @classmethod
    def from_word(cls, letters: Iterable[int], n: int) -> Permutation:
        w = cls.identity(n)
        for i in letters:
            w = w * cls.simple(i, n)
        return w

    def __call__(self, x: int) -> int:
        return self.mapping[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError("permutations of different degree")
        return Permutation(tuple(self.mapping[j - 1] for j in other.mapping))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for pos, val in enumerate(self.mapping, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def length(self) -> int:
        """Number of inversions, which is the Coxeter length."""
        m = self.mapping
        return sum(1 for a, b in itertools.combinations(range(len(m)), 2) if m[a] > m[b])

    def lehmer_code(self) -> tuple[int, ...]:
        m = self.mapping
        return tuple(sum(1 for b in m[a + 1:] if b < m[a]) for a in range(len(m)))

    def embed(self, n: int) -> Permutation:
        """The same permutation inside ``S_n``, fixing the extra points."""
        if n < self.n:
            raise ValueError("cannot embed into a smaller symmetric group")
        return Permutation(self.mapping + tuple(range(self.n + 1, n + 1)))

    def restrict(self) -> Permutation:
        """Drop the last point, which must be fixed."""
        if self.mapping[-1] != self.n:
            raise ValueError(f"{self} does not fix {self.n}")
        return Permutation(self.mapping[:-1])

    def fixes_last(self) -> bool:
        return self.n == 0 or self.mapping[-1] == self.n


@dataclass(frozen=True)
class CanonicalDecomposition:
    """``w == prefix * s_{n-1} * ... * s_{m_prime}``; ``m_prime == n`` means ``w`` fixes ``n``."""
    prefix: Permutation
    m_prime: int


def length(w: Permutation) -> int:
    return w.length()


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(range(n, 0, -1)))


def descending_run(top: int, bottom: int, n: int) -> Permutation:
    """``s_top * s_{top-1} * ... * s_bottom`` in ``S_n``; identity when ``bottom > top``."""
    return Permutation.from_word(range(top, bottom - 1, -1), n)


def canonical_decompose(w: Permutation) -> CanonicalDecomposition:
    n = w.n
    # s_{n-1}...s_{m'} sends m' to n, so m' is the position of n in one-line form
    m_prime = w.mapping.index(n) + 1
    tail = descending_run(n - 1, m_prime, n)
    return CanonicalDecomposition(w * tail.inverse(), m_prime)


@lru_cache(maxsize=None)
def _reduced_word(mapping: tuple[int, ...]) -> tuple[int, ...]:
    n = len(mapping)
    if n <= 1:
        return ()
    dec = canonical_decompose(Permutation(mapping))
    head = _reduced_word(dec.prefix.mapping[:-1])
    return head + tuple(range(n - 1, dec.m_prime - 1, -1))


def canonical_reduced_word(w: Permutation) -> list[int]:
    """Reduced word built by peeling off the position of the largest point, then recursing."""
    return list(_reduced_word(w.mapping))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic one-line order."""
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def word_to_permutation(letters: Sequence[int], n: int) -> Permutation:
    return Permutation.from_word(letters, n)
