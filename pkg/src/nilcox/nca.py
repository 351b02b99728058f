"""The algebra NC_A(n, d) through its left regular representation.

Generators ``T_1, ..., T_n`` satisfy the type-A braid relations,
``T_i^2 = 0`` for ``i < n`` and ``T_n^d = 0``. Every nonzero monomial equals
exactly one basis word::

    Plain(w)           = T_w
    Extended(w, k, m)  = T_w T_n^k T_{n-1} ... T_m     (1 <= k <= d-1, 1 <= m <= n)

with ``w`` in ``S_n``. Products are computed by folding generator actions on
basis words, so a normal form is a single basis word or zero.

>>> A = algebra(2, 3)
>>> A.normal_form([2, 1, 2])
AlgebraElement(n=2, d=3, '1*[1,2,1]')
>>> A.normal_form([2, 1, 2, 1])
AlgebraElement(n=2, d=3, '0')
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from nilcox import kernels
from nilcox.permutations import (
    Permutation, all_permutations, canonical_decompose, canonical_reduced_word,
    descending_run, longest_element,
)

__all__ = [
    "BasisWord", "Plain", "Extended", "AlgebraElement", "NilCoxeterA", "KhovanovReport",
    "ContextMismatch", "algebra", "dimension", "hilbert", "longest_length",
    "is_frobenius", "q_integer", "q_factorial",
]


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class BasisWord:
    """``Plain(w)`` when ``k == 0``, otherwise ``Extended(w, k, m)``."""
    w: Permutation
    k: int = 0
    m: int = 0

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def is_extended(self) -> bool:
        return self.k > 0

    def length(self) -> int:
        if not self.is_extended:
            return self.w.length()
        return self.w.length() + self.k + self.n - self.m

    def sort_key(self):
        return (self.length(), self.is_extended, self.w.mapping, self.k, self.m)

    def expand(self) -> list[int]:
        """Generator letters ``T_w T_n^k T_{n-1} ... T_m``."""
        letters = canonical_reduced_word(self.w)
        if self.is_extended:
            letters += [self.n] * self.k + list(range(self.n - 1, self.m - 1, -1))
        return letters

    def __repr__(self):
        if self.is_extended:
            return f"Extended({list(self.w.mapping)}, {self.k}, {self.m})"
        return f"Plain({list(self.w.mapping)})"


def Plain(w: Permutation) -> BasisWord:
    return BasisWord(w)


def Extended(w: Permutation, k: int, m: int) -> BasisWord:
    if k < 1 or not 1 <= m <= w.n:
        raise ValueError(f"Extended word needs k >= 1 and 1 <= m <= {w.n}, got k={k}, m={m}")
    return BasisWord(w, k, m)


def _format_term(c: int, letters: Sequence[int]) -> str:
    return f"{c}*[{','.join(map(str, letters))}]"


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*)?\s*\[([\d,\s]*)\]\s*")


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Sparse integer combination of basis words of NC_A(n, d). Zero is the empty map."""
    n: int
    d: int
    terms: Mapping[BasisWord, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {b: int(c) for b, c in self.terms.items() if c}
        for b in clean:
            if b.n != self.n or b.k > self.d - 1:
                raise ContextMismatch(f"{b!r} is not a basis word of NC_A({self.n},{self.d})")
        object.__setattr__(self, "terms", clean)

    @property
    def context(self) -> tuple[int, int]:
        return (self.n, self.d)

    def is_zero(self) -> bool:
        return not self.terms

    def in_augmentation_ideal(self) -> bool:
        return BasisWord(Permutation.identity(self.n)) not in self.terms

    def sorted_terms(self) -> list[tuple[BasisWord, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def _check(self, other: AlgebraElement):
        if self.context != other.context:
            raise ContextMismatch(f"NC_A{self.context} vs NC_A{other.context}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0) + c
        return AlgebraElement(self.n, self.d, out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.n, self.d, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: int) -> AlgebraElement:
        return AlgebraElement(self.n, self.d, {b: c * v for b, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return algebra(self.n, self.d).multiply(self, other)

    __rmul__ = scale

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (b, c) in enumerate(self.sorted_terms()):
            body = _format_term(abs(c), b.expand())
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"AlgebraElement(n={self.n}, d={self.d}, {self.to_text()!r})"


def q_integer(n: int) -> list[int]:
    """Coefficients of ``[n]_q = 1 + q + ... + q^{n-1}``."""
    return [1] * n


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def q_factorial(n: int) -> list[int]:
    out = [1]
    for j in range(1, n + 1):
        out = _poly_mul(out, q_integer(j))
    return out


def _check_context(n: int, d: int):
    if not isinstance(n, int) or not isinstance(d, int) or n < 1 or d < 2:
        raise ValueError(f"NC_A(n, d) needs n >= 1 and d >= 2, got ({n}, {d})")


def dimension(n: int, d: int) -> int:
    _check_context(n, d)
    return math.factorial(n) * (1 + n * (d - 1))


def longest_length(n: int, d: int) -> int:
    _check_context(n, d)
    return n * (n - 1) // 2 + d + n - 2


def hilbert(n: int, d: int) -> list[int]:
    """Graded dimensions ``[n]_q! (1 + q [n]_q [d-1]_q)``, degrees 0 .. l_{n,d}."""
    _check_context(n, d)
    ext = [0] + _poly_mul(q_integer(n), q_integer(d - 1))
    ext[0] = 1
    return _poly_mul(q_factorial(n), ext)


def is_frobenius(n: int, d: int) -> bool:
    _check_context(n, d)
    return n == 1 or d == 2


@dataclass
class KhovanovReport:
    n: int
    d: int
    plain_rank: int
    extended_ranks: dict[int, int]
    expected_block_rank: int
    surjectivity_failures: list[BasisWord]
    total: int
    dimension: int

    @property
    def ok(self) -> bool:
        return (self.plain_rank == math.factorial(self.n)
                and all(r == self.expected_block_rank for r in self.extended_ranks.values())
                and not self.surjectivity_failures
                and self.total == self.dimension)


class NilCoxeterA:
    """Basis, generator action table and derived operations for one context ``(n, d)``.

    Use :func:`algebra` for a cached instance.
    """

    def __init__(self, n: int, d: int):
        _check_context(n, d)
        self.n, self.d = n, d

    def __repr__(self):
        return f"NilCoxeterA({self.n}, {self.d})"

    # -- basis ----------------------------------------------------------------

    @cached_property
    def basis(self) -> list[BasisWord]:
        words = []
        for w in all_permutations(self.n):
            words.append(BasisWord(w))
            for k in range(1, self.d):
                for m in range(1, self.n + 1):
                    words.append(BasisWord(w, k, m))
        words.sort(key=BasisWord.sort_key)
        return words

    @cached_property
    def index(self) -> dict[BasisWord, int]:
        return {b: i for i, b in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def unit(self) -> AlgebraElement:
        return self.element({BasisWord(Permutation.identity(self.n)): 1})

    def element(self, terms: Mapping[BasisWord, int]) -> AlgebraElement:
        return AlgebraElement(self.n, self.d, terms)

    def basis_element(self, b: BasisWord) -> AlgebraElement:
        return self.element({b: 1})

    def longest_word(self) -> BasisWord:
        """``T_{w_o} T_n^{d-1} T_{n-1} ... T_1`` with ``w_o`` the longest element of ``S_n``."""
        return BasisWord(longest_element(self.n), self.d - 1, 1)

    # -- generator action -----------------------------------------------------

    def act_basis(self, i: int, b: BasisWord) -> BasisWord | None:
        """``T_i . b`` as a basis word, or None for zero."""
        n, d = self.n, self.d
        if not 1 <= i <= n:
            raise ValueError(f"generator T_{i} not in 1..{n}")
        if b.n != n or b.k > d - 1:
            raise ContextMismatch(f"{b!r} is not a basis word of NC_A({n},{d})")
        if i < n:
            v = Permutation.simple(i, n) * b.w
            if v.length() < b.w.length():
                return None
            return BasisWord(v, b.k, b.m)
        dec = canonical_decompose(b.w)
        if dec.m_prime == n:
            if not b.is_extended:
                return BasisWord(b.w, 1, n)
            return BasisWord(b.w, b.k + 1, b.m) if b.k <= d - 2 else None
        if b.k >= 2:
            return None
        if not b.is_extended:
            return BasisWord(dec.prefix, 1, dec.m_prime)
        if dec.m_prime < b.m:
            return BasisWord(dec.prefix * descending_run(n - 1, b.m - 1, n), 1, dec.m_prime)
        return None

    def act_generator(self, i: int, b: BasisWord) -> AlgebraElement:
        r = self.act_basis(i, b)
        return self.element({} if r is None else {r: 1})

    @cached_property
    def action_table(self) -> np.ndarray:
        """``table[i-1, j]`` is the index of ``T_i . basis[j]`` or -1."""
        t = np.full((self.n, self.dimension), -1, dtype=np.int64)
        for j, b in enumerate(self.basis):
            for i in range(1, self.n + 1):
                r = self.act_basis(i, b)
                if r is not None:
                    t[i - 1, j] = self.index[r]
        return t

    @cached_property
    def _table_rows(self) -> list[list[int]]:
        return self.action_table.tolist()

    @cached_property
    def right_action_table(self) -> np.ndarray:
        """``table[i-1, j]`` is the index of ``basis[j] . T_i`` or -1."""
        t = np.full((self.n, self.dimension), -1, dtype=np.int64)
        for j, b in enumerate(self.basis):
            letters = b.expand()
            for i in range(1, self.n + 1):
                t[i - 1, j] = self._fold(letters + [i], self._identity_index)
        return t

    @cached_property
    def _identity_index(self) -> int:
        return self.index[BasisWord(Permutation.identity(self.n))]

    def _fold(self, letters: Sequence[int], start: int) -> int:
        rows = self._table_rows
        b = start
        for g in reversed(letters):
            if not 1 <= g <= self.n:
                raise ValueError(f"generator T_{g} not in 1..{self.n}")
            b = rows[g - 1][b]
            if b < 0:
                return -1
        return b

    # -- words and products ---------------------------------------------------

    def normal_form(self, letters: Sequence[int]) -> AlgebraElement:
        j = self._fold(list(letters), self._identity_index)
        return self.element({} if j < 0 else {self.basis[j]: 1})

    def normal_form_index(self, letters: Sequence[int]) -> int:
        """Basis index of the normal form of ``letters``, or -1 for zero."""
        return self._fold(list(letters), self._identity_index)

    def normal_form_batch(self, words: Sequence[Sequence[int]]) -> np.ndarray:
        """Basis indices (or -1) of many words at once through the compiled kernel."""
        flat = [g - 1 for w in words for g in w]
        offsets = np.cumsum([0] + [len(w) for w in words], dtype=np.int64)
        starts = np.full(len(words), self._identity_index, dtype=np.int64)
        return kernels.apply_words(self.action_table, np.asarray(flat, dtype=np.int64), offsets, starts)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        for z in (x, y):
            if z.context != (self.n, self.d):
                raise ContextMismatch(f"element of NC_A{z.context} used in NC_A({self.n},{self.d})")
        out: dict[BasisWord, int] = {}
        for b, cb in x.terms.items():
            letters = b.expand()
            for c, cc in y.terms.items():
                j = self._fold(letters, self.index[c])
                if j >= 0:
                    key = self.basis[j]
                    out[key] = out.get(key, 0) + cb * cc
        return self.element(out)

    def theta(self, x: AlgebraElement) -> AlgebraElement:
        """The anti-involution fixing every generator: reverse each word."""
        out: dict[BasisWord, int] = {}
        for b, c in x.terms.items():
            j = self._fold(b.expand()[::-1], self._identity_index)
            if j >= 0:
                key = self.basis[j]
                out[key] = out.get(key, 0) + c
        return self.element(out)

    def rewrite_rprim(self, m: int, k: int, w: Permutation) -> BasisWord:
        """Standard form of ``T_m ... T_{n-1} T_n^k T_w``."""
        n = self.n
        if not 1 <= m <= n or not 1 <= k <= self.d - 1 or w.n != n:
            raise ValueError(f"need 1 <= m <= {n}, 1 <= k <= {self.d - 1} and w in S_{n}")
        dec = canonical_decompose(w)
        head = Permutation.from_word(range(m, n), n) * dec.prefix
        return BasisWord(head, k, dec.m_prime)

    # -- element text ---------------------------------------------------------

    def parse(self, text: str) -> AlgebraElement:
        """Parse ``"3*[1,2,2,1] - 2*[2]"``; each word is normalized, so any letters are allowed."""
        text = text.strip()
        if text == "0":
            return self.element({})
        pos, out = 0, self.element({})
        while pos < len(text):
            mt = _TERM.match(text, pos)
            if mt is None or mt.end() == pos:
                raise ValueError(f"cannot parse element near {text[pos:]!r}")
            if pos > 0 and mt.group(1) is None:
                raise ValueError(f"missing sign before {text[pos:]!r}")
            sign = -1 if mt.group(1) == "-" else 1
            coeff = int(mt.group(2)) if mt.group(2) else 1
            body = mt.group(3).strip()
            letters = [int(x) for x in body.split(",")] if body else []
            out = out + self.normal_form(letters).scale(sign * coeff)
            pos = mt.end()
        return out

    # -- primitives -----------------------------------------------------------

    def left_primitives(self) -> list[BasisWord]:
        n, d = self.n, self.d
        w0 = longest_element(n)
        if n == 1:
            return [BasisWord(w0, d - 1, 1)]
        return [BasisWord(w0, 1, 1)] + [BasisWord(w0, k, m) for k in range(2, d) for m in range(1, n + 1)]

    def two_sided_primitives(self) -> list[BasisWord]:
        w0 = longest_element(self.n)
        if self.n == 1:
            return [BasisWord(w0, self.d - 1, 1)]
        return [BasisWord(w0, k, 1) for k in range(1, self.d)]

    def _operator_stack(self, tables: Iterable[np.ndarray]):
        from nilcox.linalg import SparseMatrix
        rows = []
        for t in tables:
            # row for each target basis vector, columns are source basis vectors
            for g in range(t.shape[0]):
                by_target: dict[int, dict[int, int]] = {}
                for j, tgt in enumerate(t[g].tolist()):
                    if tgt >= 0:
                        by_target.setdefault(tgt, {})[j] = 1
                rows.extend(by_target.values())
        return SparseMatrix.from_rows(rows, self.dimension)

    def primitive_rank(self, side: str) -> int:
        """Dimension of the joint kernel of generator multiplication on the regular representation.

        ``side`` is ``"left"``, ``"right"`` or ``"both"``.
        """
        from nilcox.linalg import exact_rank
        tables = {"left": [self.action_table], "right": [self.right_action_table],
                  "both": [self.action_table, self.right_action_table]}[side]
        return self.dimension - exact_rank(self._operator_stack(tables))

    def is_primitive(self, b: BasisWord, side: str) -> bool:
        j = self.index[b]
        tables = {"left": [self.action_table], "right": [self.right_action_table],
                  "both": [self.action_table, self.right_action_table]}[side]
        return all((t[:, j] < 0).all() for t in tables)

    # -- bimodule decomposition -----------------------------------------------

    def khovanov_decomposition_check(self) -> KhovanovReport:
        n, d = self.n, self.d
        plain = sum(1 for b in self.basis if not b.is_extended)
        ranks = {k: sum(1 for b in self.basis if b.k == k) for k in range(1, d)}
        failures = []
        for b in self.basis:
            if not b.is_extended:
                continue
            t_w = self.normal_form(canonical_reduced_word(b.w))
            t_nk = self.normal_form([n] * b.k)
            tail = self.normal_form(list(range(n - 1, b.m - 1, -1)))
            if self.multiply(t_w, self.multiply(t_nk, tail)) != self.basis_element(b):
                failures.append(b)
        total = plain + sum(ranks.values())
        return KhovanovReport(n, d, plain, ranks, n * math.factorial(n), failures, total, dimension(n, d))


@lru_cache(maxsize=64)
def algebra(n: int, d: int) -> NilCoxeterA:
    return NilCoxeterA(n, d)
