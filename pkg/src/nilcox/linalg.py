"""Exact rank of sparse integer matrices, over Q and over a prime field."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from nilcox import kernels

DEFAULT_PRIME = 32003


class CharacteristicMismatch(RuntimeError):
    """Rank over Q differs from rank mod p: an unlucky prime or a real characteristic effect."""


@dataclass
class SparseMatrix:
    """Integer matrix in CSR layout."""
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.indptr) - 1

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, int]], ncols: int) -> SparseMatrix:
        indptr, indices, data = [0], [], []
        for row in rows:
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} outside 0..{ncols - 1}")
                if v:
                    indices.append(c)
                    data.append(int(v))
            indptr.append(len(indices))
        return cls(np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64),
                   np.asarray(data, dtype=np.int64), ncols)

    @classmethod
    def from_dense(cls, dense) -> SparseMatrix:
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls.from_rows(({c: v for c, v in enumerate(r) if v} for r in dense), ncols)


def rank_mod_p(A: SparseMatrix, p: int = DEFAULT_PRIME) -> int:
    data = np.mod(A.data, p)
    return kernels.rank_modp(A.indptr, A.indices, data, A.ncols, p)


def rank_rational(A: SparseMatrix) -> int:
    return kernels.rank_integer(A.indptr, A.indices, A.data, A.ncols)


def exact_rank(A: SparseMatrix, p: int = DEFAULT_PRIME, confirm: bool = True) -> int:
    """Rank via the mod-p fast path, confirmed over Q unless ``confirm`` is False."""
    r_p = rank_mod_p(A, p)
    if not confirm:
        return r_p
    r_q = rank_rational(A)
    if r_q != r_p:
        raise CharacteristicMismatch(f"rank over Q is {r_q} but rank mod {p} is {r_p}")
    return r_q
