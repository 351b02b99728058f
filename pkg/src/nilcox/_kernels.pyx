# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: sparse exact rank (mod p and over Q) and word folding.

Pivot rows live in a per-column vector of sorted (column, value) entries; the
working row is reduced by sorted merges, so fill-in costs only what it adds.
"""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libc.stdint cimport int64_t

import numpy as np
cimport numpy as cnp

ctypedef pair[int64_t, int64_t] entry
ctypedef vector[entry] srow

cdef int64_t LIMIT = 1 << 30


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef int64_t _powmod(int64_t a, int64_t e, int64_t p) nogil:
    cdef int64_t r = 1
    a = _mod(a, p)
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef void _load_row(srow& out, int64_t[:] indptr, int64_t[:] indices, int64_t[:] data, Py_ssize_t r):
    cdef Py_ssize_t t
    out.clear()
    for t in range(indptr[r], indptr[r + 1]):
        out.push_back(entry(indices[t], data[t]))


cdef void _sort_combine(srow& row, int64_t p):
    """Sort by column, add duplicates, drop zeros (mod p when p > 0)."""
    cdef vector[entry] tmp
    cdef Py_ssize_t i
    cdef int64_t c, v
    cdef Py_ssize_t j
    cdef entry key
    if row.size() == 0:
        return
    # insertion sort: rows are tiny
    for i in range(1, <Py_ssize_t>row.size()):
        key = row[i]
        j = i - 1
        while j >= 0 and row[j].first > key.first:
            row[j + 1] = row[j]
            j -= 1
        row[j + 1] = key
    i = 0
    while i < <Py_ssize_t>row.size():
        c = row[i].first
        v = 0
        while i < <Py_ssize_t>row.size() and row[i].first == c:
            v += row[i].second
            i += 1
        if p > 0:
            v = _mod(v, p)
        if v != 0:
            tmp.push_back(entry(c, v))
    row.swap(tmp)


def rank_modp(indptr, indices, data, Py_ssize_t ncols, int64_t p):
    cdef int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef vector[srow] pivots
    pivots.resize(ncols)
    cdef srow row, merged
    cdef Py_ssize_t r, a, b, nrows = ip.shape[0] - 1
    cdef int64_t lead, f, inv, v
    cdef Py_ssize_t rank = 0
    for r in range(nrows):
        _load_row(row, ip, ix, dv, r)
        _sort_combine(row, p)
        while row.size() > 0:
            lead = row[0].first
            if pivots[lead].size() == 0:
                inv = _powmod(row[0].second, p - 2, p)
                for a in range(<Py_ssize_t>row.size()):
                    row[a].second = row[a].second * inv % p
                pivots[lead].swap(row)
                rank += 1
                break
            f = row[0].second
            merged.clear()
            a = 0
            b = 0
            while a < <Py_ssize_t>row.size() or b < <Py_ssize_t>pivots[lead].size():
                if b >= <Py_ssize_t>pivots[lead].size() or (a < <Py_ssize_t>row.size() and row[a].first < pivots[lead][b].first):
                    merged.push_back(row[a])
                    a += 1
                elif a >= <Py_ssize_t>row.size() or pivots[lead][b].first < row[a].first:
                    v = _mod(-f * pivots[lead][b].second, p)
                    if v != 0:
                        merged.push_back(entry(pivots[lead][b].first, v))
                    b += 1
                else:
                    v = _mod(row[a].second - f * pivots[lead][b].second, p)
                    if v != 0:
                        merged.push_back(entry(row[a].first, v))
                    a += 1
                    b += 1
            row.swap(merged)
    return rank


cdef int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def rank_integer(indptr, indices, data, Py_ssize_t ncols):
    """Exact rank over Q with 64-bit fraction-free elimination.

    Raises OverflowError when an entry would leave the safe range; callers then
    fall back to the arbitrary-precision pure-Python kernel.
    """
    cdef int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef vector[srow] pivots
    pivots.resize(ncols)
    cdef srow row, merged
    cdef Py_ssize_t r, a, b, nrows = ip.shape[0] - 1
    cdef int64_t lead, pa, pb, v, g
    cdef Py_ssize_t rank = 0
    for r in range(nrows):
        _load_row(row, ip, ix, dv, r)
        _sort_combine(row, 0)
        while row.size() > 0:
            lead = row[0].first
            if pivots[lead].size() == 0:
                g = 0
                for a in range(<Py_ssize_t>row.size()):
                    g = _gcd(g, row[a].second)
                if row[0].second < 0:
                    g = -g
                for a in range(<Py_ssize_t>row.size()):
                    row[a].second = row[a].second // g
                pivots[lead].swap(row)
                rank += 1
                break
            pa = pivots[lead][0].second
            pb = row[0].second
            if pa >= LIMIT or pb >= LIMIT or pb <= -LIMIT:
                raise OverflowError("entry growth beyond 64-bit safe range")
            merged.clear()
            a = 0
            b = 0
            g = 0
            while a < <Py_ssize_t>row.size() or b < <Py_ssize_t>pivots[lead].size():
                if b >= <Py_ssize_t>pivots[lead].size() or (a < <Py_ssize_t>row.size() and row[a].first < pivots[lead][b].first):
                    if row[a].second >= LIMIT or row[a].second <= -LIMIT:
                        raise OverflowError("entry growth beyond 64-bit safe range")
                    v = pa * row[a].second
                    merged.push_back(entry(row[a].first, v))
                    a += 1
                elif a >= <Py_ssize_t>row.size() or pivots[lead][b].first < row[a].first:
                    if pivots[lead][b].second >= LIMIT or pivots[lead][b].second <= -LIMIT:
                        raise OverflowError("entry growth beyond 64-bit safe range")
                    v = -pb * pivots[lead][b].second
                    merged.push_back(entry(pivots[lead][b].first, v))
                    b += 1
                else:
                    if row[a].second >= LIMIT or row[a].second <= -LIMIT or pivots[lead][b].second >= LIMIT or pivots[lead][b].second <= -LIMIT:
                        raise OverflowError("entry growth beyond 64-bit safe range")
                    v = pa * row[a].second - pb * pivots[lead][b].second
                    if v != 0:
                        merged.push_back(entry(row[a].first, v))
                    a += 1
                    b += 1
                if merged.size() > 0:
                    g = _gcd(g, merged.back().second)
            if g > 1:
                for a in range(<Py_ssize_t>merged.size()):
                    merged[a].second = merged[a].second // g
            row.swap(merged)
    return rank


def apply_word(table, letters, Py_ssize_t start):
    cdef cnp.int64_t[:, :] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef cnp.int64_t[:] w = np.ascontiguousarray(letters, dtype=np.int64)
    cdef Py_ssize_t i
    cdef cnp.int64_t b = start
    for i in range(w.shape[0] - 1, -1, -1):
        b = t[w[i], b]
        if b < 0:
            return -1
    return b


def apply_words(table, flat_letters, offsets, starts):
    """Batch fold: word ``k`` is ``flat_letters[offsets[k]:offsets[k+1]]`` applied to ``starts[k]``."""
    cdef cnp.int64_t[:, :] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef cnp.int64_t[:] w = np.ascontiguousarray(flat_letters, dtype=np.int64)
    cdef cnp.int64_t[:] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.int64_t[:] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef Py_ssize_t k, i, nw = st.shape[0]
    out = np.empty(nw, dtype=np.int64)
    cdef cnp.int64_t[:] res = out
    cdef cnp.int64_t b
    for k in range(nw):
        b = st[k]
        i = off[k + 1] - 1
        while i >= off[k] and b >= 0:
            b = t[w[i], b]
            i -= 1
        res[k] = b
    return out
