"""Pure-Python kernels. Same API and results as the compiled ``_kernels`` module.

Sparse matrices arrive in CSR form: row ``r`` holds ``indices[indptr[r]:indptr[r+1]]``
with values ``data[...]``. Elimination keeps one pivot row per leading column and
reduces each incoming row against them until it vanishes or finds a free pivot.
"""

from math import gcd


def _as_list(a):
    return a.tolist() if hasattr(a, "tolist") else list(a)


def rank_modp(indptr, indices, data, ncols, p):
    indptr, indices, data = _as_list(indptr), _as_list(indices), _as_list(data)
    pivots = {}
    rank = 0
    for r in range(len(indptr) - 1):
        row = {}
        for t in range(indptr[r], indptr[r + 1]):
            c = indices[t]
            row[c] = (row.get(c, 0) + data[t]) % p
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], p - 2, p)
                pivots[lead] = [(c, v * inv % p) for c, v in row.items()]
                rank += 1
                break
            f = row[lead]
            for c, v in piv:
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank


def rank_integer(indptr, indices, data, ncols):
    """Exact rank over the rationals by fraction-free elimination on primitive integer rows."""
    indptr, indices, data = _as_list(indptr), _as_list(indices), _as_list(data)
    pivots = {}
    rank = 0
    for r in range(len(indptr) - 1):
        row = {}
        for t in range(indptr[r], indptr[r + 1]):
            c = indices[t]
            row[c] = row.get(c, 0) + data[t]
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if row[lead] < 0:
                    g = -g
                pivots[lead] = (row[lead] // g, {c: v // g for c, v in row.items()})
                rank += 1
                break
            a, prow = piv
            b = row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return rank


def apply_word(table, letters, start):
    """Fold generator actions right to left: ``T_{l1} ... T_{lk} . start``.

    ``table[g][b]`` is the image index of basis vector ``b`` under generator ``g``
    (0-based) or -1 for zero. Returns -1 when the result is zero.
    """
    b = start
    for g in reversed(letters):
        b = table[g][b]
        if b < 0:
            return -1
    return b


def apply_words(table, flat_letters, offsets, starts):
    """Batch fold: word ``k`` is ``flat_letters[offsets[k]:offsets[k+1]]`` applied to ``starts[k]``."""
    import numpy as np
    rows = [list(r) for r in _as_list(table)]
    w, off, st = _as_list(flat_letters), _as_list(offsets), _as_list(starts)
    out = []
    for k in range(len(st)):
        b = st[k]
        i = off[k + 1] - 1
        while i >= off[k] and b >= 0:
            b = rows[w[i]][b]
            i -= 1
        out.append(b)
    return np.asarray(out, dtype=np.int64)
