"""Time the compiled and pure-Python kernels on the workloads the package actually runs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads: oracle relation matrices (rank mod p and over Q) and batched
normal forms on the NC_A regular representation. Each row reports the best
of ``--repeat`` runs and checks that both backends return the same answer.
"""

import argparse
import itertools
import time

import numpy as np

from nilcox import kernels
from nilcox.nca import algebra
from nilcox.oracle import _nonzero_words, _relation_rows
from nilcox.presentations import GeneralizedCoxeterMatrix, type_a_matrix


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def rank_workloads():
    cases = [
        ("NC_A(4,2)", type_a_matrix(4), 9),
        ("A_2 with d=(3,3)", type_a_matrix(2, [3, 3]), 14),
        ("triangle, d=(4,4,4)", GeneralizedCoxeterMatrix.from_data([4, 4, 4], {(1, 2): 3, (2, 3): 3, (1, 3): 3}), 10),
    ]
    for label, M, degree in cases:
        codes, digits = _nonzero_words(M.size, M.orders, degree)
        A = _relation_rows(M, degree, codes, digits)
        name = f"{label} degree {degree}: {len(A.indptr) - 1} x {A.ncols}"
        yield name + " mod p", lambda m, A=A: m.rank_modp(A.indptr, A.indices, np.mod(A.data, 32003), A.ncols, 32003)
        yield name + " over Q", lambda m, A=A: m.rank_integer(A.indptr, A.indices, A.data, A.ncols)


def fold_workloads():
    for n, d, L in [(3, 4, 12), (4, 3, 10)]:
        alg = algebra(n, d)
        words = list(itertools.product(range(1, n + 1), repeat=L))
        flat = np.asarray([g - 1 for w in words for g in w], dtype=np.int64)
        offsets = np.arange(0, L * len(words) + 1, L, dtype=np.int64)
        starts = np.full(len(words), alg.normal_form_index([]), dtype=np.int64)
        table = alg.action_table
        yield (f"normal forms NC_A({n},{d}): {len(words)} words of length {L}",
               lambda m, t=table, f=flat, o=offsets, s=starts: list(m.apply_words(t, f, o, s)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python kernels are available")
    print(f"{'workload':<58} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for name, fn in itertools.chain(rank_workloads(), fold_workloads()):
        t_py, r_py = _best(lambda: fn(backends["python"]), args.repeat)
        if "cython" in backends:
            t_cy, r_cy = _best(lambda: fn(backends["cython"]), args.repeat)
            if r_cy != r_py:
                raise SystemExit(f"backends disagree on {name}")
            print(f"{name:<58} {t_py:9.3f} {t_cy:9.3f} {t_py / t_cy:7.1f}x")
        else:
            print(f"{name:<58} {t_py:9.3f} {'-':>9} {'-':>8}")


if __name__ == "__main__":
    main()
