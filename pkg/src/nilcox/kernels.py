"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``NILCOX_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

from nilcox import _kernels_py

if os.environ.get("NILCOX_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from nilcox import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rank_modp = _impl.rank_modp
apply_word = _impl.apply_word
apply_words = _impl.apply_words


def rank_integer(indptr, indices, data, ncols):
    try:
        return _impl.rank_integer(indptr, indices, data, ncols)
    except OverflowError:
        return _kernels_py.rank_integer(indptr, indices, data, ncols)


def backends():
    """Available kernel modules keyed by name, for tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from nilcox import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
