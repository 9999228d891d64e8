"""Compiled versions of the all-paths scan."""

import numpy as np
from numba import njit

from cfum._kernels import _scan_root_py

_scan_root = njit(cache=True)(_scan_root_py)


@njit(cache=True)
def first_violation(indptr, indices, colors, k, code):
    """Lexicographically smallest violating pair ``(u, v)``, ``u <= v``; ``(-1, -1)`` if none."""
    n = indptr.shape[0] - 1
    node = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)
    maxc = np.empty(n, np.int64)
    cnt = np.zeros(k + 1, np.int64)
    for u in range(n):
        v = _scan_root(u, indptr, indices, colors, k, code, node, parent, nxt, maxc, cnt)
        if v >= 0:
            return u, v
    return -1, -1
