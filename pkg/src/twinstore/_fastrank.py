"""Optional numba-compiled echelon kernel for the rank-heavy paths.

Pivot positions are all the leakage oracle needs, and they are invariant
under row scaling, so the kernel eliminates by cross-multiplication
(pv * row_i - f * row_r) and never computes modular inverses.  Products
stay below 2^62 for p < 2^31, so int64 arithmetic is exact.

When numba is unavailable the package falls back to the pure-numpy
elimination in field._row_reduce; both paths must produce identical
pivot columns (property-tested).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised via the fallback path
    njit = None


if njit is not None:

    @njit(cache=True)
    def _echelon_pivots_kernel(m, p):  # pragma: no cover - compiled
        rows, cols = m.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        npiv = 0
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            pr = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(c, cols):
                    tmp = m[r, j]
                    m[r, j] = m[pr, j]
                    m[pr, j] = tmp
            pv = m[r, c]
            for i in range(r + 1, rows):
                f = m[i, c]
                if f != 0:
                    for j in range(c, cols):
                        m[i, j] = (pv * m[i, j] - f * m[r, j]) % p
            pivots[npiv] = c
            npiv += 1
            r += 1
        return pivots[:npiv]

    def fast_pivot_columns(arr: np.ndarray, p: int):
        """Pivot columns of the row echelon form, or None when unavailable."""
        m = np.ascontiguousarray(arr % p)
        return tuple(int(c) for c in _echelon_pivots_kernel(m, p))

else:  # pragma: no cover - depends on the environment

    def fast_pivot_columns(arr: np.ndarray, p: int):
        return None
