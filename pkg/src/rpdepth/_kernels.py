"""Hot numeric kernels: per-direction median/MAD and outlyingness reductions.

Each kernel exists twice, as a numba ``@njit`` version and as a pure-numpy
version computing bit-identical results.  The numba path is used when numba
imports cleanly; set ``RPD_DISABLE_NUMBA=1`` (or numba's own
``NUMBA_DISABLE_JIT``) to force the numpy path.  ``benchmarks/bench_kernels.py``
compares the two.
"""

import os

import numpy as np

try:
    if os.environ.get("RPD_DISABLE_NUMBA"):
        raise ImportError
    from numba import njit, prange

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


def median_mad_columns_numpy(P):
    """Column-wise sample median and MAD of a (n, m) projection matrix.

    Median convention: middle order statistic for odd n, midpoint of the two
    middle order statistics for even n.  MAD is the same median applied to
    absolute deviations.
    """
    n = P.shape[0]
    S = np.sort(P, axis=0)
    if n % 2:
        med = S[(n - 1) // 2].copy()
    else:
        med = 0.5 * (S[n // 2 - 1] + S[n // 2])
    A = np.sort(np.abs(P - med), axis=0)
    if n % 2:
        mad = A[(n - 1) // 2].copy()
    else:
        mad = 0.5 * (A[n // 2 - 1] + A[n // 2])
    return med, mad


def max_out_numpy(Q, med, mad):
    """Per-row maximum outlyingness over directions with positive MAD.

    Q holds projections of the queries, one column per direction; med/mad are
    the per-direction projection statistics (all mad > 0 here).  Returns the
    row-wise max of |q - med| / mad and the first column index attaining it.
    """
    O = np.abs(Q - med) / mad
    arg = np.argmax(O, axis=1)
    best = O[np.arange(Q.shape[0]), arg]
    return best, arg.astype(np.int64)


def max_out_zero_mad_numpy(Q, med, mad):
    """Like :func:`max_out_numpy` but with the zero-MAD convention.

    A direction with mad == 0 contributes outlyingness +inf when the absolute
    numerator is positive and 0 when it is also zero, so a point off the
    degenerate hyperplane gets depth exactly 0.
    """
    num = np.abs(Q - med)
    O = np.where(mad > 0.0, num / np.where(mad > 0.0, mad, 1.0),
                 np.where(num > 0.0, np.inf, 0.0))
    arg = np.argmax(O, axis=1)
    best = O[np.arange(Q.shape[0]), arg]
    return best, arg.astype(np.int64)


if NUMBA_ENABLED:

    @njit(cache=True, parallel=True, nogil=True)
    def median_mad_columns_numba(P):  # pragma: no cover - numba
        n, m = P.shape
        med = np.empty(m)
        mad = np.empty(m)
        for k in prange(m):
            col = np.sort(P[:, k].copy())
            if n % 2:
                mc = col[(n - 1) // 2]
            else:
                mc = 0.5 * (col[n // 2 - 1] + col[n // 2])
            dev = np.sort(np.abs(P[:, k] - mc))
            if n % 2:
                md = dev[(n - 1) // 2]
            else:
                md = 0.5 * (dev[n // 2 - 1] + dev[n // 2])
            med[k] = mc
            mad[k] = md
        return med, mad

    @njit(cache=True, parallel=True, nogil=True)
    def max_out_numba(Q, med, mad):  # pragma: no cover - numba
        nq, m = Q.shape
        best = np.empty(nq)
        arg = np.empty(nq, np.int64)
        for i in prange(nq):
            b = -1.0
            a = 0
            for k in range(m):
                o = abs(Q[i, k] - med[k]) / mad[k]
                if o > b:
                    b = o
                    a = k
            best[i] = b
            arg[i] = a
        return best, arg

    @njit(cache=True, parallel=True, nogil=True)
    def max_out_zero_mad_numba(Q, med, mad):  # pragma: no cover - numba
        nq, m = Q.shape
        best = np.empty(nq)
        arg = np.empty(nq, np.int64)
        for i in prange(nq):
            b = -1.0
            a = 0
            for k in range(m):
                num = abs(Q[i, k] - med[k])
                if mad[k] > 0.0:
                    o = num / mad[k]
                elif num > 0.0:
                    o = np.inf
                else:
                    o = 0.0
                if o > b:
                    b = o
                    a = k
            best[i] = b
            arg[i] = a
        return best, arg

    # the sort-heavy statistic is faster through numpy's vectorized sort
    # (measured in benchmarks/bench_kernels.py); numba wins on the reduction
    median_mad_columns = median_mad_columns_numpy
    max_out = max_out_numba
    max_out_zero_mad = max_out_zero_mad_numba
else:
    median_mad_columns = median_mad_columns_numpy
    max_out = max_out_numpy
    max_out_zero_mad = max_out_zero_mad_numpy
