"""Optional numba-accelerated inner loops.

The wavelet double sum is partitioned over grid points; each point's
accumulation runs in a fixed (j, k) order, so results are bit-identical for
any thread count.  Falls back to a vectorized numpy implementation when
numba is unavailable.
"""

from __future__ import annotations

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def set_threads(n: int | None) -> None:
    if n is not None and HAVE_NUMBA:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


if HAVE_NUMBA:

    @numba.njit(parallel=True, fastmath=False, cache=True)
    def _wavelet_sum(t, J, hvals, weights):  # pragma: no cover (jit)
        n = t.shape[0]
        out = np.zeros(n)
        for i in numba.prange(n):
            ti = t[i]
            acc = 0.0
            for j in range(J + 1):
                pj = 1 << j
                u = pj * ti
                off = pj - 1
                kmax = int(np.ceil(u))
                if kmax > pj:
                    kmax = pj
                for k in range(kmax):
                    x = u - k
                    e = hvals[off + k] + 0.5
                    g = x**e
                    x1 = x - 0.5
                    if x1 > 0.0:
                        g -= 2.0 * x1**e
                    x2 = x - 1.0
                    if x2 > 0.0:
                        g += x2**e
                    acc += g * weights[off + k]
            out[i] = acc
        return out


def _wavelet_sum_numpy(t, J, hvals, weights):
    out = np.zeros(t.shape[0])
    block = 1 << 12
    for j in range(J + 1):
        pj = 1 << j
        off = pj - 1
        u = t * float(pj)
        for k0 in range(0, pj, block):
            ks = np.arange(k0, min(k0 + block, pj))
            x = u[None, :] - ks[:, None]
            e = (hvals[off + ks] + 0.5)[:, None]
            g = np.maximum(x, 0.0) ** e
            g -= 2.0 * np.maximum(x - 0.5, 0.0) ** e
            g += np.maximum(x - 1.0, 0.0) ** e
            out += weights[off + ks] @ g
    return out


def wavelet_sum(t: np.ndarray, J: int, hvals: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Sum over levels j<=J and translates k of kernel(j,k,H[j,k],t)*w[j,k].

    ``hvals`` and ``weights`` are flat heap-indexed arrays (index 2^j-1+k);
    the weight already carries the innovation and the 1/(2^{jH}(H+1/2))
    normalization.
    """
    if HAVE_NUMBA:
        return _wavelet_sum(t, J, hvals, weights)
    return _wavelet_sum_numpy(t, J, hvals, weights)
