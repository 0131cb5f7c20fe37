"""Fractionally integrated Haar wavelet kernel.

The building block of the Haar-based multifractional process: the integral
of (t - s)_+^{H - 1/2} against the Haar wavelet h_{j,k} has the closed form

    [ (2^j t - k)_+^{H+1/2} - 2 (2^j t - k - 1/2)_+^{H+1/2}
      + (2^j t - k - 1)_+^{H+1/2} ] / ( 2^{j H} (H + 1/2) )

which is continuous in t and exactly zero for t <= k / 2^j.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def _validate_jkh(j: int, k: int, H: float) -> None:
    if j < 0 or int(j) != j:
        raise DomainError(f"level j must be a nonnegative integer, got {j!r}")
    if k < 0 or k > 2**j - 1 or int(k) != k:
        raise DomainError(f"translate k must lie in [0, 2^{j} - 1], got {k!r}")
    if not (0.0 < H < 1.0):
        raise DomainError(f"Hurst value must lie in (0, 1), got {H!r}")


def haar_kernel(j: int, k: int, H: float, t):
    """Evaluate the level-(j,k) kernel with roughness H at time(s) t.

    Accepts a scalar or array t and returns a matching float result.
    """
    _validate_jkh(j, k, H)
    t_arr = np.asarray(t, dtype=float)
    u = t_arr * 2.0**j - k
    e = H + 0.5
    g = np.maximum(u, 0.0) ** e
    g -= 2.0 * np.maximum(u - 0.5, 0.0) ** e
    g += np.maximum(u - 1.0, 0.0) ** e
    g /= 2.0 ** (j * H) * e
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(g)
    return g
