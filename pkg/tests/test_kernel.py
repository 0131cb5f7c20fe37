import numpy as np
import pytest
from scipy.integrate import quad

from mfrac import DomainError, haar_kernel

from conftest import rng_for


def kernel_by_quadrature(j: int, k: int, H: float, t: float) -> float:
    """Adaptive quadrature of the defining integral of (t-s)_+^{H-1/2}
    against the Haar wavelet, split over its two dyadic subintervals."""
    a, mid, b = k / 2**j, (k + 0.5) / 2**j, (k + 1) / 2**j
    amp = 2.0 ** (j / 2)

    def integrand(s):
        base = t - s
        return base ** (H - 0.5) if base > 0.0 else 0.0

    total = 0.0
    for lo, hi, sign in ((a, mid, amp), (mid, b, -amp)):
        if t <= lo:
            continue
        hi_eff = min(hi, t)
        pts = [t] if lo < t < hi_eff else None
        val, _err = quad(integrand, lo, hi_eff, limit=200, points=pts)
        total += sign * val
    return total


def test_unit_level_half_hurst_quarter():
    assert haar_kernel(0, 0, 0.5, 0.25) == pytest.approx(0.25, abs=1e-15)


def test_telescopes_to_zero_at_one():
    assert haar_kernel(0, 0, 0.5, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_mid_level_value_matches_quadrature():
    closed = haar_kernel(3, 2, 0.7, 0.4)
    assert closed == pytest.approx(0.016699502003327718, abs=1e-12)
    assert abs(closed - kernel_by_quadrature(3, 2, 0.7, 0.4)) < 1e-8


def test_vanishes_left_of_support():
    assert haar_kernel(4, 5, 0.3, 5 / 16) == 0.0
    assert haar_kernel(4, 5, 0.3, 0.1) == 0.0
    assert haar_kernel(4, 5, 0.3, -2.0) == 0.0


def test_random_tuples_match_quadrature():
    gen = rng_for("kernel quadrature")
    for _ in range(25):
        j = int(gen.integers(0, 9))
        k = int(gen.integers(0, 2**j))
        H = float(gen.uniform(0.05, 0.95))
        t = float(gen.uniform(0.0, 1.0))
        assert abs(haar_kernel(j, k, H, t) - kernel_by_quadrature(j, k, H, t)) < 1e-8


def test_continuous_in_t():
    ts = np.linspace(0.0, 1.0, 4001)
    vals = haar_kernel(2, 1, 0.35, ts)
    assert np.all(np.abs(np.diff(vals)) < 0.1)


def test_vectorized_matches_scalar():
    ts = np.linspace(0.0, 1.0, 17)
    vec = haar_kernel(3, 4, 0.6, ts)
    assert vec == pytest.approx([haar_kernel(3, 4, 0.6, float(t)) for t in ts])


@pytest.mark.parametrize("H", [0.0, 1.0, -0.2, 1.5])
def test_hurst_out_of_domain(H):
    with pytest.raises(DomainError):
        haar_kernel(1, 0, H, 0.5)


@pytest.mark.parametrize("j,k", [(0, 1), (2, 4), (3, -1)])
def test_translates_out_of_range(j, k):
    with pytest.raises(DomainError):
        haar_kernel(j, k, 0.5, 0.5)
