import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfrac import (
    DomainError,
    GridSpec,
    HurstEstimate,
    InsufficientDataError,
    TimeSeries,
    estimate_hurst,
    estimate_lfd,
    gqv_coefficients,
    lfd_from_hurst,
    loess_smooth,
    simulate_fbm,
    smooth_estimates,
)
from mfrac.errors import DegenerateSegmentWarning

from conftest import rng_for


# --- increment coefficients ------------------------------------------------

def test_coefficients_order_two():
    assert gqv_coefficients(2) == pytest.approx([1.0, -2.0, 1.0])


def test_coefficients_order_three():
    assert gqv_coefficients(3) == pytest.approx([-1.0, 3.0, -3.0, 1.0])


@pytest.mark.parametrize("L", range(2, 9))
def test_coefficients_annihilate_affine(L):
    a = gqv_coefficients(L)
    assert a.sum() == pytest.approx(0.0, abs=1e-12)
    assert (a * np.arange(L + 1)).sum() == pytest.approx(0.0, abs=1e-12)


def test_coefficients_domain():
    with pytest.raises(DomainError):
        gqv_coefficients(1)


# --- the estimator ---------------------------------------------------------

def test_output_shape_and_range(fbm_paths_16k):
    est = estimate_hurst(fbm_paths_16k(0.5, 0))
    assert len(est.raw) == 100
    assert np.all((est.raw >= 0.0) & (est.raw <= 1.0))
    assert np.all(np.diff(est.interval_starts) > 0)
    assert est.interval_starts[0] == 0.0


def test_consistency_on_exact_fbm(fbm_paths_16k):
    means = [estimate_hurst(fbm_paths_16k(0.7, seed)).raw.mean() for seed in range(5)]
    assert abs(np.mean(means) - 0.7) <= 0.1


def test_affine_series_degenerate():
    t = np.linspace(0.0, 1.0, 801)
    with pytest.warns(DegenerateSegmentWarning):
        est = estimate_hurst(TimeSeries(t, 3.0 * t + 1.0))
    assert np.all(est.raw == 1.0)
    assert np.all(est.degenerate)


def test_affine_increments_annhilated():
    # second differences of resampled affine data vanish to machine precision
    from mfrac.estimation import _localized_variations

    t = np.linspace(0.0, 1.0, 801)
    x = -2.0 * t + 5.0
    a = gqv_coefficients(2)
    sums, counts = _localized_variations(x, 800, 100, a)
    assert np.all(sums <= (1e-12 * 5.0) ** 2 * counts)


def test_insufficient_data():
    t = np.linspace(0.0, 1.0, 399)
    with pytest.raises(InsufficientDataError):
        estimate_hurst(TimeSeries(t, np.sin(t)))


def test_time_rescaling_invariance(fbm_paths_16k):
    X = fbm_paths_16k(0.5, 3)
    shifted = TimeSeries(5.0 + 3.0 * X.times, X.values)
    a = estimate_hurst(X)
    b = estimate_hurst(shifted)
    assert b.raw == pytest.approx(a.raw)
    assert b.interval_starts == pytest.approx(5.0 + 3.0 * a.interval_starts)


def test_monotone_refinement(fbm_paths_16k):
    # absolute error decreases from 2^11+1 to 2^14+1 points, averaged over seeds
    seeds = range(8)
    for H in (0.3, 0.5, 0.7):
        errs = {}
        for n in (2**11 + 1, 2**14 + 1):
            vals = []
            for seed in seeds:
                if n == 2**14 + 1:
                    X = fbm_paths_16k(H, seed)
                else:
                    X = simulate_fbm(GridSpec.uniform(0.0, 1.0, n), H, seed=seed)
                vals.append(abs(estimate_hurst(X).raw.mean() - H))
            errs[n] = np.mean(vals)
        assert errs[2**14 + 1] < errs[2**11 + 1]


def test_nonuniform_grid_fallback():
    gen = rng_for("nonuniform estimation")
    t = np.sort(gen.uniform(0.0, 1.0, 4096))
    t[0], t[-1] = 0.0, 1.0
    t = np.unique(t)
    x = np.cumsum(gen.standard_normal(len(t))) * 0.01
    est = estimate_hurst(TimeSeries(t, x))
    assert np.all((est.raw >= 0.0) & (est.raw <= 1.0))


@given(
    st.integers(min_value=401, max_value=900),
    st.integers(min_value=0, max_value=2**32 - 1),
)
@settings(max_examples=20, deadline=None)
def test_clamp_invariant_fuzz(n, seed):
    gen = np.random.Generator(np.random.PCG64(seed))
    t = np.linspace(0.0, 1.0, n)
    x = gen.standard_normal(n).cumsum() * gen.uniform(0.1, 10.0)
    est = estimate_hurst(TimeSeries(t, x))
    assert np.all((est.raw >= 0.0) & (est.raw <= 1.0))


# --- local fractal dimension -------------------------------------------------

def test_lfd_is_two_minus_hurst(fbm_paths_16k):
    X = fbm_paths_16k(0.5, 1)
    h = estimate_hurst(X)
    d = estimate_lfd(X)
    assert d.raw == pytest.approx(2.0 - h.raw)
    assert np.all((d.raw >= 1.0) & (d.raw <= 2.0))


def test_lfd_worked_values():
    est = HurstEstimate(
        interval_starts=np.array([0.0, 0.01, 0.02]),
        raw=np.array([0.2912691, 0.0, 1.0]),
    )
    lfd = lfd_from_hurst(est)
    assert f"{lfd.raw[0]:.6f}" == "1.708731"
    assert lfd.raw[1] == 2.0
    assert lfd.raw[2] == 1.0


# --- smoothing ---------------------------------------------------------------

def test_smoothing_preserves_constants():
    est = HurstEstimate(interval_starts=np.linspace(0, 1, 50), raw=np.full(50, 0.42))
    sm = smooth_estimates(est)
    assert sm.smoothed == pytest.approx(np.full(50, 0.42), abs=1e-12)


def test_smoothing_reproduces_affine():
    x = np.linspace(0.0, 1.0, 80)
    y = 0.2 + 0.5 * x
    assert loess_smooth(x, y) == pytest.approx(y, abs=1e-10)


def test_smoothing_reduces_variance():
    gen = rng_for("loess variance")
    wins = 0
    for _ in range(100):
        x = np.linspace(0.0, 1.0, 60)
        y = 0.5 + gen.uniform(-0.2, 0.2, 60)
        sm = loess_smooth(x, y, span=0.5)
        if sm.var() < y.var():
            wins += 1
    assert wins == 100


def test_smoothing_clamped_to_unit_interval():
    est = HurstEstimate(
        interval_starts=np.linspace(0, 1, 40),
        raw=np.clip(np.linspace(-0.5, 1.5, 40), 0, 1),
    )
    sm = smooth_estimates(est, span=0.3)
    assert np.all((sm.smoothed >= 0.0) & (sm.smoothed <= 1.0))


def test_smoothing_idempotent_on_smooth_data():
    x = np.linspace(0.0, 1.0, 50)
    y = 0.3 + 0.1 * x
    once = loess_smooth(x, y)
    twice = loess_smooth(x, once)
    assert twice == pytest.approx(once, abs=1e-9)


def test_span_domain():
    est = HurstEstimate(interval_starts=np.linspace(0, 1, 10), raw=np.full(10, 0.5))
    with pytest.raises(DomainError):
        smooth_estimates(est, span=0.0)
    with pytest.raises(DomainError):
        smooth_estimates(est, span=-1.0)
