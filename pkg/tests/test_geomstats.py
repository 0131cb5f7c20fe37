import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfrac import (
    DomainError,
    InsufficientDataError,
    LevelQuery,
    TimeSeries,
    cross_count,
    cross_mean,
    cross_rate,
    exc_area,
    extremum,
    rs_index,
    sojourn,
    streak_stats,
)

from conftest import RSI_EXPECTED, RSI_PRICES, rng_for

RAMP = TimeSeries(np.linspace(0.0, 1.0, 101), np.linspace(0.0, 1.0, 101))


def brute_sojourn(X, q):
    t1, t2 = q.subI if q.subI else (X.t_start, X.t_end)
    delta = (t2 - t1) / q.N
    count = 0
    for k in range(q.N + 1):
        v = float(np.interp(t1 + k * delta, X.times, X.values))
        if (q.direction == "greater" and v >= q.A) or (q.direction == "lower" and v <= q.A):
            count += 1
    return delta * count


def brute_exc_area(X, q):
    t1, t2 = q.subI if q.subI else (X.t_start, X.t_end)
    delta = (t2 - t1) / q.N
    contribs = []
    for k in range(q.N + 1):
        v = float(np.interp(t1 + k * delta, X.times, X.values))
        c = max(v - q.A, 0.0) if q.direction == "greater" else max(q.A - v, 0.0)
        contribs.append(c)
    return delta * float(np.sum(np.asarray(contribs)))


def brute_cross_count(X, A):
    signs = []
    prev = 0
    for v in X.values:
        s = int(v > A) - int(v < A)
        if s != 0:
            prev = s
        if prev != 0:
            signs.append(prev)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def brute_streaks(X, q):
    t1, t2 = q.subI if q.subI else (X.t_start, X.t_end)
    delta = (t2 - t1) / q.N
    runs, run = [], 0
    for k in range(q.N + 1):
        v = float(np.interp(t1 + k * delta, X.times, X.values))
        ok = v >= q.A if q.direction == "greater" else v <= q.A
        if ok:
            run += 1
        elif run:
            runs.append(run)
            run = 0
    if run:
        runs.append(run)
    if not runs:
        return {"longest": 0.0, "mean": 0.0}
    durations = np.asarray(runs, dtype=float) * delta
    return {"longest": float(np.max(durations)), "mean": float(np.mean(durations))}


def _random_series(gen, n=60):
    t = np.sort(gen.uniform(0.0, 2.0, n))
    t[0], t[-1] = 0.0, 2.0
    t = np.unique(t)
    return TimeSeries(t, gen.standard_normal(len(t)).cumsum() * 0.2)


# --- sojourn ----------------------------------------------------------------

def test_sojourn_ramp():
    q = LevelQuery(A=0.5, direction="greater", N=10000)
    assert abs(sojourn(RAMP, q) - 0.5) <= 1.0 / 10000 + 1e-12


def test_sojourn_constant_above():
    X = TimeSeries(np.linspace(0.0, 2.0, 11), np.full(11, 1.0))
    q = LevelQuery(A=0.0, direction="greater", N=100)
    delta = 2.0 / 100
    assert sojourn(X, q) == pytest.approx(2.0 + delta)


def test_sojourn_matches_brute_force_exactly():
    gen = rng_for("sojourn oracle")
    for _ in range(20):
        X = _random_series(gen)
        q = LevelQuery(A=float(gen.normal()), direction=gen.choice(["greater", "lower"]), N=199)
        assert sojourn(X, q) == brute_sojourn(X, q)


def test_sojourn_subinterval():
    q = LevelQuery(A=0.5, direction="lower", N=1000, subI=(0.5, 0.8))
    val = sojourn(RAMP, q)
    assert val == pytest.approx(0.3 / 1000, abs=1e-12)  # only the t=0.5 endpoint


def test_sojourn_invalid_subinterval():
    with pytest.raises(DomainError):
        sojourn(RAMP, LevelQuery(A=0.0, subI=(0.5, 1.5)))


def test_sojourn_two_sided_cover():
    gen = rng_for("sojourn cover")
    for _ in range(10):
        X = _random_series(gen)
        A = float(gen.normal())
        up = sojourn(X, LevelQuery(A=A, direction="greater", N=500))
        down = sojourn(X, LevelQuery(A=A, direction="lower", N=500))
        span = X.t_end - X.t_start
        assert up + down >= span - 1e-9


# --- excursion area -----------------------------------------------------------

def test_exc_area_ramp():
    q = LevelQuery(A=0.0, direction="greater", N=10000)
    assert abs(exc_area(RAMP, q) - 0.5) <= 2.0 / 10000


def test_exc_area_above_max_is_zero():
    q = LevelQuery(A=2.0, direction="greater", N=500)
    assert exc_area(RAMP, q) == 0.0


def test_exc_area_matches_brute_force_exactly():
    gen = rng_for("exc_area oracle")
    for _ in range(20):
        X = _random_series(gen)
        q = LevelQuery(A=float(gen.normal()), direction=gen.choice(["greater", "lower"]), N=173)
        assert exc_area(X, q) == brute_exc_area(X, q)


def test_exc_area_monotone_in_level():
    gen = rng_for("exc_area monotone")
    X = _random_series(gen)
    levels = np.linspace(-2.0, 2.0, 9)
    vals = [exc_area(X, LevelQuery(A=a, direction="greater", N=400)) for a in levels]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


# --- RSI -----------------------------------------------------------------------

def test_rsi_reference_series():
    out = rs_index(RSI_PRICES, period=14)
    assert np.all(np.isnan(out[:14]))
    assert not np.any(np.isnan(out[14:]))
    assert out[14:] == pytest.approx(RSI_EXPECTED, abs=5e-5)


def test_rsi_all_gains():
    out = rs_index(np.arange(1.0, 31.0), period=14)
    assert np.all(out[14:] == 100.0)


def test_rsi_all_losses():
    out = rs_index(np.arange(31.0, 1.0, -1.0), period=14)
    assert np.all(out[14:] == 0.0)


def test_rsi_bounds_property():
    gen = rng_for("rsi bounds")
    for _ in range(20):
        prices = 100.0 + gen.standard_normal(60).cumsum()
        out = rs_index(prices, period=14)
        defined = out[~np.isnan(out)]
        assert np.all((defined >= 0.0) & (defined <= 100.0))


def test_rsi_too_short():
    with pytest.raises(InsufficientDataError):
        rs_index([1.0, 2.0, 3.0], period=14)


# --- crossings -------------------------------------------------------------------

def test_cross_count_ramp():
    assert cross_count(RAMP, 0.5) == 1


def test_cross_count_constant():
    X = TimeSeries(np.linspace(0, 1, 11), np.full(11, 2.0))
    assert cross_count(X, 0.0) == 0


def test_cross_count_cosine_full_period():
    # two interior zero crossings (t = 1/4 and 3/4)
    t = np.arange(0.0, 1.0 + 1e-3, 1e-3)
    X = TimeSeries(t, np.cos(2 * np.pi * t))
    assert cross_count(X, 0.0) == brute_cross_count(X, 0.0) == 2


def test_cross_count_sine_endpoints_touch():
    # sine starts and ends at the level; touching is not crossing
    t = np.arange(0.0, 1.0 + 1e-3, 1e-3)
    X = TimeSeries(t, np.sin(2 * np.pi * t))
    assert cross_count(X, 0.0) == brute_cross_count(X, 0.0) == 1


def test_cross_count_matches_brute_force():
    gen = rng_for("crossings oracle")
    for _ in range(25):
        X = _random_series(gen)
        A = float(gen.normal(scale=0.5))
        assert cross_count(X, A) == brute_cross_count(X, A)


def test_cross_rate_ramp_on_long_interval():
    X = TimeSeries(np.linspace(0.0, 2.0, 101), np.linspace(0.0, 2.0, 101))
    assert cross_rate(X, 1.0) == pytest.approx(0.5)


def test_cross_rate_constant():
    X = TimeSeries(np.linspace(0, 1, 11), np.full(11, 2.0))
    assert cross_rate(X, 0.0) == 0.0


def test_cross_mean_is_crossing_of_empirical_mean():
    gen = rng_for("cross mean")
    X = _random_series(gen)
    assert cross_mean(X) == cross_count(X, float(np.mean(X.values)))


def test_exact_hits_carry_previous_sign():
    X = TimeSeries(np.arange(5.0), np.array([-1.0, 0.0, -1.0, 0.0, 1.0]))
    assert cross_count(X, 0.0) == 1


# --- streaks ----------------------------------------------------------------------

def test_streaks_ramp():
    q = LevelQuery(A=0.5, direction="greater", N=1000)
    st_ = streak_stats(RAMP, q)
    assert abs(st_["longest"] - 0.5) <= 1.0 / 1000 + 1e-12


def test_streaks_never_met():
    q = LevelQuery(A=5.0, direction="greater", N=100)
    assert streak_stats(RAMP, q) == {"longest": 0.0, "mean": 0.0}


def test_streaks_match_brute_force():
    gen = rng_for("streaks oracle")
    for _ in range(20):
        X = _random_series(gen)
        q = LevelQuery(A=float(gen.normal(scale=0.3)), direction=gen.choice(["greater", "lower"]), N=211)
        assert streak_stats(X, q) == brute_streaks(X, q)


# --- extrema ------------------------------------------------------------------------

def test_extremum_ramp():
    assert extremum(RAMP, "max") == {"value": 1.0, "time": 1.0}
    assert extremum(RAMP, "min") == {"value": 0.0, "time": 0.0}


def test_extremum_constant_earliest_time():
    X = TimeSeries(np.linspace(0.0, 1.0, 5), np.full(5, 3.5))
    assert extremum(X, "max") == {"value": 3.5, "time": 0.0}
    assert extremum(X, "min") == {"value": 3.5, "time": 0.0}


def test_extremum_matches_linear_scan():
    gen = rng_for("extremum oracle")
    for _ in range(20):
        X = _random_series(gen)
        best_v, best_t = -np.inf, None
        for t, v in zip(X.times, X.values):
            if v > best_v:
                best_v, best_t = float(v), float(t)
        assert extremum(X, "max") == {"value": best_v, "time": best_t}


def test_extremum_kind_checked():
    with pytest.raises(DomainError):
        extremum(RAMP, "median")


# --- hypothesis properties ------------------------------------------------------------

@given(
    st.lists(st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=3, max_size=40),
    st.floats(min_value=-5, max_value=5, allow_nan=False),
)
@settings(max_examples=100, deadline=None)
def test_sojourn_brute_force_property(values, A):
    t = np.arange(len(values), dtype=float)
    X = TimeSeries(t, np.asarray(values))
    q = LevelQuery(A=A, direction="greater", N=57)
    assert sojourn(X, q) == brute_sojourn(X, q)
    assert exc_area(X, q) == brute_exc_area(X, q)
