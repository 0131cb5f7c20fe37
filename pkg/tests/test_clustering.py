import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.metrics import adjusted_rand_score

from mfrac import (
    DataError,
    DomainError,
    GridSpec,
    constant,
    hclust_features,
    lloyd_kmeans,
    pairwise_distance,
    simulate_ghbmp,
)
from mfrac.clustering import MONOTONE_LINKAGES, distance_matrix, hclust_hurst, kmeans_hurst
from mfrac.estimation import EstimatorParams

from conftest import rng_for


# --- distances ---------------------------------------------------------------

def test_euclidean():
    assert pairwise_distance([0, 0], [3, 4]) == 5.0


def test_manhattan():
    assert pairwise_distance([0, 0], [3, 4], "manhattan") == 7.0


def test_supremum():
    assert pairwise_distance([0, 0], [3, 4], "supremum") == 4.0


def test_minkowski_collapses_to_euclidean():
    u, v = [1.0, 2.0, 3.0], [0.5, -1.0, 2.0]
    assert pairwise_distance(u, v, "minkowski", p=2) == pytest.approx(
        pairwise_distance(u, v, "euclidean")
    )


def test_canberra_zero_over_zero():
    assert pairwise_distance([0.0, 1.0], [0.0, 3.0], "canberra") == pytest.approx(0.5)


def test_custom_callable_metric():
    half = lambda u, v: 0.5 * float(np.abs(u - v).sum())
    assert pairwise_distance([0, 0], [3, 4], half) == 3.5


def test_length_mismatch():
    with pytest.raises(DataError):
        pairwise_distance([1.0], [1.0, 2.0])


def test_minkowski_bad_order():
    with pytest.raises(DomainError):
        pairwise_distance([0.0], [1.0], "minkowski", p=0.5)


_vectors = st.lists(
    st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=1, max_size=6
)


@given(_vectors, _vectors, _vectors)
@settings(max_examples=100, deadline=None)
def test_metric_axioms(u, v, w):
    n = min(len(u), len(v), len(w))
    u, v, w = np.array(u[:n]), np.array(v[:n]), np.array(w[:n])
    for method in ("euclidean", "manhattan", "supremum", "canberra"):
        duv = pairwise_distance(u, v, method)
        assert duv >= 0.0
        assert duv == pytest.approx(pairwise_distance(v, u, method))
        assert pairwise_distance(u, u, method) == 0.0
        duw = pairwise_distance(u, w, method)
        dwv = pairwise_distance(w, v, method)
        assert duv <= duw + dwv + 1e-9


# --- hierarchical clustering ---------------------------------------------------

def naive_agglomerate(rows: np.ndarray, linkage: str):
    """Recompute-everything agglomeration over original pairwise distances."""
    n = rows.shape[0]
    D0 = distance_matrix(rows)
    clusters = {i: [i] for i in range(n)}
    ids = {i: i for i in range(n)}
    steps = []
    order = list(range(n))
    for step in range(n - 1):
        best = None
        for a_pos in range(len(order)):
            for b_pos in range(a_pos + 1, len(order)):
                a, b = order[a_pos], order[b_pos]
                cross = [D0[i, j] for i in clusters[a] for j in clusters[b]]
                if linkage == "single":
                    d = min(cross)
                elif linkage == "complete":
                    d = max(cross)
                else:
                    d = sum(cross) / len(cross)
                if best is None or d < best[0]:
                    best = (d, a_pos, b_pos)
        d, a_pos, b_pos = best
        a, b = order[a_pos], order[b_pos]
        steps.append((ids[a], ids[b], d))
        clusters[a] = clusters[a] + clusters[b]
        ids[a] = n + step
        del order[b_pos]
    return steps


@pytest.mark.parametrize("linkage", ["single", "complete", "average"])
def test_merge_sequence_matches_naive_oracle(linkage):
    gen = rng_for(f"hclust oracle {linkage}")
    for _ in range(10):
        rows = gen.uniform(0.0, 1.0, size=(6, 4))
        tree = hclust_features(rows, linkage=linkage)
        expected = naive_agglomerate(rows, linkage)
        assert [(a, b) for a, b, _h in tree.steps] == [(a, b) for a, b, _h in expected]
        got_h = [h for _a, _b, h in tree.steps]
        exp_h = [h for _a, _b, h in expected]
        if linkage in ("single", "complete"):
            assert got_h == exp_h  # min/max updates are exact
        else:
            assert got_h == pytest.approx(exp_h, rel=1e-12)


def test_merge_count_and_cut_sizes():
    gen = rng_for("hclust cuts")
    rows = gen.standard_normal((9, 3))
    tree = hclust_features(rows)
    assert len(tree.steps) == 8
    for k in range(1, 10):
        labels = tree.cut_k(k)
        assert len(np.unique(labels)) == k


def test_cut_by_height():
    rows = np.array([[0.0], [0.1], [5.0], [5.1]])
    tree = hclust_features(rows, linkage="single")
    labels = tree.cut_h(0.5)
    assert len(np.unique(labels)) == 2
    assert labels[0] == labels[1]
    assert labels[2] == labels[3]


@pytest.mark.parametrize("linkage", MONOTONE_LINKAGES)
def test_monotone_linkages_have_nondecreasing_heights(linkage):
    gen = rng_for(f"monotone {linkage}")
    for _ in range(10):
        rows = gen.uniform(0.0, 1.0, size=(8, 5))
        tree = hclust_features(rows, linkage=linkage)
        heights = [h for _a, _b, h in tree.steps]
        assert all(h2 >= h1 - 1e-12 for h1, h2 in zip(heights, heights[1:]))


def test_non_euclidean_methods_run():
    gen = rng_for("hclust methods")
    rows = gen.uniform(0.0, 1.0, size=(6, 4))
    for method in ("manhattan", "supremum", "canberra", "minkowski"):
        tree = hclust_features(rows, dist_method=method)
        assert len(tree.steps) == 5


# --- k-means --------------------------------------------------------------------

def test_kmeans_single_cluster_center_is_mean():
    gen = rng_for("kmeans k1")
    rows = gen.standard_normal((7, 4))
    labels, centers, _hist = lloyd_kmeans(rows, np.array([3]), iter_max=10)
    assert np.all(labels == 1)
    assert centers[0] == pytest.approx(rows.mean(axis=0))


def test_kmeans_identical_rows_zero_wcss():
    rows = np.tile([0.25, 0.5], (6, 1))
    labels, _centers, hist = lloyd_kmeans(rows, np.array([0, 1, 2]), iter_max=5)
    assert hist[-1] == 0.0


def test_kmeans_wcss_nonincreasing():
    gen = rng_for("kmeans wcss")
    for _ in range(20):
        rows = gen.standard_normal((12, 3))
        _labels, _centers, hist = lloyd_kmeans(rows, np.array([0, 5, 9]), iter_max=15)
        assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))


def test_kmeans_tie_breaks_to_lowest_index():
    rows = np.array([[0.0], [1.0], [2.0]])
    labels, _c, _h = lloyd_kmeans(rows, np.array([0, 2]), iter_max=1)
    # the middle point is equidistant; it must join the first cluster
    assert labels[1] == 1


# --- end-to-end over realizations ------------------------------------------------

@pytest.fixture(scope="module")
def small_fixture():
    grid = GridSpec.uniform(0.0, 1.0, 2**9 + 1)
    params = EstimatorParams(N=20)
    series = []
    for fam, H in enumerate((0.2, 0.8)):
        for rep in range(3):
            series.append(simulate_ghbmp(grid, constant(H), J=9, seed=100 * fam + rep))
    return series, params


def test_hclust_hurst_end_to_end(small_fixture):
    series, params = small_fixture
    result = hclust_hurst(series, k=2, params=params)
    assert sorted(result.cluster_sizes.tolist()) == [3, 3]
    assert adjusted_rand_score([0, 0, 0, 1, 1, 1], result.cluster) == 1.0
    assert result.centers.shape == (2, params.N)
    assert np.all(result.distances >= 0.0)
    assert result.merge_tree is not None


def test_hclust_singletons(small_fixture):
    series, params = small_fixture
    result = hclust_hurst(series, k=len(series), params=params)
    assert np.all(result.cluster_sizes == 1)
    assert result.distances == pytest.approx(np.zeros(len(series)), abs=1e-12)


def test_hclust_k_wins_over_h(small_fixture):
    series, params = small_fixture
    result = hclust_hurst(series, k=2, h=1e9, params=params)
    assert len(np.unique(result.cluster)) == 2


def test_hclust_needs_k_or_h(small_fixture):
    series, params = small_fixture
    with pytest.raises(DomainError):
        hclust_hurst(series, params=params)


def test_kmeans_hurst_end_to_end(small_fixture):
    series, params = small_fixture
    result = kmeans_hurst(series, k=2, nstart=3, seed=5, params=params)
    assert adjusted_rand_score([0, 0, 0, 1, 1, 1], result.cluster) == 1.0
    assert result.wcss is not None


def test_kmeans_k_bounds(small_fixture):
    series, params = small_fixture
    with pytest.raises(DomainError):
        kmeans_hurst(series, k=0, params=params)
    with pytest.raises(DomainError):
        kmeans_hurst(series, k=len(series) + 1, params=params)


def test_partition_invariant_under_permutation(small_fixture):
    series, params = small_fixture
    perm = [3, 0, 5, 1, 4, 2]
    base = hclust_hurst(series, k=2, params=params).cluster
    shuffled = hclust_hurst([series[i] for i in perm], k=2, params=params).cluster
    assert adjusted_rand_score(base[perm], shuffled) == 1.0

    base_k = kmeans_hurst(series, k=2, nstart=3, seed=5, params=params).cluster
    shuf_k = kmeans_hurst([series[i] for i in perm], k=2, nstart=3, seed=5, params=params).cluster
    assert adjusted_rand_score(base_k[perm], shuf_k) == 1.0


def test_too_few_realizations():
    with pytest.raises(DataError):
        hclust_hurst([], k=1)
