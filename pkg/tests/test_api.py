import concurrent.futures

import numpy as np
import pytest
from fastapi.testclient import TestClient

from mfrac.api import create_app

from conftest import RSI_EXPECTED, RSI_PRICES


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(points_cap=4097))


def test_health(client):
    r = client.get("/api/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_simulate_deterministic_and_zero_origin(client):
    body = {"kind": "ghbmp", "hurst_expr": "0.3", "points": 257, "trunc_J": 7, "seed": 7}
    r1 = client.post("/api/simulate", json=body)
    r2 = client.post("/api/simulate", json=body)
    assert r1.status_code == 200
    assert r1.json()["t"][0] == 0.0
    assert r1.json()["x"][0] == 0.0
    assert r1.json()["x"] == r2.json()["x"]
    assert r1.json()["meta"]["seed"] == 7


def test_simulate_concurrent_identical(client):
    body = {"kind": "ghbmp", "hurst_expr": "0.4 - 0.25*sin(6*pi*t)", "points": 129,
            "trunc_J": 6, "seed": 11}
    with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
        futures = [pool.submit(lambda: client.post("/api/simulate", json=body).content)
                   for _ in range(8)]
        bodies = [f.result() for f in futures]
    assert all(b == bodies[0] for b in bodies)


def test_simulate_server_generates_and_echoes_seed(client):
    body = {"kind": "bm", "points": 17}
    r = client.post("/api/simulate", json=body)
    assert r.status_code == 200
    seed = r.json()["meta"]["seed"]
    assert seed is not None
    replay = client.post("/api/simulate", json={"kind": "bm", "points": 17, "seed": seed})
    assert replay.json()["x"] == r.json()["x"]


def test_simulate_malformed_expression_400_with_offset(client):
    r = client.post("/api/simulate", json={"kind": "ghbmp", "hurst_expr": "0.3 +", "points": 65})
    assert r.status_code == 400
    err = r.json()["error"]
    assert err["code"] == "expr_syntax"
    assert err["offset"] == 5


def test_simulate_schema_error_400(client):
    r = client.post("/api/simulate", json={"kind": "nope", "points": 65})
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "schema"


def test_simulate_over_cap_413(client):
    r = client.post("/api/simulate", json={"kind": "bm", "points": 100000})
    assert r.status_code == 413
    assert r.json()["error"]["code"] == "over_cap"


def test_simulate_domain_error_422(client):
    r = client.post("/api/simulate",
                    json={"kind": "ghbmp", "hurst_expr": "1.5 + t", "points": 65})
    assert r.status_code == 422
    assert r.json()["error"]["code"] == "domain"


def test_estimate_default_output_length(client):
    r = client.post("/api/estimate", json={
        "simulate": {"kind": "fbm", "hurst": 0.5, "points": 1025, "seed": 3},
    })
    assert r.status_code == 200
    doc = r.json()
    assert len(doc["raw"]) == 100
    assert len(doc["smoothed"]) == 100
    assert doc["lfd_raw"] == pytest.approx([2.0 - h for h in doc["raw"]])


def test_estimate_inline_series_degenerate(client):
    t = np.linspace(0.0, 1.0, 801)
    r = client.post("/api/estimate", json={
        "series": {"t": t.tolist(), "x": (2.0 * t + 1.0).tolist()},
    })
    assert r.status_code == 200
    assert all(r.json()["diagnostics"]["degenerate"])


def test_estimate_needs_exactly_one_source(client):
    r = client.post("/api/estimate", json={"N": 100})
    assert r.status_code == 400


def test_estimate_too_short_422(client):
    r = client.post("/api/estimate", json={"series": {"t": [0, 1, 2], "x": [1, 2, 3]}})
    assert r.status_code == 422


def test_covariance_theoretical(client):
    r = client.post("/api/covariance", json={
        "kind": "theoretical", "hurst_expr": "0.3", "points": 21, "trunc_J": 5,
    })
    assert r.status_code == 200
    doc = r.json()
    assert len(doc["grid"]) == 21
    assert doc["entries"][0] == [0.0] * 21


def test_covariance_empirical(client):
    t = np.linspace(0.0, 1.0, 33).tolist()
    gen = np.random.Generator(np.random.PCG64(4))
    series = [gen.standard_normal(33).cumsum().tolist() for _ in range(5)]
    r = client.post("/api/covariance", json={"kind": "empirical", "t": t, "series": series})
    assert r.status_code == 200
    entries = np.asarray(r.json()["entries"])
    assert entries.shape == (33, 33)
    assert np.allclose(entries, entries.T)


def test_cluster_endpoint(client):
    from mfrac import GridSpec, constant, simulate_ghbmp

    grid = GridSpec.uniform(0.0, 1.0, 513)
    reals = []
    for i, H in enumerate((0.2, 0.2, 0.2, 0.8, 0.8, 0.8)):
        X = simulate_ghbmp(grid, constant(H), J=9, seed=i)
        reals.append({"t": X.times.tolist(), "x": X.values.tolist()})
    r = client.post("/api/cluster", json={
        "realizations": reals, "algo": "hclust", "k": 2, "N": 20,
    })
    assert r.status_code == 200
    doc = r.json()
    assert sorted(doc["cluster_sizes"]) == [3, 3]
    assert len(doc["merge_tree"]) == 5
    km = client.post("/api/cluster", json={
        "realizations": reals, "algo": "kmeans", "k": 2, "nstart": 3, "seed": 1, "N": 20,
    })
    assert km.status_code == 200
    assert sorted(km.json()["cluster_sizes"]) == [3, 3]


def test_stats_endpoint(client):
    t = list(range(len(RSI_PRICES)))
    r = client.post("/api/stats", json={
        "series": {"t": t, "x": RSI_PRICES},
        "A": 102.0,
        "N": 500,
        "period": 14,
    })
    assert r.status_code == 200
    doc = r.json()["results"]
    assert doc["rsi"][:14] == [None] * 14
    assert doc["rsi"][-1] == pytest.approx(RSI_EXPECTED[-1], abs=5e-5)
    assert doc["max"]["value"] == max(RSI_PRICES)
    assert doc["sojourn"] > 0.0


def test_stats_subinterval_validation(client):
    r = client.post("/api/stats", json={
        "series": {"t": [0, 1, 2, 3], "x": [0, 1, 2, 3]},
        "A": 1.0,
        "subI": [2.0, 9.0],
    })
    assert r.status_code == 422


def test_root_without_ui_bundle():
    bare = TestClient(create_app(ui_dir="/nonexistent/dist"))
    r = bare.get("/")
    assert r.status_code == 200
    assert r.json()["service"] == "mfrac"


def test_root_serves_ui_bundle_when_present(tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>explorer</title>")
    ui = TestClient(create_app(ui_dir=str(tmp_path)))
    r = ui.get("/")
    assert r.status_code == 200
    assert "explorer" in r.text
