"""Stateless JSON service over the simulation, estimation and analysis core.

Error mapping: 400 for malformed requests (schema or expression parse
problems, with byte offsets for the latter), 413 when the requested size
exceeds the configured cap, 422 for mathematical domain errors.  Responses
are deterministic given the request body; omitted seeds are generated
server-side and echoed back in ``meta``.
"""

from __future__ import annotations

import secrets
import time
from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from .clustering import hclust_hurst, kmeans_hurst
from .covariance import cov_ghbmp, est_cov
from .errors import DataError, DomainError, ExprSyntaxError, MfracError
from .estimation import EstimatorParams, estimate_hurst, lfd_from_hurst, smooth_estimates
from .expr import parse_hurst_expr, to_hurst_spec
from .geomstats import (
    LevelQuery,
    cross_count,
    cross_mean,
    cross_rate,
    exc_area,
    extremum,
    rs_index,
    sojourn,
    streak_stats,
)
from .hurst import HurstSpec, constant
from .serialize import cluster_to_dict
from .series import GridSpec, TimeSeries
from .simulate import (
    simulate_bbridge,
    simulate_bm,
    simulate_fbbridge,
    simulate_fbm,
    simulate_fgn,
    simulate_ghbmp,
)

DEFAULT_POINTS_CAP = 2**17 + 1


class SeriesPayload(BaseModel):
    t: list[float]
    x: list[float]

    def to_series(self) -> TimeSeries:
        return TimeSeries(times=np.asarray(self.t), values=np.asarray(self.x))


class SimulateRequest(BaseModel):
    kind: Literal["ghbmp", "bm", "bbridge", "fbm", "fbbridge", "fgn"]
    hurst_expr: Optional[str] = None
    hurst: Optional[float] = None
    points: int = Field(default=1025, ge=2)
    t_start: float = 0.0
    t_end: float = 1.0
    terminal: float = 0.0
    trunc_J: int = Field(default=15, ge=0)
    seed: Optional[int] = Field(default=None, ge=0)


class EstimateRequest(BaseModel):
    series: Optional[SeriesPayload] = None
    simulate: Optional[SimulateRequest] = None
    N: int = Field(default=100, ge=2)
    Q: int = Field(default=2, ge=2)
    L: int = Field(default=2, ge=2)
    span: float = Field(default=0.75, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.series is None) == (self.simulate is None):
            raise ValueError("provide exactly one of 'series' or 'simulate'")
        return self


class CovarianceRequest(BaseModel):
    kind: Literal["theoretical", "empirical"]
    hurst_expr: Optional[str] = None
    points: int = Field(default=101, ge=2)
    trunc_J: int = Field(default=8, ge=0)
    theta: Optional[float] = None
    t: Optional[list[float]] = None
    series: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def _shape(self):
        if self.kind == "theoretical" and self.hurst_expr is None:
            raise ValueError("theoretical covariance needs 'hurst_expr'")
        if self.kind == "empirical" and (self.t is None or self.series is None):
            raise ValueError("empirical covariance needs 't' and 'series'")
        return self


class ClusterRequest(BaseModel):
    realizations: list[SeriesPayload]
    algo: Literal["hclust", "kmeans"] = "hclust"
    k: Optional[int] = None
    h: Optional[float] = None
    dist_method: str = "euclidean"
    linkage: str = "complete"
    iter_max: int = Field(default=10, ge=1)
    nstart: int = Field(default=1, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)
    N: int = Field(default=100, ge=2)
    Q: int = Field(default=2, ge=2)
    L: int = Field(default=2, ge=2)


class StatsRequest(BaseModel):
    series: SeriesPayload
    stats: list[
        Literal["sojourn", "exc_area", "rsi", "crossings", "streaks", "extrema"]
    ] = Field(default_factory=lambda: ["sojourn", "exc_area", "rsi", "crossings", "streaks", "extrema"])
    A: float = 0.0
    direction: Literal["greater", "lower"] = "greater"
    N: int = Field(default=10000, ge=1)
    subI: Optional[tuple[float, float]] = None
    period: int = Field(default=14, ge=1)


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message, **extra}})


def _spec_from_expr(expr_text: str) -> HurstSpec:
    expr = parse_hurst_expr(expr_text)
    probe = expr(np.linspace(0.0, 1.0, 257))
    probe = np.asarray(probe, dtype=float)
    if np.all((probe <= 0.0) | (probe >= 1.0) | ~np.isfinite(probe)):
        raise DomainError("Hurst expression lies outside (0, 1) everywhere on [0, 1]")
    return to_hurst_spec(expr)


def _run_simulation(req: SimulateRequest, points_cap: int) -> tuple[TimeSeries, int]:
    if req.points > points_cap:
        raise _OverCap(f"points={req.points} exceeds the cap of {points_cap}")
    seed = req.seed if req.seed is not None else secrets.randbits(63)
    kind = req.kind
    if kind == "fgn":
        x = simulate_fgn(req.points, req.hurst if req.hurst is not None else 0.5, seed=seed)
        return TimeSeries(times=np.arange(len(x), dtype=float), values=x), seed
    grid = GridSpec.uniform(req.t_start, req.t_end, req.points)
    if kind == "ghbmp":
        if req.hurst_expr is not None:
            spec = _spec_from_expr(req.hurst_expr)
        elif req.hurst is not None:
            spec = constant(req.hurst)
        else:
            raise DomainError("ghbmp needs 'hurst_expr' or 'hurst'")
        return simulate_ghbmp(grid, spec, J=req.trunc_J, seed=seed), seed
    if kind == "bm":
        return simulate_bm(grid, seed=seed), seed
    if kind == "bbridge":
        return simulate_bbridge(grid, a=req.terminal, seed=seed), seed
    if kind == "fbm":
        if req.hurst is None:
            raise DomainError("fbm needs 'hurst'")
        return simulate_fbm(grid, req.hurst, seed=seed), seed
    if kind == "fbbridge":
        if req.hurst is None:
            raise DomainError("fbbridge needs 'hurst'")
        return simulate_fbbridge(grid, req.hurst, a=req.terminal, seed=seed), seed
    raise DomainError(f"unknown kind {kind!r}")


class _OverCap(Exception):
    pass


def _timing(response: Response, t0: float) -> None:
    """Wall-clock timing goes in a header so response bodies stay
    deterministic functions of the request."""
    response.headers["X-Elapsed-Ms"] = f"{1000.0 * (time.perf_counter() - t0):.3f}"


def create_app(points_cap: int = DEFAULT_POINTS_CAP, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="mfrac", version="0.1.0", docs_url="/api/docs", openapi_url="/api/openapi.json")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def _on_validation(request: Request, exc: RequestValidationError):
        details = [
            {"loc": [str(part) for part in e.get("loc", ())], "msg": str(e.get("msg", "")),
             "type": str(e.get("type", ""))}
            for e in exc.errors()
        ]
        return _error(400, "schema", "invalid request body", details=details)

    @app.exception_handler(ExprSyntaxError)
    async def _on_expr(request: Request, exc: ExprSyntaxError):
        return _error(400, "expr_syntax", str(exc), offset=exc.offset)

    @app.exception_handler(_OverCap)
    async def _on_cap(request: Request, exc: _OverCap):
        return _error(413, "over_cap", str(exc))

    @app.exception_handler(MfracError)
    async def _on_domain(request: Request, exc: MfracError):
        code = "data" if isinstance(exc, DataError) else "domain"
        return _error(422, code, str(exc))

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "version": app.version}

    @app.post("/api/simulate")
    def api_simulate(req: SimulateRequest, response: Response):
        t0 = time.perf_counter()
        X, seed = _run_simulation(req, points_cap)
        _timing(response, t0)
        return {
            "t": X.times.tolist(),
            "x": X.values.tolist(),
            "meta": {"kind": req.kind, "seed": seed, "J": req.trunc_J},
        }

    @app.post("/api/estimate")
    def api_estimate(req: EstimateRequest, response: Response):
        t0 = time.perf_counter()
        seed = None
        if req.series is not None:
            X = req.series.to_series()
        else:
            X, seed = _run_simulation(req.simulate, points_cap)
        params = EstimatorParams(N=req.N, Q=req.Q, L=req.L)
        est = smooth_estimates(estimate_hurst(X, params), span=req.span)
        lfd = lfd_from_hurst(est)
        _timing(response, t0)
        return {
            "interval_start": est.interval_starts.tolist(),
            "raw": est.raw.tolist(),
            "smoothed": est.smoothed.tolist(),
            "lfd_raw": lfd.raw.tolist(),
            "lfd_smoothed": lfd.smoothed.tolist(),
            "diagnostics": {"degenerate": est.degenerate.tolist()},
            "series": {"t": X.times.tolist(), "x": X.values.tolist()},
            "meta": {"N": req.N, "Q": req.Q, "L": req.L, "span": req.span, "seed": seed},
        }

    @app.post("/api/covariance")
    def api_covariance(req: CovarianceRequest, response: Response):
        t0 = time.perf_counter()
        if req.points > points_cap:
            raise _OverCap(f"points={req.points} exceeds the cap of {points_cap}")
        if req.kind == "theoretical":
            spec = _spec_from_expr(req.hurst_expr)
            grid = np.linspace(0.0, 1.0, req.points)
            C = cov_ghbmp(grid, spec, J=req.trunc_J, theta=req.theta)
        else:
            t = np.asarray(req.t, dtype=float)
            series = [TimeSeries(times=t, values=np.asarray(row, dtype=float)) for row in req.series]
            C = est_cov(series, theta=req.theta)
        _timing(response, t0)
        return {
            "grid": C.grid.tolist(),
            "entries": C.entries.tolist(),
            "meta": {"kind": req.kind, "J": req.trunc_J, "theta": req.theta},
        }

    @app.post("/api/cluster")
    def api_cluster(req: ClusterRequest, response: Response):
        t0 = time.perf_counter()
        series = [p.to_series() for p in req.realizations]
        params = EstimatorParams(N=req.N, Q=req.Q, L=req.L)
        seed = req.seed if req.seed is not None else secrets.randbits(63)
        if req.algo == "hclust":
            result = hclust_hurst(series, k=req.k, h=req.h, dist_method=req.dist_method,
                                  linkage=req.linkage, params=params)
        else:
            if req.k is None:
                raise DomainError("kmeans needs 'k'")
            result = kmeans_hurst(series, k=req.k, iter_max=req.iter_max, nstart=req.nstart,
                                  seed=seed, params=params)
        doc = cluster_to_dict(result)
        _timing(response, t0)
        doc["meta"] = {"algo": req.algo, "seed": seed if req.algo == "kmeans" else None}
        return doc

    @app.post("/api/stats")
    def api_stats(req: StatsRequest, response: Response):
        t0 = time.perf_counter()
        X = req.series.to_series()
        q = LevelQuery(A=req.A, direction=req.direction, N=req.N, subI=req.subI)
        results: dict = {}
        if "sojourn" in req.stats:
            results["sojourn"] = sojourn(X, q)
        if "exc_area" in req.stats:
            results["exc_area"] = exc_area(X, q)
        if "rsi" in req.stats:
            rsi = rs_index(X.values, period=req.period)
            results["rsi"] = [None if np.isnan(v) else float(v) for v in rsi]
        if "crossings" in req.stats:
            results["cross_count"] = cross_count(X, req.A)
            results["cross_rate"] = cross_rate(X, req.A)
            results["cross_mean"] = cross_mean(X)
        if "streaks" in req.stats:
            results["streaks"] = streak_stats(X, q)
        if "extrema" in req.stats:
            results["max"] = extremum(X, "max")
            results["min"] = extremum(X, "min")
        _timing(response, t0)
        return {
            "results": results,
            "meta": {"A": req.A, "direction": req.direction, "N": req.N},
        }

    _mount_ui(app, ui_dir)
    return app


def _mount_ui(app: FastAPI, ui_dir: str | None) -> None:
    from pathlib import Path

    candidates = [ui_dir] if ui_dir else ["frontend/dist", "../frontend/dist"]
    for cand in candidates:
        if cand and Path(cand).is_dir():
            from fastapi.staticfiles import StaticFiles

            app.mount("/", StaticFiles(directory=cand, html=True), name="ui")
            return

    @app.get("/")
    async def index():
        return {"service": "mfrac", "ui": "not bundled", "api": "/api/docs"}
