"""CSV and JSON readers/writers for the package's data shapes.

All floats are written with 17 significant digits so CSV round-trips are
exact; the decimal separator is always a point regardless of locale.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .covariance import CovMatrix
from .errors import DataError
from .series import TimeSeries


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def series_to_csv(X: TimeSeries) -> str:
    out = io.StringIO()
    out.write("t,x\n")
    for t, x in zip(X.times, X.values):
        out.write(f"{fmt(t)},{fmt(x)}\n")
    return out.getvalue()


def series_from_csv(text: str) -> TimeSeries:
    """Parse a `t,x` CSV (header required); errors carry the row number."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise DataError("empty CSV")
    header = [c.strip().lower() for c in rows[0]]
    if len(header) < 2:
        raise DataError("CSV needs two columns: t,x")
    times, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 2:
            raise DataError(f"row {lineno}: expected 2 columns, got {len(row)}")
        try:
            times.append(float(row[0]))
            values.append(float(row[1]))
        except ValueError as exc:
            raise DataError(f"row {lineno}: non-numeric cell ({exc})") from None
    if len(times) < 2:
        raise DataError("CSV contains fewer than 2 data rows")
    return TimeSeries(times=np.asarray(times), values=np.asarray(values))


def series_to_json(X: TimeSeries, meta: dict | None = None) -> str:
    doc = {"t": [float(v) for v in X.times], "x": [float(v) for v in X.values]}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc)


def column_from_csv(text: str) -> np.ndarray:
    """Parse a single-column CSV of prices (optional non-numeric header)."""
    reader = csv.reader(io.StringIO(text))
    values = []
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        cell = row[-1].strip() if len(row) > 1 else row[0].strip()
        try:
            values.append(float(cell))
        except ValueError:
            if lineno == 1:
                continue  # header
            raise DataError(f"row {lineno}: non-numeric cell {cell!r}") from None
    if not values:
        raise DataError("no numeric values found")
    return np.asarray(values)


def cov_to_csv(C: CovMatrix) -> str:
    out = io.StringIO()
    out.write("t," + ",".join(fmt(g) for g in C.grid) + "\n")
    for g, row in zip(C.grid, C.entries):
        out.write(fmt(g) + "," + ",".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


def cov_from_csv(text: str) -> CovMatrix:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(c.strip() for c in r)]
    if len(rows) < 2:
        raise DataError("covariance CSV needs a header and at least one row")
    grid = np.asarray([float(c) for c in rows[0][1:]])
    entries = np.asarray([[float(c) for c in row[1:]] for row in rows[1:]])
    return CovMatrix(grid=grid, entries=entries)


def cov_to_json(C: CovMatrix, meta: dict | None = None) -> str:
    doc = {
        "grid": [float(g) for g in C.grid],
        "entries": [[float(v) for v in row] for row in C.entries],
    }
    if meta:
        doc["meta"] = meta
    return json.dumps(doc)


def cluster_to_json(result, meta: dict | None = None) -> str:
    doc = cluster_to_dict(result)
    if meta:
        doc["meta"] = meta
    return json.dumps(doc)


def cluster_to_dict(result) -> dict:
    doc = {
        "cluster": [int(c) for c in result.cluster],
        "cluster_sizes": [int(s) for s in result.cluster_sizes],
        "centers": [[float(v) for v in row] for row in result.centers],
        "distances": [float(d) for d in result.distances],
        "interval_starts": [float(v) for v in result.interval_starts],
        "smoothed_hurst": [[float(v) for v in row] for row in result.smoothed_hurst],
        "raw_hurst": [[float(v) for v in row] for row in result.raw_hurst],
        "call": result.call,
    }
    if result.merge_tree is not None:
        doc["merge_tree"] = [
            {"left": int(a), "right": int(b), "height": float(h)}
            for a, b, h in result.merge_tree.steps
        ]
    if result.wcss is not None:
        doc["wcss"] = float(result.wcss)
    return doc


def cluster_to_csv(result) -> str:
    out = io.StringIO()
    out.write("item,cluster,distance_from_center\n")
    for i, (c, d) in enumerate(zip(result.cluster, result.distances), start=1):
        out.write(f"{i},{int(c)},{fmt(d)}\n")
    return out.getvalue()


def estimate_to_csv(est) -> str:
    out = io.StringIO()
    has_smoothed = est.smoothed is not None
    out.write("interval_start,raw" + (",smoothed" if has_smoothed else "") + "\n")
    for i in range(len(est.raw)):
        row = f"{fmt(est.interval_starts[i])},{fmt(est.raw[i])}"
        if has_smoothed:
            row += f",{fmt(est.smoothed[i])}"
        out.write(row + "\n")
    return out.getvalue()


def estimate_to_json(est, meta: dict | None = None) -> str:
    doc = {
        "interval_start": [float(v) for v in est.interval_starts],
        "raw": [float(v) for v in est.raw],
        "smoothed": None if est.smoothed is None else [float(v) for v in est.smoothed],
        "degenerate": [bool(b) for b in est.degenerate],
    }
    if meta:
        doc["meta"] = meta
    return json.dumps(doc)
