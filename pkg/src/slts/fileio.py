"""Readers, writers, and schema checks for every artifact the harness emits.

All floating-point text uses ``repr`` (shortest round-trip decimal), so a
write/read cycle is bitwise faithful and two identical runs produce
identical bytes.  Every reader checks the declared header and reports the
first offending column or row by name.

Formats:
  dataset CSV    header ``y,x1,...,xd``, one sample per row
  dataset JSON   object with fields ``y`` (list) and ``X`` (list of rows)
  truth JSON     generating coefficients and outlier rows for a dataset
  trace CSV      header ``t,objective,stationarity,elapsed_s``
  starts CSV     header ``start,objective,iterations``
  scaling CSV    header ``regime,n,d,mean_s,sd_s``
  compare CSV    per-seed method comparison rows, see COMPARE_HEADER
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .datagen import Truth
from .problem import Dataset

__all__ = [
    "SchemaError",
    "TRACE_HEADER",
    "STARTS_HEADER",
    "SCALING_HEADER",
    "COMPARE_HEADER",
    "write_dataset_csv",
    "read_dataset_csv",
    "write_dataset_json",
    "read_dataset_json",
    "write_truth_json",
    "read_truth_json",
    "write_trace_csv",
    "read_trace_csv",
    "write_starts_csv",
    "read_starts_csv",
    "write_scaling_csv",
    "read_scaling_csv",
    "write_compare_csv",
    "read_compare_csv",
    "write_json",
    "validate_dataset_csv",
    "validate_trace_csv",
    "validate_starts_csv",
    "validate_scaling_csv",
    "validate_compare_csv",
]

TRACE_HEADER = ["t", "objective", "stationarity", "elapsed_s"]
STARTS_HEADER = ["start", "objective", "iterations"]
SCALING_HEADER = ["regime", "n", "d", "mean_s", "sd_s"]
COMPARE_HEADER = [
    "seed",
    "starts",
    "pgm_objective",
    "fast_objective",
    "objective_ratio",
    "pgm_time_s",
    "fast_time_s",
    "time_ratio",
]


class SchemaError(ValueError):
    """An artifact file does not match its declared schema."""


def _fmt(v) -> str:
    return repr(float(v))


def _open_writer(path):
    f = open(path, "w", newline="")
    return f, csv.writer(f, lineterminator="\n")


def _read_rows(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise SchemaError(f"{path}: empty file, expected a header row")
    return rows


def _check_header(path, got, expected):
    if got != expected:
        for k, (g, e) in enumerate(zip(got, expected)):
            if g != e:
                raise SchemaError(
                    f"{path}: expected column '{e}' at position {k + 1}, got '{g}'"
                )
        raise SchemaError(
            f"{path}: expected {len(expected)} columns {expected}, got {len(got)}"
        )


def _parse_float(path, i, name, s):
    try:
        return float(s)
    except ValueError:
        raise SchemaError(f"{path}: row {i}: column '{name}' is not a number: {s!r}") from None


def _parse_int(path, i, name, s):
    try:
        return int(s)
    except ValueError:
        raise SchemaError(f"{path}: row {i}: column '{name}' is not an integer: {s!r}") from None


# ---------------------------------------------------------------- datasets

def _dataset_header(d: int):
    return ["y"] + [f"x{j + 1}" for j in range(d)]


def write_dataset_csv(path, ds: Dataset) -> None:
    f, w = _open_writer(path)
    with f:
        w.writerow(_dataset_header(ds.d))
        for i in range(ds.n):
            w.writerow([_fmt(ds.y[i])] + [_fmt(v) for v in ds.X[i]])


def read_dataset_csv(path) -> Dataset:
    rows = _read_rows(path)
    header = rows[0]
    if len(header) < 2:
        raise SchemaError(f"{path}: dataset needs a y column and at least one x column")
    d = len(header) - 1
    _check_header(path, header, _dataset_header(d))
    if len(rows) < 2:
        raise SchemaError(f"{path}: dataset has no sample rows")
    y = np.empty(len(rows) - 1)
    X = np.empty((len(rows) - 1, d))
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != d + 1:
            raise SchemaError(f"{path}: row {i}: expected {d + 1} fields, got {len(row)}")
        y[i - 1] = _parse_float(path, i, "y", row[0])
        for j in range(d):
            X[i - 1, j] = _parse_float(path, i, f"x{j + 1}", row[j + 1])
    return Dataset(X, y)


def write_dataset_json(path, ds: Dataset) -> None:
    obj = {"y": [float(v) for v in ds.y], "X": [[float(v) for v in row] for row in ds.X]}
    write_json(path, obj)


def read_dataset_json(path) -> Dataset:
    with open(path) as f:
        obj = json.load(f)
    if not isinstance(obj, dict) or "y" not in obj or "X" not in obj:
        raise SchemaError(f"{path}: dataset JSON must have fields 'y' and 'X'")
    return Dataset(np.asarray(obj["X"], dtype=float), np.asarray(obj["y"], dtype=float))


def validate_dataset_csv(path):
    ds = read_dataset_csv(path)
    return ds.n, ds.d


# ------------------------------------------------------------------- truth

def write_truth_json(path, truth: Truth) -> None:
    obj = {
        "n": int(truth.outlier_mask.size),
        "beta0": float(truth.beta0),
        "beta": [float(v) for v in truth.beta],
        "outlier_rows": [int(i) for i in truth.outlier_rows],
    }
    write_json(path, obj)


def read_truth_json(path) -> Truth:
    with open(path) as f:
        obj = json.load(f)
    for key in ("n", "beta0", "beta", "outlier_rows"):
        if key not in obj:
            raise SchemaError(f"{path}: truth JSON missing field '{key}'")
    mask = np.zeros(int(obj["n"]), dtype=bool)
    rows = np.asarray(obj["outlier_rows"], dtype=np.intp)
    mask[rows] = True
    return Truth(beta0=float(obj["beta0"]), beta=np.asarray(obj["beta"], dtype=float), outlier_mask=mask)


# ------------------------------------------------------------------ traces

def write_trace_csv(path, trace) -> None:
    trace = np.asarray(trace, dtype=float)
    if trace.ndim != 2 or (trace.size and trace.shape[1] != 4):
        raise ValueError(f"trace must be a (k, 4) array, got shape {trace.shape}")
    f, w = _open_writer(path)
    with f:
        w.writerow(TRACE_HEADER)
        for row in trace:
            w.writerow([str(int(row[0])), _fmt(row[1]), _fmt(row[2]), _fmt(row[3])])


def read_trace_csv(path) -> np.ndarray:
    rows = _read_rows(path)
    _check_header(path, rows[0], TRACE_HEADER)
    out = np.empty((len(rows) - 1, 4))
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != 4:
            raise SchemaError(f"{path}: row {i}: expected 4 fields, got {len(row)}")
        out[i - 1, 0] = _parse_int(path, i, "t", row[0])
        for j, name in enumerate(TRACE_HEADER[1:], start=1):
            out[i - 1, j] = _parse_float(path, i, name, row[j])
    return out


def validate_trace_csv(path) -> int:
    return read_trace_csv(path).shape[0]


# ------------------------------------------------------------------ starts

def write_starts_csv(path, rows) -> None:
    f, w = _open_writer(path)
    with f:
        w.writerow(STARTS_HEADER)
        for start, objective, iterations in np.asarray(rows, dtype=float):
            w.writerow([str(int(start)), _fmt(objective), str(int(iterations))])


def read_starts_csv(path) -> np.ndarray:
    rows = _read_rows(path)
    _check_header(path, rows[0], STARTS_HEADER)
    out = np.empty((len(rows) - 1, 3))
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != 3:
            raise SchemaError(f"{path}: row {i}: expected 3 fields, got {len(row)}")
        out[i - 1, 0] = _parse_int(path, i, "start", row[0])
        out[i - 1, 1] = _parse_float(path, i, "objective", row[1])
        out[i - 1, 2] = _parse_int(path, i, "iterations", row[2])
    return out


def validate_starts_csv(path) -> int:
    return read_starts_csv(path).shape[0]


# ----------------------------------------------------------------- scaling

def write_scaling_csv(path, rows) -> None:
    f, w = _open_writer(path)
    with f:
        w.writerow(SCALING_HEADER)
        for regime, n, d, mean_s, sd_s in rows:
            w.writerow([str(regime), str(int(n)), str(int(d)), _fmt(mean_s), _fmt(sd_s)])


def read_scaling_csv(path):
    rows = _read_rows(path)
    _check_header(path, rows[0], SCALING_HEADER)
    out = []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != 5:
            raise SchemaError(f"{path}: row {i}: expected 5 fields, got {len(row)}")
        out.append(
            {
                "regime": row[0],
                "n": _parse_int(path, i, "n", row[1]),
                "d": _parse_int(path, i, "d", row[2]),
                "mean_s": _parse_float(path, i, "mean_s", row[3]),
                "sd_s": _parse_float(path, i, "sd_s", row[4]),
            }
        )
    return out


def validate_scaling_csv(path) -> int:
    return len(read_scaling_csv(path))


# ----------------------------------------------------------------- compare

def write_compare_csv(path, rows) -> None:
    f, w = _open_writer(path)
    with f:
        w.writerow(COMPARE_HEADER)
        for row in rows:
            w.writerow(
                [str(int(row["seed"])), str(int(row["starts"]))]
                + [_fmt(row[k]) for k in COMPARE_HEADER[2:]]
            )


def read_compare_csv(path):
    rows = _read_rows(path)
    _check_header(path, rows[0], COMPARE_HEADER)
    out = []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != len(COMPARE_HEADER):
            raise SchemaError(
                f"{path}: row {i}: expected {len(COMPARE_HEADER)} fields, got {len(row)}"
            )
        rec = {
            "seed": _parse_int(path, i, "seed", row[0]),
            "starts": _parse_int(path, i, "starts", row[1]),
        }
        for j, name in enumerate(COMPARE_HEADER[2:], start=2):
            rec[name] = _parse_float(path, i, name, row[j])
        out.append(rec)
    return out


def validate_compare_csv(path) -> int:
    return len(read_compare_csv(path))


# -------------------------------------------------------------------- json

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def write_json(path, obj) -> None:
    """Deterministic JSON: sorted keys, two-space indent, nulls for non-finite."""
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n")
