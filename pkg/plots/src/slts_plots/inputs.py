"""Readers for the benchmark CSV files the figures are built from.

The schemas are fixed by the producing harness: traces carry
``t,objective,stationarity,elapsed_s`` rows, scaling summaries carry
``regime,n,d,mean_s,sd_s``.  Validation errors name the offending column
so a mismatched file is diagnosable from the message alone.
"""

import csv
from pathlib import Path

import numpy as np

TRACE_HEADER = ["t", "objective", "stationarity", "elapsed_s"]
SCALING_HEADER = ["regime", "n", "d", "mean_s", "sd_s"]


class SchemaError(ValueError):
    pass


def _check_header(path, got, want):
    if got is None:
        raise SchemaError(f"{path}: empty file")
    if len(got) != len(want):
        raise SchemaError(
            f"{path}: expected {len(want)} columns {want}, got {len(got)}"
        )
    for i, (g, w) in enumerate(zip(got, want)):
        if g != w:
            raise SchemaError(
                f"{path}: column {i + 1}: expected {w!r}, got {g!r}"
            )


def _parse_float(path, row_no, column, text):
    try:
        return float(text)
    except ValueError:
        raise SchemaError(
            f"{path}: row {row_no}, column {column!r}: not a number: {text!r}"
        ) from None


def read_trace(path) -> np.ndarray:
    """Trace CSV as a float array of shape (iterations, 4)."""
    path = Path(path)
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        _check_header(path, header, TRACE_HEADER)
        rows = []
        for row_no, row in enumerate(reader, start=1):
            if len(row) != 4:
                raise SchemaError(
                    f"{path}: row {row_no}: expected 4 values, got {len(row)}"
                )
            rows.append([_parse_float(path, row_no, c, v)
                         for c, v in zip(TRACE_HEADER, row)])
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return np.asarray(rows)


def read_scaling(path) -> list:
    """Scaling summary CSV as a list of row dicts."""
    path = Path(path)
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        _check_header(path, header, SCALING_HEADER)
        rows = []
        for row_no, row in enumerate(reader, start=1):
            if len(row) != 5:
                raise SchemaError(
                    f"{path}: row {row_no}: expected 5 values, got {len(row)}"
                )
            regime, n, d, mean_s, sd_s = row
            rows.append({
                "regime": regime,
                "n": int(_parse_float(path, row_no, "n", n)),
                "d": int(_parse_float(path, row_no, "d", d)),
                "mean_s": _parse_float(path, row_no, "mean_s", mean_s),
                "sd_s": _parse_float(path, row_no, "sd_s", sd_s),
            })
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows
