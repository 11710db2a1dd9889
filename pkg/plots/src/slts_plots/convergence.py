"""Convergence figures: log-scale objective gap per solver trace.

Each curve plots f(x_t) - min_t f(x_t) against iteration count (or wall
time with ``--x time``) on a log axis.  Exactly four input traces produce
the standard 2x2 panel layout, one trace per panel tagged (a)-(d); any
other count overlays the curves on a single panel with the filenames as
the legend.
"""

import argparse
import string
import sys

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .inputs import read_trace
from .style import check_out_path, save_figure, size_title, trace_label


def _gap_series(trace: np.ndarray, x_kind: str):
    obj = trace[:, 1]
    gap = obj - obj.min()
    x = trace[:, 0] if x_kind == "iteration" else trace[:, 3]
    keep = gap > 0.0  # log scale; the final zero-gap tail is not drawable
    if not keep.any():
        keep[0] = True  # flat trace: show the single (zero clipped) point
        gap = gap + np.finfo(float).tiny
    return x[keep], gap[keep]


def _draw(ax, path, x_kind: str):
    x, g = _gap_series(read_trace(path), x_kind)
    ax.semilogy(x, g, lw=1.2, label=trace_label(path))
    ax.set_xlabel("iteration" if x_kind == "iteration" else "seconds")
    ax.set_ylabel("objective gap")
    ax.legend(fontsize=8)


def plot_convergence(trace_paths, out_image, x: str = "iteration"):
    """Render the traces to one vector (or opt-in raster) image.

    Returns the matplotlib figure after writing it, so callers can inspect
    the drawn series.  Input files are only ever read.
    """
    paths = list(trace_paths)
    if not paths:
        raise ValueError("need at least one trace file")
    if x not in ("iteration", "time"):
        raise ValueError(f"x must be 'iteration' or 'time', got {x!r}")
    out = check_out_path(out_image)

    if len(paths) == 4:
        fig, axes = plt.subplots(2, 2, figsize=(9, 7))
        for tag, ax, path in zip(string.ascii_lowercase, axes.ravel(), paths):
            _draw(ax, path, x)
            ax.set_title(f"({tag}) {size_title(path)}", fontsize=10)
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        for path in paths:
            _draw(ax, path, x)
    fig.tight_layout()
    save_figure(fig, out)
    return fig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="plot_convergence",
        description="Plot log-scale objective-gap curves from solver trace CSVs.",
    )
    ap.add_argument("inputs", nargs="+", help="trace CSV files")
    ap.add_argument("-o", "--out", required=True,
                    help="output image (.svg/.pdf vector, .png raster)")
    ap.add_argument("--x", choices=("iteration", "time"), default="iteration",
                    help="x axis (default iteration)")
    ns = ap.parse_args(argv)
    try:
        fig = plot_convergence(ns.inputs, ns.out, x=ns.x)
        plt.close(fig)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {ns.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
