"""Timing figures: mean seconds per solve with standard-deviation bars.

One panel per regime in the summary, tagged (a), (b), (c) in regime order.
The x axis is whichever of n or d actually varies inside the regime; a
regime with a single row degrades to a point with an error bar.
"""

import argparse
import string
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .inputs import read_scaling
from .style import check_out_path, save_figure


def _x_column(rows) -> str:
    ns = {r["n"] for r in rows}
    return "n" if len(ns) > 1 or len({r["d"] for r in rows}) == 1 else "d"


def plot_scaling(summary_path, out_image):
    """Render the scaling summary to one image; returns the figure."""
    rows = read_scaling(summary_path)
    out = check_out_path(out_image)
    regimes = sorted({r["regime"] for r in rows})

    fig, axes = plt.subplots(1, len(regimes), figsize=(4 * len(regimes), 3.5),
                             squeeze=False)
    for tag, ax, regime in zip(string.ascii_lowercase, axes.ravel(), regimes):
        group = sorted((r for r in rows if r["regime"] == regime),
                       key=lambda r: (r["n"], r["d"]))
        xcol = _x_column(group)
        xs = [r[xcol] for r in group]
        means = [r["mean_s"] for r in group]
        sds = [r["sd_s"] for r in group]
        style = "-o" if len(group) > 1 else "o"
        ax.errorbar(xs, means, yerr=sds, fmt=style, capsize=3, lw=1.2)
        ax.set_title(f"({tag}) regime {regime}", fontsize=10)
        ax.set_xlabel(xcol)
        ax.set_ylabel("mean seconds per solve")
    fig.tight_layout()
    save_figure(fig, out)
    return fig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="plot_scaling",
        description="Plot mean solve time with sd error bars from a scaling summary CSV.",
    )
    ap.add_argument("summary", help="scaling summary CSV")
    ap.add_argument("-o", "--out", required=True,
                    help="output image (.svg/.pdf vector, .png raster)")
    ns = ap.parse_args(argv)
    try:
        fig = plot_scaling(ns.summary, ns.out)
        plt.close(fig)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {ns.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
