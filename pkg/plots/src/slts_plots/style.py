"""Shared figure style and deterministic file output."""

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file output only, no display

VECTOR_FORMATS = (".svg", ".pdf")
RASTER_FORMATS = (".png",)

# Fixed hash salt so SVG element ids do not vary run to run.
matplotlib.rcParams["svg.hashsalt"] = "slts-plots"
matplotlib.rcParams["figure.dpi"] = 100


def check_out_path(out_image) -> Path:
    out = Path(out_image)
    suffix = out.suffix.lower()
    if suffix not in VECTOR_FORMATS + RASTER_FORMATS:
        raise ValueError(
            f"{out}: unsupported format {suffix!r}; use .svg or .pdf "
            f"(vector, default) or .png (raster opt-in)"
        )
    return out


def save_figure(fig, out: Path) -> None:
    # strip the embedded timestamps so identical inputs give identical bytes
    suffix = out.suffix.lower()
    if suffix == ".svg":
        fig.savefig(out, metadata={"Date": None})
    elif suffix == ".pdf":
        fig.savefig(out, metadata={"CreationDate": None})
    else:
        fig.savefig(out)


def trace_label(path) -> str:
    """Legend label for one trace: the filename without extension."""
    return Path(path).stem


def size_title(path) -> str:
    """Panel title like "n=100, d=200" recovered from the filename."""
    m = re.search(r"n(\d+)_d(\d+)", Path(path).stem)
    if m:
        return f"n={m.group(1)}, d={m.group(2)}"
    return Path(path).stem
