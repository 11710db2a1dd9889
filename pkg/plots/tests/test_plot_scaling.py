"""Scaling figure: per-regime panels, error bars, degenerate inputs."""

import warnings
import xml.etree.ElementTree as ET

import pytest
import matplotlib.pyplot as plt

from slts_plots import SchemaError, plot_scaling, read_scaling
from slts_plots.scaling import main


@pytest.fixture(autouse=True)
def _close_figures():
    yield
    plt.close("all")


def write_summary(path, rows):
    lines = ["regime,n,d,mean_s,sd_s"]
    lines += [",".join(str(v) for v in r) for r in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestReadScaling:
    def test_parses_rows(self, tmp_path):
        p = write_summary(tmp_path / "s.csv", [("a", 50, 100, 0.5, 0.1)])
        rows = read_scaling(p)
        assert rows == [{"regime": "a", "n": 50, "d": 100,
                         "mean_s": 0.5, "sd_s": 0.1}]

    def test_wrong_header_named(self, tmp_path):
        p = tmp_path / "s.csv"
        p.write_text("regime,n,d,avg,sd_s\na,50,100,0.5,0.1\n")
        with pytest.raises(SchemaError, match="column 4.*'mean_s'.*'avg'"):
            read_scaling(p)


class TestFigure:
    def test_three_regimes_make_three_panels(self, scaling_summary, tmp_path):
        out = tmp_path / "fig.svg"
        fig = plot_scaling(scaling_summary, out)
        assert len(fig.axes) == 3
        assert [ax.get_title()[:3] for ax in fig.axes] == ["(a)", "(b)", "(c)"]
        root = ET.parse(out).getroot()
        assert root.tag.endswith("svg")

    def test_error_bars_cover_sd(self, tmp_path):
        p = write_summary(tmp_path / "s.csv",
                          [("a", 50, 100, 1.0, 0.25), ("a", 100, 200, 2.0, 0.5)])
        fig = plot_scaling(p, tmp_path / "fig.svg")
        ax = fig.axes[0]
        assert len(ax.containers) == 1  # one errorbar container
        # vertical error segments span mean +/- sd
        bar = ax.containers[0][2][0]
        segs = bar.get_segments()
        lo, hi = segs[0][0][1], segs[0][1][1]
        assert (lo, hi) == (0.75, 1.25)

    def test_x_axis_follows_varying_column(self, tmp_path):
        p = write_summary(tmp_path / "s.csv",
                          [("b", 100, 100, 1.0, 0.0), ("b", 100, 400, 2.0, 0.0)])
        fig = plot_scaling(p, tmp_path / "fig.svg")
        assert fig.axes[0].get_xlabel() == "d"
        assert list(fig.axes[0].lines[0].get_xdata()) == [100, 400]

    def test_single_row_regime_is_point_not_line(self, tmp_path):
        p = write_summary(tmp_path / "s.csv", [("c", 50, 200, 0.7, 0.1)])
        fig = plot_scaling(p, tmp_path / "fig.svg")
        line = fig.axes[0].containers[0][0]  # the data line of the errorbar
        assert line.get_linestyle() == "None"
        assert line.get_marker() == "o"

    def test_zero_sd_renders_without_warning(self, tmp_path):
        p = write_summary(tmp_path / "s.csv",
                          [("a", 50, 100, 1.0, 0.0), ("a", 100, 200, 2.0, 0.0)])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            fig = plot_scaling(p, tmp_path / "fig.svg")
        assert len(fig.axes) == 1

    def test_input_file_untouched(self, tmp_path):
        p = write_summary(tmp_path / "s.csv", [("a", 50, 100, 1.0, 0.1)])
        before = p.read_bytes()
        plot_scaling(p, tmp_path / "fig.svg")
        assert p.read_bytes() == before


class TestCommand:
    def test_success_exit_zero(self, tmp_path, capsys):
        p = write_summary(tmp_path / "s.csv", [("a", 50, 100, 1.0, 0.1)])
        out = tmp_path / "fig.pdf"
        assert main([str(p), "-o", str(out)]) == 0
        assert out.read_bytes()[:5] == b"%PDF-"

    def test_missing_file_exit_two(self, tmp_path, capsys):
        rc = main([str(tmp_path / "nope.csv"), "-o", str(tmp_path / "f.svg")])
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_schema_error_named(self, tmp_path, capsys):
        p = tmp_path / "s.csv"
        p.write_text("regime,n,d,mean_s,oops\na,1,2,0.1,0.0\n")
        rc = main([str(p), "-o", str(tmp_path / "f.svg")])
        assert rc == 2
        assert "sd_s" in capsys.readouterr().err
