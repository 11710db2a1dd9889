"""Fixtures that produce real harness outputs for the figure tests.

The producing package is exercised through its command line only, the same
boundary the installed scripts see.  Session scope keeps it to one bench
run per kind.
"""

import subprocess
import sys

import pytest


def _run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "slts.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def trace_dir(tmp_path_factory):
    """Four standard-size trace files from one bench run."""
    out = tmp_path_factory.mktemp("traces")
    _run_cli(["bench", "trace", "--tol-rel", "1e-3", "--seed", "0",
              "--out", str(out)])
    files = sorted(out.glob("trace_*.csv"))
    assert len(files) == 4
    return out


@pytest.fixture(scope="session")
def scaling_summary(tmp_path_factory):
    """A real three-regime scaling summary CSV."""
    out = tmp_path_factory.mktemp("scaling")
    _run_cli(["bench", "scaling", "--repeats", "2", "--tol-rel", "1e-2",
              "--out", str(out)])
    path = out / "scaling_summary.csv"
    assert path.exists()
    return path


@pytest.fixture
def tiny_trace(tmp_path):
    """Hand-written strictly decreasing trace."""
    path = tmp_path / "trace_n10_d3_seed0.csv"
    path.write_text(
        "t,objective,stationarity,elapsed_s\n"
        "0,100.0,nan,0.0\n"
        "1,10.0,5.0,0.001\n"
        "2,1.5,1.0,0.002\n"
        "3,1.0,0.1,0.003\n"
        "4,1.0,0.01,0.004\n"
    )
    return path
