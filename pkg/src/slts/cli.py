"""Experiment harness behind the ``slts`` command.

Subcommands:
  generate          write a synthetic dataset plus a truth sidecar
  solve             solve one dataset file, write trace CSV and report JSON
  bench trace       convergence traces over the four standard problem sizes
  bench scaling     wall-time summary over three growth regimes
  bench compare     multi-start solver vs the alternating baseline, ratio table
  report            summarize an output directory as text tables

Every run accepts ``--config FILE`` (flat JSON of flag values; explicit
flags win) and writes ``resolved_config.json`` beside its outputs so a run
can be reproduced from the artifacts alone.  Exit status is 0 on full
success and 2 when any grid cell fails; failed cells never abort the rest
of the grid.

Timing note: wall times come from a monotonic clock and only bracket the
solver call, never generation or I/O.  Scaling runs one discarded warm-up
solve per cell.  All other outputs are deterministic given the seed, so
reruns differ only in timing columns.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter

import numpy as np

from . import fileio
from .datagen import GenSpec, generate, robust_standardize, trimming_count
from .fastslts import MultiStartConfig, elemental_start, fast_slts
from .problem import Dataset, StrlsProblem, lift_to_strls, make_iterate
from .rng import named_stream
from .solver import SolverConfig, solve

__all__ = [
    "ExperimentSpec",
    "CompareRow",
    "TRACE_SIZES",
    "SCALING_REGIMES",
    "COMPARE_STARTS",
    "resolve_lambda",
    "run_trace",
    "run_scaling",
    "run_compare",
    "summarize_compare",
    "main",
]

# The four panel sizes of the convergence study, as (n, d).
TRACE_SIZES = ((100, 200), (100, 1000), (500, 200), (500, 1000))

# Growth regimes for the scaling study: proportional, fixed n, fixed d.
SCALING_REGIMES = (
    ("a", ((50, 100), (100, 200), (150, 300), (200, 400))),
    ("b", ((100, 100), (100, 200), (100, 400), (100, 800))),
    ("c", ((50, 200), (100, 200), (200, 200), (400, 200))),
)

COMPARE_STARTS = (1, 5, 10, 20, 30)


@dataclass(frozen=True)
class ExperimentSpec:
    """Resolved description of one benchmark run."""

    kind: str
    sizes: tuple = TRACE_SIZES
    lam: object = "auto"
    repeats: int = 3
    seeds: tuple = (0,)
    h_frac: float = 0.75
    starts: tuple = COMPARE_STARTS
    mad_constant: bool = False
    tol_rel: float = 1e-6
    t_max: int | None = None
    workers: int = 1
    regimes: tuple = SCALING_REGIMES

    def __post_init__(self):
        if self.kind not in ("trace", "scaling", "compare"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if int(self.repeats) < 1:
            raise ValueError(f"repeats must be at least 1, got {self.repeats}")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if not self.sizes:
            raise ValueError("need at least one (n, d) size")
        for n, d in self.sizes:
            if int(n) < 2 or int(d) < 1:
                raise ValueError(f"invalid size (n={n}, d={d})")
        if isinstance(self.lam, str):
            if self.lam != "auto":
                raise ValueError(f"lambda rule must be 'auto', got {self.lam!r}")
        elif not (float(self.lam) >= 0.0 and math.isfinite(float(self.lam))):
            raise ValueError(f"lambda must be a finite nonnegative number, got {self.lam}")
        if not 0.0 < float(self.h_frac) <= 1.0:
            raise ValueError(f"h-frac must lie in (0, 1], got {self.h_frac}")
        if self.kind == "compare":
            ks = tuple(int(k) for k in self.starts)
            if not ks or any(k < 1 for k in ks) or list(ks) != sorted(set(ks)):
                raise ValueError(f"starts must be distinct ascending positives, got {self.starts}")
        if self.kind == "scaling":
            for name, sizes in self.regimes:
                if len(sizes) < 2:
                    raise ValueError(f"regime {name!r} needs at least 2 sizes")
        if int(self.workers) < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

    @property
    def t_max_resolved(self) -> int:
        if self.t_max is not None:
            return int(self.t_max)
        return 100_000 if self.kind == "compare" else 1_000_000


@dataclass(frozen=True)
class CompareRow:
    seed: int
    time_ratio: float
    objective_ratio: float

    def __post_init__(self):
        if not (self.time_ratio > 0.0 and self.objective_ratio > 0.0):
            raise ValueError(
                f"ratios must be positive, got time={self.time_ratio}, "
                f"objective={self.objective_ratio}"
            )


def resolve_lambda(ds: Dataset, lam, fit_intercept: bool = True) -> float:
    """Turn a lambda setting into a number for one dataset.

    Numbers pass through.  The rule ``"auto"`` returns 5% of the null-model
    threshold: the smallest lambda at which the quarter-scale full-sample
    LASSO keeps every coefficient at zero.
    """
    if not isinstance(lam, str):
        v = float(lam)
        if not (v >= 0.0 and math.isfinite(v)):
            raise ValueError(f"lambda must be finite and nonnegative, got {lam}")
        return v
    if lam != "auto":
        raise ValueError(f"unknown lambda rule {lam!r}")
    r = ds.y - ds.y.mean() if fit_intercept else ds.y
    lam_max = float(np.abs(0.5 * (ds.X.T @ r)).max())
    return 0.05 * lam_max


def _build_problem(n, d, seed, spec: ExperimentSpec):
    ds, truth = generate(GenSpec(n=int(n), d=int(d), seed=int(seed)))
    std, _scale = robust_standardize(ds, mad_constant=spec.mad_constant)
    h = trimming_count(std.n, spec.h_frac)
    lam = resolve_lambda(std, spec.lam)
    return StrlsProblem(std, h=h, lam=lam), truth


def _solver_config(spec: ExperimentSpec) -> SolverConfig:
    return SolverConfig(tol_rel=spec.tol_rel, t_max=spec.t_max_resolved)


def _report_payload(problem: StrlsProblem, rep) -> dict:
    return {
        "status": rep.status,
        "iterations": int(rep.iterations),
        "objective": rep.objective,
        "stationarity": rep.stationarity,
        "grad_norm_init": rep.grad_norm_init,
        "n": problem.n,
        "d": problem.d,
        "h": problem.h,
        "lambda": problem.lam,
        "final": {
            "beta0": rep.final.beta0,
            "beta": rep.final.beta,
            "alpha": rep.final.alpha,
        },
        "linesearch": {
            "backtracks_total": int(rep.linesearch_backtracks_total),
            "backtracks_max": int(rep.linesearch_backtracks_max),
        },
        "descent_violations": int(rep.descent_violations),
        "timing": {"elapsed_s": rep.elapsed_s},
    }


# -------------------------------------------------------------- bench trace

def _trace_cell(payload):
    """One (size, seed) cell of the trace grid; returns (key, result|error)."""
    spec, n, d, seed = payload
    key = f"n{n}_d{d}_seed{seed}"
    try:
        problem, _truth = _build_problem(n, d, seed, spec)
        rng = named_stream(seed, "trace-init", n, d)
        beta0 = float(rng.standard_normal()) if problem.fit_intercept else 0.0
        beta = rng.standard_normal(problem.d)
        base = lift_to_strls(problem, beta0, beta)
        init = make_iterate(problem, beta0, beta, base.alpha)
        rep = solve(problem, init, _solver_config(spec))
        return key, {"trace": rep.trace, "report": _report_payload(problem, rep)}, None
    except Exception as exc:  # cell failures must not sink the grid
        return key, None, f"{type(exc).__name__}: {exc}"


def run_trace(spec: ExperimentSpec, out_dir) -> dict:
    """Solve every (size, seed) cell and write per-iteration trace files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = [(spec, n, d, seed) for (n, d) in spec.sizes for seed in spec.seeds]
    results = _run_cells(_trace_cell, cells, spec.workers)

    files, failures = [], []
    for key, res, err in results:
        if err is not None:
            failures.append({"cell": key, "error": err})
            continue
        trace_path = out / f"trace_{key}.csv"
        fileio.write_trace_csv(trace_path, res["trace"])
        report_path = out / f"report_{key}.json"
        fileio.write_json(report_path, res["report"])
        files.append(str(trace_path))
        files.append(str(report_path))
    return {"files": files, "failures": failures}


# ------------------------------------------------------------ bench scaling

def _scaling_cell(payload):
    spec, regime, n, d, solve_fn = payload
    key = f"{regime}_n{n}_d{d}"
    if solve_fn is None:
        solve_fn = solve
    try:
        seed = spec.seeds[0]
        problem, _truth = _build_problem(n, d, seed, spec)
        b0, b = elemental_start(problem, named_stream(seed, "scaling-init", n, d))
        init = lift_to_strls(problem, b0, b)
        cfg = _solver_config(spec)
        solve_fn(problem, init, cfg)  # warm-up, discarded
        times = []
        for _ in range(spec.repeats):
            t0 = perf_counter()
            solve_fn(problem, init, cfg)
            times.append(perf_counter() - t0)
        return key, {"regime": regime, "n": n, "d": d, "times": times}, None
    except Exception as exc:
        return key, None, f"{type(exc).__name__}: {exc}"


def run_scaling(spec: ExperimentSpec, out_dir, solve_fn=None) -> dict:
    """Time the solver across the growth regimes; write the summary CSV.

    ``solve_fn(problem, init, cfg)`` replaces the solver when given, which
    lets tests calibrate the timing bracket with a no-op stub.  Only that
    call sits between the clock reads.  Injected callables require
    ``workers=1``; the default solver is resolved inside each worker.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = [
        (spec, regime, n, d, solve_fn)
        for regime, sizes in spec.regimes
        for (n, d) in sizes
    ]
    results = _run_cells(_scaling_cell, cells, spec.workers)

    rows, failures = [], []
    for key, res, err in results:
        if err is not None:
            failures.append({"cell": key, "error": err})
            continue
        times = np.asarray(res["times"])
        sd = float(times.std(ddof=1)) if times.size > 1 else 0.0
        rows.append((res["regime"], res["n"], res["d"], float(times.mean()), sd))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    path = out / "scaling_summary.csv"
    fileio.write_scaling_csv(path, rows)
    return {"files": [str(path)], "failures": failures, "rows": rows}


# ------------------------------------------------------------ bench compare

def _pgm_multistart(problem: StrlsProblem, seed: int, ks, spec: ExperimentSpec):
    """Best objective and cumulative time after the first k starts, per k.

    Start j is a 3-sample LASSO init from stream (seed, "pgm-start", j), so
    smaller k values are prefixes of larger ones.  Each start's wall time is
    measured alone; per-k time is the sum over its prefix, matching a
    sequential k-start run without re-solving shared prefixes.
    """
    cfg = _solver_config(spec)
    best = math.inf
    cum_time = 0.0
    out = {}
    ks = sorted(int(k) for k in ks)
    for j in range(ks[-1]):
        t0 = perf_counter()
        b0, b = elemental_start(problem, named_stream(seed, "pgm-start", j))
        rep = solve(problem, lift_to_strls(problem, b0, b), cfg)
        lifted = lift_to_strls(problem, rep.final.beta0, rep.final.beta)
        cum_time += perf_counter() - t0
        best = min(best, lifted.objective)
        if j + 1 in ks:
            out[j + 1] = (best, cum_time)
    return [out[k] for k in ks]


def _fast_baseline(problem: StrlsProblem, seed: int, spec: ExperimentSpec):
    ms = MultiStartConfig(seed=seed)
    t0 = perf_counter()
    rep = fast_slts(problem, ms)
    return rep.objective, perf_counter() - t0


def _compare_cell(payload):
    spec, seed, pgm_fn, fast_fn = payload
    key = f"seed{seed}"
    try:
        n, d = spec.sizes[0]
        problem, _truth = _build_problem(n, d, seed, spec)
        ks = sorted(int(k) for k in spec.starts)
        if pgm_fn is None:
            pgm = _pgm_multistart(problem, seed, ks, spec)
        else:
            pgm = pgm_fn(problem, seed, ks)
        if fast_fn is None:
            fast_obj, fast_time = _fast_baseline(problem, seed, spec)
        else:
            fast_obj, fast_time = fast_fn(problem, seed)
        rows = []
        for k, (obj, t) in zip(ks, pgm):
            rows.append(
                {
                    "seed": seed,
                    "starts": k,
                    "pgm_objective": obj,
                    "fast_objective": fast_obj,
                    "objective_ratio": obj / fast_obj,
                    "pgm_time_s": t,
                    "fast_time_s": fast_time,
                    "time_ratio": t / fast_time,
                }
            )
        return key, rows, None
    except Exception as exc:
        return key, None, f"{type(exc).__name__}: {exc}"


def summarize_compare(rows) -> dict:
    """Geometric mean, min, max of both ratios, grouped by start count."""
    out = {}
    for k in sorted({int(r["starts"]) for r in rows}):
        group = [r for r in rows if int(r["starts"]) == k]
        entry = {}
        for field in ("objective_ratio", "time_ratio"):
            vals = np.asarray([float(g[field]) for g in group])
            if not (vals > 0).all():
                raise ValueError(f"{field} must be positive to take a geometric mean")
            entry[field] = {
                "geomean": float(np.exp(np.mean(np.log(vals)))),
                "min": float(vals.min()),
                "max": float(vals.max()),
                "n_seeds": int(vals.size),
            }
        out[str(k)] = entry
    return out


def run_compare(spec: ExperimentSpec, out_dir, pgm_fn=None, fast_fn=None) -> dict:
    """Per-seed ratio rows plus a geometric-mean summary, both written out.

    ``pgm_fn(problem, seed, ks) -> [(objective, time_s) per k]`` and
    ``fast_fn(problem, seed) -> (objective, time_s)`` are injectable; the
    defaults run the multi-start prox-gradient solver and the alternating
    baseline, both scored by the lifted trimmed objective.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = [(spec, seed, pgm_fn, fast_fn) for seed in spec.seeds]
    results = _run_cells(_compare_cell, cells, spec.workers)

    rows, failures = [], []
    for key, res, err in results:
        if err is not None:
            failures.append({"cell": key, "error": err})
            continue
        rows.extend(res)
    rows.sort(key=lambda r: (int(r["starts"]), int(r["seed"])))
    for r in rows:  # surfaces a bad cell before anything is written
        CompareRow(seed=int(r["seed"]), time_ratio=r["time_ratio"], objective_ratio=r["objective_ratio"])

    csv_path = out / "compare.csv"
    fileio.write_compare_csv(csv_path, rows)
    files = [str(csv_path)]
    summary = {}
    if rows:
        summary = summarize_compare(rows)
        summary_path = out / "compare_summary.json"
        fileio.write_json(summary_path, {"starts": summary})
        files.append(str(summary_path))
    return {"files": files, "failures": failures, "rows": rows, "summary": summary}


def _run_cells(fn, cells, workers: int):
    if workers <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=int(workers)) as pool:
        return list(pool.map(fn, cells))


# ------------------------------------------------------------------ report

def _format_band(stats) -> str:
    return f"{stats['geomean']:.3f} ({stats['min']:.3f}, {stats['max']:.3f})"


def render_compare_table(rows) -> str:
    summary = summarize_compare(rows)
    lines = [
        "Multi-start solver vs alternating baseline (solver/baseline ratios,",
        "geometric mean with min and max over seeds):",
        "",
        f"{'starts':>6}  {'objective ratio':<26}  {'time ratio':<26}",
    ]
    for k, entry in summary.items():
        lines.append(
            f"{k:>6}  {_format_band(entry['objective_ratio']):<26}  "
            f"{_format_band(entry['time_ratio']):<26}"
        )
    return "\n".join(lines)


def render_scaling_table(rows) -> str:
    lines = ["Mean wall time per solve (sd over repeats):", ""]
    lines.append(f"{'regime':>6}  {'n':>5}  {'d':>5}  {'mean_s':>12}  {'sd_s':>12}")
    for r in rows:
        lines.append(
            f"{r['regime']:>6}  {r['n']:>5}  {r['d']:>5}  {r['mean_s']:>12.6f}  {r['sd_s']:>12.6f}"
        )
    return "\n".join(lines)


def run_report(out_dir) -> str:
    """Render whatever summaries the directory holds; error if none."""
    out = Path(out_dir)
    parts = []
    compare_path = out / "compare.csv"
    if compare_path.exists():
        rows = fileio.read_compare_csv(compare_path)
        if rows:
            parts.append(render_compare_table(rows))
    scaling_path = out / "scaling_summary.csv"
    if scaling_path.exists():
        parts.append(render_scaling_table(fileio.read_scaling_csv(scaling_path)))
    traces = sorted(out.glob("trace_*.csv"))
    if traces:
        lines = ["Convergence traces:", ""]
        for p in traces:
            tr = fileio.read_trace_csv(p)
            lines.append(
                f"  {p.name}: {tr.shape[0]} rows, final objective {tr[-1, 1]!r}"
            )
        parts.append("\n".join(lines))
    if not parts:
        raise ValueError(f"{out}: no compare.csv, scaling_summary.csv, or trace_*.csv found")
    return "\n\n".join(parts)


# --------------------------------------------------------------- CLI proper

_DEFAULTS = {
    "generate": {
        "n": 100, "d": 200, "seed": 0, "rho": 0.5, "out": "out", "format": "csv",
    },
    "solve": {
        "h_frac": 0.75, "lam": "auto", "seed": 0, "out": "out", "format": "csv",
        "mad_constant": False, "standardize": False, "tol_rel": 1e-6, "t_max": None,
        "init": "zero",
    },
    "bench trace": {
        "n": None, "d": None, "h_frac": 0.75, "lam": "auto", "seed": 0, "n_seeds": 1,
        "out": "out", "mad_constant": False, "tol_rel": 1e-6, "t_max": None, "workers": 1,
    },
    "bench scaling": {
        "h_frac": 0.75, "lam": "auto", "seed": 0, "repeats": 3, "out": "out",
        "mad_constant": False, "tol_rel": 1e-6, "t_max": None, "workers": 1,
    },
    "bench compare": {
        "n": 100, "d": 200, "h_frac": 0.75, "lam": "auto", "seed": 0, "n_seeds": 10,
        "starts": "1,5,10,20,30", "out": "out", "mad_constant": False,
        "tol_rel": 1e-6, "t_max": None, "workers": 1,
    },
}


def _add_common(p, *names):
    # Flags default to SUPPRESS so a config file can fill unset ones.
    S = argparse.SUPPRESS
    if "n" in names:
        p.add_argument("--n", type=int, default=S, help="sample count")
    if "d" in names:
        p.add_argument("--d", type=int, default=S, help="covariate count")
    if "h_frac" in names:
        p.add_argument("--h-frac", dest="h_frac", type=float, default=S,
                       help="trimmed fraction of samples kept (default 0.75)")
    if "lam" in names:
        p.add_argument("--lambda", dest="lam", default=S,
                       help="l1 weight: a number or 'auto' (5%% of the null-model threshold)")
    if "seed" in names:
        p.add_argument("--seed", type=int, default=S, help="base RNG seed")
    if "repeats" in names:
        p.add_argument("--repeats", type=int, default=S, help="timed repetitions per cell")
    if "starts" in names:
        p.add_argument("--starts", default=S,
                       help="comma-separated start counts (default 1,5,10,20,30)")
    if "n_seeds" in names:
        p.add_argument("--n-seeds", dest="n_seeds", type=int, default=S,
                       help="number of consecutive seeds from --seed")
    if "out" in names:
        p.add_argument("--out", default=S, help="output directory")
    if "format" in names:
        p.add_argument("--format", choices=("csv", "json"), default=S,
                       help="dataset file format")
    if "mad_constant" in names:
        p.add_argument("--mad-constant", dest="mad_constant", action="store_true",
                       default=S, help="scale MAD by 1.4826 when standardizing")
    if "tol_rel" in names:
        p.add_argument("--tol-rel", dest="tol_rel", type=float, default=S,
                       help="relative stationarity tolerance")
    if "t_max" in names:
        p.add_argument("--t-max", dest="t_max", type=int, default=S,
                       help="iteration cap (default 1e6; 1e5 for compare)")
    if "workers" in names:
        p.add_argument("--workers", type=int, default=S,
                       help="worker processes for grid cells (default 1)")
    p.add_argument("--config", default=S, help="JSON file of flag defaults")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="slts",
        description="Sparse trimmed regression: data generation, solving, benchmarks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic dataset and truth sidecar")
    g.add_argument("--rho", type=float, default=argparse.SUPPRESS,
                   help="AR(1) correlation base (default 0.5)")
    _add_common(g, "n", "d", "seed", "out", "format")

    s = sub.add_parser("solve", help="solve one dataset file")
    s.add_argument("dataset", help="dataset CSV or JSON path")
    s.add_argument("--standardize", action="store_true", default=argparse.SUPPRESS,
                   help="robust-standardize before solving")
    s.add_argument("--init", choices=("zero", "random"), default=argparse.SUPPRESS,
                   help="coefficient init (default zero); alpha always from the lift")
    _add_common(s, "h_frac", "lam", "seed", "out", "format", "mad_constant",
                "tol_rel", "t_max")

    b = sub.add_parser("bench", help="run an experiment grid")
    bsub = b.add_subparsers(dest="bench_kind", required=True)

    bt = bsub.add_parser("trace", help="convergence traces on the standard sizes")
    _add_common(bt, "n", "d", "h_frac", "lam", "seed", "n_seeds", "out",
                "mad_constant", "tol_rel", "t_max", "workers")

    bs = bsub.add_parser("scaling", help="wall-time scaling summary")
    _add_common(bs, "h_frac", "lam", "seed", "repeats", "out",
                "mad_constant", "tol_rel", "t_max", "workers")

    bc = bsub.add_parser("compare", help="multi-start solver vs alternating baseline")
    _add_common(bc, "n", "d", "h_frac", "lam", "seed", "n_seeds", "starts", "out",
                "mad_constant", "tol_rel", "t_max", "workers")

    r = sub.add_parser("report", help="print text tables for an output directory")
    r.add_argument("dir", help="directory holding benchmark outputs")
    return ap


def _merge_options(command: str, ns: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    explicit = {k: v for k, v in vars(ns).items()
                if k not in ("command", "bench_kind", "dataset", "dir")}
    merged = dict(_DEFAULTS[command])
    cfg_path = explicit.pop("config", None)
    if cfg_path is not None:
        with open(cfg_path) as f:
            loaded = json.load(f)
        if not isinstance(loaded, dict):
            raise ValueError(f"{cfg_path}: config must be a JSON object")
        if "lambda" in loaded:  # config keys mirror flag spellings
            loaded["lam"] = loaded.pop("lambda")
        unknown = set(loaded) - set(merged)
        if unknown:
            raise ValueError(f"{cfg_path}: unknown config keys {sorted(unknown)}")
        merged.update(loaded)
    merged.update(explicit)
    return merged


def _parse_lambda_opt(v):
    if isinstance(v, str) and v != "auto":
        return float(v)
    return v


def _parse_starts_opt(v):
    if isinstance(v, str):
        return tuple(int(p) for p in v.split(",") if p.strip())
    return tuple(int(k) for k in v)


def _write_resolved_config(out_dir, command: str, opts: dict) -> None:
    payload = {"command": command, **opts}
    fileio.write_json(Path(out_dir) / "resolved_config.json", payload)


def _cmd_generate(opts) -> int:
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    spec = GenSpec(n=int(opts["n"]), d=int(opts["d"]), rho=float(opts["rho"]),
                   seed=int(opts["seed"]))
    ds, truth = generate(spec)
    if opts["format"] == "csv":
        path = out / "dataset.csv"
        fileio.write_dataset_csv(path, ds)
        fileio.validate_dataset_csv(path)
    else:
        path = out / "dataset.json"
        fileio.write_dataset_json(path, ds)
        fileio.read_dataset_json(path)
    fileio.write_truth_json(out / "truth.json", truth)
    _write_resolved_config(out, "generate", opts)
    print(f"wrote {path} and {out / 'truth.json'}")
    return 0


def _cmd_solve(opts, dataset_path: str) -> int:
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    if dataset_path.endswith(".json"):
        ds = fileio.read_dataset_json(dataset_path)
    else:
        ds = fileio.read_dataset_csv(dataset_path)
    if opts["standardize"]:
        ds, _scale = robust_standardize(ds, mad_constant=opts["mad_constant"])
    h = trimming_count(ds.n, float(opts["h_frac"]))
    lam = resolve_lambda(ds, _parse_lambda_opt(opts["lam"]))
    problem = StrlsProblem(ds, h=h, lam=lam)
    if opts["init"] == "random":
        rng = named_stream(int(opts["seed"]), "solve-init")
        beta0, beta = float(rng.standard_normal()), rng.standard_normal(ds.d)
    else:
        beta0, beta = 0.0, np.zeros(ds.d)
    init = lift_to_strls(problem, beta0, beta)
    t_max = opts["t_max"]
    cfg = SolverConfig(tol_rel=float(opts["tol_rel"]),
                       t_max=1_000_000 if t_max is None else int(t_max))
    rep = solve(problem, init, cfg)
    fileio.write_trace_csv(out / "trace.csv", rep.trace)
    fileio.validate_trace_csv(out / "trace.csv")
    fileio.write_json(out / "report.json", _report_payload(problem, rep))
    _write_resolved_config(out, "solve", opts)
    print(f"{rep.status} after {rep.iterations} iterations, objective {rep.objective!r}")
    return 0


def _spec_from_opts(kind: str, opts: dict) -> ExperimentSpec:
    seeds = tuple(range(int(opts["seed"]), int(opts["seed"]) + int(opts.get("n_seeds", 1))))
    common = dict(
        kind=kind,
        lam=_parse_lambda_opt(opts["lam"]),
        seeds=seeds,
        h_frac=float(opts["h_frac"]),
        mad_constant=bool(opts["mad_constant"]),
        tol_rel=float(opts["tol_rel"]),
        t_max=None if opts["t_max"] is None else int(opts["t_max"]),
        workers=int(opts["workers"]),
    )
    if kind == "trace":
        n, d = opts.get("n"), opts.get("d")
        if (n is None) != (d is None):
            raise ValueError("--n and --d must be given together")
        sizes = TRACE_SIZES if n is None else ((int(n), int(d)),)
        return ExperimentSpec(sizes=sizes, **common)
    if kind == "scaling":
        return ExperimentSpec(sizes=((100, 200),), repeats=int(opts["repeats"]), **common)
    sizes = ((int(opts["n"]), int(opts["d"])),)
    return ExperimentSpec(sizes=sizes, starts=_parse_starts_opt(opts["starts"]), **common)


def _cmd_bench(kind: str, opts: dict) -> int:
    spec = _spec_from_opts(kind, opts)
    out = Path(opts["out"])
    runner = {"trace": run_trace, "scaling": run_scaling, "compare": run_compare}[kind]
    result = runner(spec, out)
    _write_resolved_config(out, f"bench {kind}", opts)
    for path in result["files"]:
        _validate_output(path)
    for failure in result["failures"]:
        print(f"cell {failure['cell']} failed: {failure['error']}", file=sys.stderr)
    n_ok = len(result["files"])
    print(f"wrote {n_ok} files to {out}" + (
        f", {len(result['failures'])} cells failed" if result["failures"] else ""))
    return 2 if result["failures"] else 0


def _validate_output(path: str) -> None:
    name = Path(path).name
    if name.startswith("trace_"):
        fileio.validate_trace_csv(path)
    elif name == "scaling_summary.csv":
        fileio.validate_scaling_csv(path)
    elif name == "compare.csv":
        fileio.validate_compare_csv(path)


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        if ns.command == "report":
            print(run_report(ns.dir))
            return 0
        command = ns.command if ns.command != "bench" else f"bench {ns.bench_kind}"
        opts = _merge_options(command, ns)
        if ns.command == "generate":
            return _cmd_generate(opts)
        if ns.command == "solve":
            return _cmd_solve(opts, ns.dataset)
        return _cmd_bench(ns.bench_kind, opts)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
