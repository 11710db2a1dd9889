"""Small-scale rerun of the solver-vs-baseline comparison table.

Three seeds instead of ten and two start counts instead of five, so it
finishes in well under a minute; the printed table has the same layout as
`slts bench compare` followed by `slts report`.
"""

import tempfile
from pathlib import Path

from slts.cli import ExperimentSpec, render_compare_table, run_compare

spec = ExperimentSpec(
    kind="compare",
    sizes=((100, 200),),
    seeds=(0, 1, 2),
    starts=(1, 5),
    tol_rel=1e-6,
)

with tempfile.TemporaryDirectory() as tmp:
    result = run_compare(spec, Path(tmp))
    assert not result["failures"], result["failures"]
    print(render_compare_table(result["rows"]))
    print()
    seeds = sorted({r["seed"] for r in result["rows"]})
    print(f"per-seed wall times ({len(seeds)} seeds):")
    for seed in seeds:
        rows = [r for r in result["rows"] if r["seed"] == seed]
        fast_t = rows[0]["fast_time_s"]
        solver_t = max(r["pgm_time_s"] for r in rows)
        print(f"  seed {seed}: solver (5 starts) {solver_t:6.2f}s,"
              f"  baseline {fast_t:6.2f}s")
