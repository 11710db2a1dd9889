"""Watch the objective gap shrink geometrically on one medium instance."""

import numpy as np

import slts

ds, _ = slts.generate(slts.GenSpec(n=100, d=200, seed=7))
std, _ = slts.robust_standardize(ds)
lam = 0.05 * float(np.abs(0.5 * (std.X.T @ (std.y - std.y.mean()))).max())
problem = slts.StrlsProblem(std, h=slts.trimming_count(std.n), lam=lam)

rng = np.random.default_rng(0)
init = slts.lift_to_strls(problem, float(rng.standard_normal()),
                          rng.standard_normal(std.d))
rep = slts.solve(problem, init, slts.SolverConfig(tol_rel=1e-10))
print(f"{rep.status} after {rep.iterations} iterations")
print(f"objective {rep.objective:.6f}, stationarity {rep.stationarity:.3e} "
      f"(started at gradient norm {rep.grad_norm_init:.3e})")
print(f"line search backtracked {rep.linesearch_backtracks_total} times total, "
      f"at most {rep.linesearch_backtracks_max} within one iteration")

# trace columns: t, objective, stationarity, elapsed_s
obj = rep.trace[:, 1]
gap = obj - obj.min()
pos = np.flatnonzero(gap > 1e-13 * max(1.0, abs(obj.min())))
tail = pos[-60:]
ratios = gap[tail][1:] / gap[tail][:-1]
print(f"\nmedian successive objective-gap ratio over the last {tail.size} "
      f"informative iterations: {np.median(ratios):.4f} (< 1 means geometric decay)")

print("\n  iter   objective        gap")
for t in tail[:: max(1, tail.size // 10)]:
    print(f"  {t:5d}   {obj[t]:.8f}   {gap[t]:.3e}")
