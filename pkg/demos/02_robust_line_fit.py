"""Fit a contaminated regression two ways and compare them on the clean rows.

One tenth of the responses get a +20 shift.  The trimmed fit (h = 0.75 n)
shrugs them off; the same solver with h = n is an ordinary lasso and gets
dragged toward the outliers.
"""

import numpy as np

import slts

ds, truth = slts.generate(slts.GenSpec(n=100, d=20, seed=42))
std, scale = slts.robust_standardize(ds)
lam = 0.05 * float(np.abs(0.5 * (std.X.T @ (std.y - std.y.mean()))).max())
print(f"n={ds.n}, d={ds.d}, outliers={int(truth.outlier_mask.sum())}, lambda={lam:.4f}")

h = slts.trimming_count(std.n)          # floor(0.75 * n)
trimmed = slts.StrlsProblem(std, h=h, lam=lam)
plain = slts.StrlsProblem(std, h=std.n, lam=lam)

rep_t = slts.solve(trimmed, slts.lift_to_strls(trimmed, 0.0, np.zeros(std.d)))
rep_p = slts.solve(plain, slts.lift_to_strls(plain, 0.0, np.zeros(std.d)))
print(f"trimmed: {rep_t.status} in {rep_t.iterations} iters, objective {rep_t.objective:.4f}")
print(f"plain:   {rep_p.status} in {rep_p.iterations} iters, objective {rep_p.objective:.4f}")

clean = ~truth.outlier_mask
for name, rep in (("trimmed", rep_t), ("plain", rep_p)):
    resid = std.y - rep.final.beta0 - std.X @ rep.final.beta
    print(f"{name}: median |residual| on clean rows = {np.median(np.abs(resid[clean])):.4f}")

# The absorber alpha soaks up what trimming discards, so its largest
# entries point straight at the contaminated rows.
flagged = np.argsort(-np.abs(rep_t.final.alpha))[: int(truth.outlier_mask.sum())]
actual = np.flatnonzero(truth.outlier_mask)
hits = len(set(flagged.tolist()) & set(actual.tolist()))
print(f"\nlargest-|alpha| rows vs true outliers: {hits}/{actual.size} identified")
