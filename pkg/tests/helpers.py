"""Shared builders for the test suite."""

import itertools

import numpy as np

import slts


def make_instance(n=40, d=8, seed=0, h_frac=0.75, lam=0.5, fit_intercept=True,
                  standardize=True):
    """Standard contaminated instance wrapped in a problem."""
    ds, truth = slts.generate(slts.GenSpec(n=n, d=d, seed=seed))
    if standardize:
        ds, _ = slts.robust_standardize(ds)
    h = slts.trimming_count(n, h_frac)
    problem = slts.StrlsProblem(ds, h=h, lam=lam, fit_intercept=fit_intercept)
    return problem, truth


def checked_solve(problem, init, cfg=None, callback=None):
    """Solve and require a clean descent ledger: no accepted step may violate
    the sufficient-decrease inequality beyond the 1e-10 slack."""
    rep = slts.solve(problem, init, cfg, callback=callback)
    assert rep.descent_violations == 0, (
        f"{rep.descent_violations} descent violations in a {rep.iterations}-iteration run"
    )
    return rep


def prox_oracle_min(r, h, gamma):
    """Brute-force minimum of gamma*T_h(z) + 0.5*||z - r||^2 over all
    kept-subset candidates.  Any minimizer shrinks some h coordinates by
    1/(2*gamma+1) and copies the rest, so enumerating subsets is exact."""
    r = np.asarray(r, dtype=float)
    n = r.size
    shrink = 1.0 / (2.0 * gamma + 1.0)
    best = np.inf
    for S in itertools.combinations(range(n), h):
        z = r.copy()
        z[list(S)] *= shrink
        sq = np.sort(z * z)
        val = gamma * sq[:h].sum() + 0.5 * float((z - r) @ (z - r))
        best = min(best, val)
    return best


def prox_objective(r, h, gamma, z):
    z = np.asarray(z, dtype=float)
    return gamma * slts.trimmed_squares(z, h) + 0.5 * float((z - r) @ (z - r))
