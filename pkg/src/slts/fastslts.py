"""Alternating subset-selection baseline for sparse trimmed regression.

The classic scheme alternates two moves: pick the h samples with the
smallest absolute residuals under the current coefficients (the
concentration step), then refit a LASSO on just those samples.  The trimmed
objective is nonincreasing across such pairs, so running a cheap warm phase
from many random elemental starts and refining only the best few is an
effective global heuristic.  This implementation keeps the subproblem on
the same 1/4 scale as the trimmed objective, so objective values are
directly comparable with the proximal solver's.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .problem import StrlsProblem, lift_to_strls, slts_objective
from .rng import named_stream
from .solver import (
    ACCEPT_SLACK_REL,
    STATUS_CONVERGED,
    STATUS_MAX_ITERATIONS,
    SolverReport,
)
from .trimmed import select_trim, soft_threshold

__all__ = [
    "Subset",
    "MultiStartConfig",
    "c_step",
    "lasso_on_subset",
    "elemental_start",
    "fast_slts",
]

# Alternation pairs per refined candidate; generous, typical runs need < 50.
REFINE_CAP = 500
# Consecutive near-zero inner-objective decreases that stop the inner loop.
STALL_LIMIT = 5


@dataclass(frozen=True, eq=False)
class Subset:
    """An ordered set of sample indices."""

    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp)
        if idx.ndim != 1 or idx.size < 1:
            raise ValueError("subset must be a nonempty 1-d index array")
        idx = np.sort(idx)
        if np.any(idx[1:] == idx[:-1]):
            raise ValueError("subset indices must be distinct")
        if idx[0] < 0:
            raise ValueError("subset indices must be nonnegative")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return self.indices.size


@dataclass(frozen=True)
class MultiStartConfig:
    n_starts: int = 500
    warm_iters: int = 2
    n_keep: int = 10
    inner_tol: float = 1e-6
    inner_max_iter: int = 2000
    seed: int = 0

    def __post_init__(self):
        if int(self.n_starts) < 1:
            raise ValueError(f"n_starts must be positive, got {self.n_starts}")
        if int(self.warm_iters) < 0:
            raise ValueError(f"warm_iters must be nonnegative, got {self.warm_iters}")
        if not 1 <= int(self.n_keep) <= int(self.n_starts):
            raise ValueError(f"n_keep must lie in [1, n_starts], got {self.n_keep}")
        if not self.inner_tol >= 0.0:
            raise ValueError(f"inner_tol must be nonnegative, got {self.inner_tol}")
        if int(self.inner_max_iter) < 1:
            raise ValueError(f"inner_max_iter must be positive, got {self.inner_max_iter}")
        for name in ("n_starts", "warm_iters", "n_keep", "inner_max_iter", "seed"):
            object.__setattr__(self, name, int(getattr(self, name)))


def c_step(problem: StrlsProblem, beta0, beta) -> Subset:
    """Concentration step: the h samples best fit by (beta0, beta).

    Ties at the cut magnitude go to the smaller index, so the step is
    deterministic.
    """
    beta = np.asarray(beta, dtype=float)
    res = (problem.y - float(beta0)) - problem.X @ beta
    sel = select_trim(res, problem.h)
    return Subset(sel.kept_indices)


def _lasso_ista(Xs, ys, lam, fit_intercept, b0, b, tol, max_iter):
    """ISTA with per-block BB seeding and backtracking on the 1/4-scale LASSO.

    Minimizes 0.25*||ys - b0 - Xs b||^2 + lam*||b||_1, warm-started at
    (b0, b).  Stops on a two-block stationarity measure relative to the
    warm-start gradient norm, on an objective stall, or at max_iter.
    """
    c1 = 2.0
    c2 = 1e-4
    eta_lo, eta_hi = 1e-10, 1e10

    def value(r, b):
        val = 0.25 * float(r @ r)
        if lam != 0.0:
            val += lam * float(np.abs(b).sum())
        return val

    def gradient(r):
        g0 = -0.5 * float(r.sum()) if fit_intercept else 0.0
        gb = -0.5 * (Xs.T @ r)
        return g0, gb

    r = (ys - b0) - Xs @ b
    q = value(r, b)
    g0, gb = gradient(r)
    gnorm0 = float(np.sqrt(g0 * g0 + float(gb @ gb)))
    tol_abs = tol * gnorm0

    last = (1.0, 1.0)
    prev = None  # (d0, db, dg0, dgb) pieces live in locals instead
    stall = 0
    for t in range(1, max_iter + 1):
        if prev is None:
            e0, eb = 1.0, 1.0
        else:
            p_b0, p_b, p_g0, p_gb = prev
            d0 = b0 - p_b0
            db = b - p_b
            dg0 = g0 - p_g0
            dgb = gb - p_gb

            def block(num, den, fallback):
                if den == 0.0 or num <= 0.0:
                    v = fallback
                else:
                    v = num / den
                return min(max(v, eta_lo), eta_hi)

            e0 = block(dg0 * d0, d0 * d0, last[0])
            eb = block(float(dgb @ db), float(db @ db), last[1])

        n_back = 0
        while True:
            nb0 = b0 - g0 / e0 if fit_intercept else b0
            step_b = b - gb / eb
            nb = soft_threshold(step_b, lam / eb) if lam != 0.0 else step_b
            nr = (ys - nb0) - Xs @ nb
            nq = value(nr, nb)
            d0 = nb0 - b0
            db = nb - b
            dsq = e0 * (d0 * d0) + eb * float(db @ db)
            if nq <= q - 0.5 * c2 * dsq + ACCEPT_SLACK_REL * max(1.0, abs(q)):
                break
            n_back += 1
            if n_back > 200:
                return b0, b  # stalled; keep the last accepted point
            e0 *= c1
            eb *= c1

        ng0, ngb = gradient(nr)
        w0 = ng0 - g0 - e0 * d0
        wb = ngb - gb - eb * db
        w = float(np.sqrt(w0 * w0 + float(wb @ wb)))

        if q - nq < 1e-15 * max(1.0, abs(q)):
            stall += 1
        else:
            stall = 0

        prev = (b0, b, g0, gb)
        b0, b, r, q, g0, gb = nb0, nb, nr, nq, ng0, ngb
        last = (e0, eb)
        if w <= tol_abs or stall >= STALL_LIMIT:
            break
    return b0, b


def lasso_on_subset(problem: StrlsProblem, subset: Subset, warm, tol=1e-6, max_iter=2000):
    """LASSO refit on the given samples, warm-started at ``warm``.

    Returns (beta0, beta) approximately minimizing
    0.25*sum_{i in subset}(y_i - b0 - x_i b)^2 + lam*||b||_1; the returned
    subproblem objective never exceeds the warm start's.  The intercept is
    unpenalized and pinned to zero when the problem has none.
    """
    idx = subset.indices
    if idx[-1] >= problem.n:
        raise ValueError(f"subset index {int(idx[-1])} out of range for n={problem.n}")
    b0, b = warm
    b0 = float(b0)
    b = np.asarray(b, dtype=float).copy()
    if b.shape != (problem.d,):
        raise ValueError(f"warm coefficients must have shape ({problem.d},), got {b.shape}")
    if not problem.fit_intercept and b0 != 0.0:
        raise ValueError("intercept is pinned to zero for this problem")
    Xs = np.ascontiguousarray(problem.X[idx])
    ys = problem.y[idx]
    return _lasso_ista(
        Xs, ys, problem.lam, problem.fit_intercept, b0, b, float(tol), int(max_iter)
    )


def elemental_start(problem: StrlsProblem, rng: np.random.Generator, tol=1e-6, max_iter=2000):
    """LASSO fit on 3 uniformly drawn samples, from zero coefficients."""
    if problem.n < 3:
        raise ValueError(f"need at least 3 samples for an elemental start, got {problem.n}")
    idx = np.sort(rng.choice(problem.n, size=3, replace=False))
    warm = (0.0, np.zeros(problem.d))
    return lasso_on_subset(problem, Subset(idx), warm, tol=tol, max_iter=max_iter)


def _refine(problem, b0, b, obj, alts, ms, t_start):
    """Alternate to convergence: stop on subset repetition or objective stall."""
    rows = [(float(alts), obj, float("nan"), perf_counter() - t_start)]
    S_prev = None
    converged = False
    for _ in range(REFINE_CAP):
        S = c_step(problem, b0, b)
        if S_prev is not None and np.array_equal(S.indices, S_prev.indices):
            converged = True
            break
        b0, b = lasso_on_subset(problem, S, (b0, b), ms.inner_tol, ms.inner_max_iter)
        alts += 1
        new_obj = slts_objective(problem, b0, b)
        rows.append((float(alts), new_obj, float("nan"), perf_counter() - t_start))
        if abs(obj - new_obj) < 1e-10:
            obj = new_obj
            converged = True
            break
        obj = new_obj
        S_prev = S
    return b0, b, obj, alts, converged, rows


def fast_slts(problem: StrlsProblem, ms: MultiStartConfig | None = None, starts=None) -> SolverReport:
    """Multi-start alternating baseline.

    Draws ``ms.n_starts`` elemental starts (or takes explicit warm points
    via ``starts``), runs ``ms.warm_iters`` alternations on each, keeps the
    ``ms.n_keep`` best by trimmed objective, refines those to convergence,
    and returns the best.  The report's final iterate is the lifted point of
    the winning coefficients, so its objective is the trimmed objective.
    The ``extra`` dict carries a per-start array of (start, objective,
    alternations) rows.
    """
    if ms is None:
        ms = MultiStartConfig()
    t_start = perf_counter()

    if starts is None:
        pool = []
        for i in range(ms.n_starts):
            rng = named_stream(ms.seed, "elemental", i)
            pool.append(elemental_start(problem, rng, ms.inner_tol, ms.inner_max_iter))
    else:
        pool = [(float(b0), np.asarray(b, dtype=float)) for b0, b in starts]
        if not pool:
            raise ValueError("starts must be nonempty when given")

    # Warm phase: a fixed number of cheap alternations per start.
    warm = []
    for i, (b0, b) in enumerate(pool):
        alts = 0
        for _ in range(ms.warm_iters):
            S = c_step(problem, b0, b)
            b0, b = lasso_on_subset(problem, S, (b0, b), ms.inner_tol, ms.inner_max_iter)
            alts += 1
        warm.append([b0, b, slts_objective(problem, b0, b), alts])

    n_keep = min(ms.n_keep, len(pool))
    finalists = sorted(range(len(pool)), key=lambda i: (warm[i][2], i))[:n_keep]

    best = None  # (obj, start index, b0, b, alts, converged, rows)
    for i in finalists:
        b0, b, obj, alts = warm[i]
        b0, b, obj, alts, converged, rows = _refine(problem, b0, b, obj, alts, ms, t_start)
        warm[i] = [b0, b, obj, alts]
        if best is None or (obj, i) < (best[0], best[1]):
            best = (obj, i, b0, b, alts, converged, rows)

    obj, i_best, b0, b, alts, converged, rows = best
    final = lift_to_strls(problem, b0, b)
    per_start = np.array(
        [[float(i), warm[i][2], float(warm[i][3])] for i in range(len(pool))], dtype=float
    )
    return SolverReport(
        status=STATUS_CONVERGED if converged else STATUS_MAX_ITERATIONS,
        iterations=alts,
        final=final,
        objective=final.objective,
        stationarity=float("nan"),
        grad_norm_init=float("nan"),
        trace=np.array(rows, dtype=float),
        elapsed_s=perf_counter() - t_start,
        extra={
            "per_start": per_start,
            "best_start": i_best,
            "n_refined": n_keep,
        },
    )
