"""Proximal gradient solver for the lifted trimmed regression objective.

Each iteration takes one prox-gradient step in all three blocks at once:
a plain gradient step for the intercept, soft-thresholding for the
coefficients, and the trimmed-squares prox for the absorber.  The three
inverse stepsizes are seeded per block by a variable-wise Barzilai-Borwein
rule and then grown together by backtracking until a sufficient-decrease
acceptance test passes.  Progress is certified by a stationarity measure
built from consecutive gradients, so the stopping rule never needs the
(unknown) optimal value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from time import perf_counter

import numpy as np

from .problem import Iterate, StrlsProblem, grad_smooth, make_iterate
from .trimmed import prox_trimmed_squares, soft_threshold

__all__ = [
    "StepState",
    "SolverConfig",
    "SolverReport",
    "pgm_step",
    "accept_test",
    "bb_init",
    "stationarity_measure",
    "solve",
    "STATUS_CONVERGED",
    "STATUS_MAX_ITERATIONS",
    "STATUS_LINESEARCH_STALLED",
]

STATUS_CONVERGED = "Converged"
STATUS_MAX_ITERATIONS = "MaxIterations"
STATUS_LINESEARCH_STALLED = "LinesearchStalled"

# Acceptance uses a relative slack so rounding at an exact-decrease boundary
# cannot trigger infinite backtracking; the reporting slack below is the
# looser absolute one that descent accounting is audited against.
ACCEPT_SLACK_REL = 1e-12
DESCENT_SLACK_ABS = 1e-10


@dataclass(frozen=True)
class StepState:
    """Inverse stepsizes for the three blocks, plus their entry box.

    At linesearch entry every eta lies in [eta_lo, eta_hi]; backtracking may
    push them above eta_hi through the multiplicative growth, which is fine
    because the growth is bounded on instances with a Lipschitz gradient.
    """

    eta_beta0: float
    eta_beta: float
    eta_alpha: float
    eta_lo: float = 1e-10
    eta_hi: float = 1e10

    def __post_init__(self):
        for name in ("eta_beta0", "eta_beta", "eta_alpha"):
            v = float(getattr(self, name))
            if not (np.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {v}")
            object.__setattr__(self, name, v)
        if not 0.0 < self.eta_lo <= self.eta_hi:
            raise ValueError(f"bad eta box [{self.eta_lo}, {self.eta_hi}]")

    def scaled(self, factor: float) -> "StepState":
        """All three etas multiplied by ``factor`` (backtracking growth)."""
        return StepState(
            self.eta_beta0 * factor,
            self.eta_beta * factor,
            self.eta_alpha * factor,
            self.eta_lo,
            self.eta_hi,
        )


@dataclass(frozen=True)
class SolverConfig:
    c1: float = 2.0
    c2: float = 1e-4
    eta_lo: float = 1e-10
    eta_hi: float = 1e10
    tol_rel: float = 1e-6
    t_max: int = 1_000_000
    linesearch_cap: int = 200
    record_trace: bool = True

    def __post_init__(self):
        if not self.c1 > 1.0:
            raise ValueError(f"c1 must exceed 1, got {self.c1}")
        if not 0.0 < self.c2 < 1.0:
            raise ValueError(f"c2 must lie in (0,1), got {self.c2}")
        if not 0.0 < self.eta_lo <= self.eta_hi:
            raise ValueError(f"bad eta box [{self.eta_lo}, {self.eta_hi}]")
        if not self.tol_rel >= 0.0:
            raise ValueError(f"tol_rel must be nonnegative, got {self.tol_rel}")
        if int(self.t_max) < 1:
            raise ValueError(f"t_max must be at least 1, got {self.t_max}")
        if int(self.linesearch_cap) < 0:
            raise ValueError(f"linesearch_cap must be nonnegative, got {self.linesearch_cap}")
        object.__setattr__(self, "t_max", int(self.t_max))
        object.__setattr__(self, "linesearch_cap", int(self.linesearch_cap))


@dataclass
class SolverReport:
    status: str
    iterations: int
    final: object
    objective: float
    stationarity: float
    grad_norm_init: float
    trace: np.ndarray
    linesearch_backtracks_total: int = 0
    linesearch_backtracks_max: int = 0
    descent_violations: int = 0
    elapsed_s: float = 0.0
    extra: dict = field(default_factory=dict)


def _grad_norm(grad) -> float:
    g0, gb, ga = grad
    return float(np.sqrt(g0 * g0 + float(gb @ gb) + float(ga @ ga)))


def _weighted_delta_sq(old: Iterate, cand: Iterate, eta: StepState) -> float:
    d0 = cand.beta0 - old.beta0
    db = cand.beta - old.beta
    da = cand.alpha - old.alpha
    return (
        eta.eta_beta0 * (d0 * d0)
        + eta.eta_beta * float(db @ db)
        + eta.eta_alpha * float(da @ da)
    )


def pgm_step(problem: StrlsProblem, it: Iterate, eta: StepState, grad=None) -> Iterate:
    """One prox-gradient candidate from ``it`` at inverse stepsizes ``eta``.

    Pass ``grad`` to reuse the gradient across backtracking retries; the
    candidate must be recomputed from the same gradient each time.  A
    non-finite candidate raises rather than being clamped.
    """
    if grad is None:
        grad = grad_smooth(problem, it)
    g0, gb, ga = grad
    if problem.fit_intercept:
        b0 = it.beta0 - g0 / eta.eta_beta0
    else:
        b0 = it.beta0
    step_b = it.beta - gb / eta.eta_beta
    if problem.lam != 0.0:
        beta = soft_threshold(step_b, problem.lam / eta.eta_beta)
    else:
        beta = step_b
    step_a = it.alpha - ga / eta.eta_alpha
    alpha = prox_trimmed_squares(step_a, problem.h, 1.0 / (2.0 * eta.eta_alpha)).point
    return make_iterate(problem, b0, beta, alpha)


def accept_test(problem: StrlsProblem, old: Iterate, cand: Iterate, eta: StepState, c2: float) -> bool:
    """Sufficient-decrease check for the backtracking loop.

    Accepts when the candidate objective drops by at least (c2/2) times the
    eta-weighted squared step, up to a relative rounding slack.
    """
    need = 0.5 * c2 * _weighted_delta_sq(old, cand, eta)
    slack = ACCEPT_SLACK_REL * max(1.0, abs(old.objective))
    return cand.objective <= old.objective - need + slack


def bb_init(prev: Iterate, cur: Iterate, grad_prev, grad_cur, bounds, fallback: StepState) -> StepState:
    """Variable-wise Barzilai-Borwein seeding of the inverse stepsizes.

    Per block eta = <dg, dx>/<dx, dx>, clamped into ``bounds``.  A block with
    a zero step or nonpositive curvature estimate falls back to its last
    accepted eta (clamped back into the box) instead of pinning to the lower
    bound, which would force dozens of backtracks to repair.
    """
    lo, hi = bounds

    def clamp(v: float) -> float:
        return min(max(v, lo), hi)

    def block(num: float, den: float, last: float) -> float:
        if den == 0.0 or num <= 0.0:
            return clamp(last)
        return clamp(num / den)

    d0 = cur.beta0 - prev.beta0
    db = cur.beta - prev.beta
    da = cur.alpha - prev.alpha
    dg0 = grad_cur[0] - grad_prev[0]
    dgb = grad_cur[1] - grad_prev[1]
    dga = grad_cur[2] - grad_prev[2]
    return StepState(
        block(dg0 * d0, d0 * d0, fallback.eta_beta0),
        block(float(dgb @ db), float(db @ db), fallback.eta_beta),
        block(float(dga @ da), float(da @ da), fallback.eta_alpha),
        lo,
        hi,
    )


def stationarity_measure(
    problem: StrlsProblem,
    prev: Iterate,
    cur: Iterate,
    eta_used: StepState,
    grad_prev=None,
    grad_cur=None,
) -> float:
    """Norm of the gradient-change measure certifying approximate stationarity.

    w = grad(cur) - grad(prev) - eta .* (cur - prev), where eta are the
    inverse stepsizes that produced ``cur``.  Zero at an exact fixed point.
    """
    if grad_prev is None:
        grad_prev = grad_smooth(problem, prev)
    if grad_cur is None:
        grad_cur = grad_smooth(problem, cur)
    w0 = grad_cur[0] - grad_prev[0] - eta_used.eta_beta0 * (cur.beta0 - prev.beta0)
    wb = grad_cur[1] - grad_prev[1] - eta_used.eta_beta * (cur.beta - prev.beta)
    wa = grad_cur[2] - grad_prev[2] - eta_used.eta_alpha * (cur.alpha - prev.alpha)
    return float(np.sqrt(w0 * w0 + float(wb @ wb) + float(wa @ wa)))


def solve(problem: StrlsProblem, init: Iterate, cfg: SolverConfig | None = None, callback=None) -> SolverReport:
    """Run the proximal gradient method from ``init`` until stationarity.

    Stops when the stationarity measure falls to tol_rel times the gradient
    norm at ``init``, or at t_max iterations, or when a linesearch exceeds
    its backtrack cap (which signals a numerics problem, not a normal exit).
    ``callback(t, iterate, stationarity)`` fires after every accepted step.
    """
    if cfg is None:
        cfg = SolverConfig()
    t_start = perf_counter()

    it = init
    grad = grad_smooth(problem, it)
    gnorm0 = _grad_norm(grad)
    tol = cfg.tol_rel * gnorm0

    rows = []
    if cfg.record_trace:
        rows.append((0.0, it.objective, float("nan"), 0.0))

    last = StepState(1.0, 1.0, 1.0, cfg.eta_lo, cfg.eta_hi)
    prev_it = None
    prev_grad = None
    status = STATUS_MAX_ITERATIONS
    iterations = 0
    backtracks_total = 0
    backtracks_max = 0
    violations = 0
    w = float("nan")

    for t in range(1, cfg.t_max + 1):
        if prev_it is None:
            eta = last
        else:
            eta = bb_init(prev_it, it, prev_grad, grad, (cfg.eta_lo, cfg.eta_hi), last)

        n_back = 0
        stalled = False
        while True:
            cand = pgm_step(problem, it, eta, grad=grad)
            if accept_test(problem, it, cand, eta, cfg.c2):
                break
            n_back += 1
            if n_back > cfg.linesearch_cap:
                stalled = True
                break
            eta = eta.scaled(cfg.c1)
        if stalled:
            status = STATUS_LINESEARCH_STALLED
            break

        backtracks_total += n_back
        backtracks_max = max(backtracks_max, n_back)
        dsq = _weighted_delta_sq(it, cand, eta)
        if cand.objective > it.objective - 0.5 * cfg.c2 * dsq + DESCENT_SLACK_ABS:
            violations += 1

        grad_new = grad_smooth(problem, cand)
        w = stationarity_measure(problem, it, cand, eta, grad_prev=grad, grad_cur=grad_new)

        prev_it, prev_grad = it, grad
        it, grad = cand, grad_new
        last = eta
        iterations = t
        if cfg.record_trace:
            rows.append((float(t), it.objective, w, perf_counter() - t_start))
        if callback is not None:
            callback(t, it, w)
        if w <= tol:
            status = STATUS_CONVERGED
            break

    trace = np.array(rows, dtype=float) if rows else np.empty((0, 4), dtype=float)
    return SolverReport(
        status=status,
        iterations=iterations,
        final=it,
        objective=it.objective,
        stationarity=w,
        grad_norm_init=gnorm0,
        trace=trace,
        linesearch_backtracks_total=backtracks_total,
        linesearch_backtracks_max=backtracks_max,
        descent_violations=violations,
        elapsed_s=perf_counter() - t_start,
    )
