"""Problem containers and objective algebra for trimmed regression.

The lifted formulation splits the trimmed least squares objective into a
smooth quadratic coupling term plus separable nonsmooth pieces:

    L(b0, b, a) = 0.5*||y - b0 - X b - a||^2 + 0.5*T_h(a) + lam*||b||_1

where ``T_h`` sums the ``h`` smallest squared entries and ``a`` is an
auxiliary absorber vector that soaks up outlier residuals.  Minimizing over
``a`` in closed form recovers the plain trimmed objective
``0.25*T_h(y - b0 - X b) + lam*||b||_1``, so the two formulations share
minimizers.  This module holds the data containers and the value, gradient,
and lifting helpers shared by every solver in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trimmed import prox_trimmed_squares, trimmed_squares

__all__ = [
    "Dataset",
    "StrlsProblem",
    "Iterate",
    "make_iterate",
    "eval_smooth",
    "grad_smooth",
    "eval_objective",
    "slts_objective",
    "lift_to_strls",
]


def _check_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"design matrix must be 2-d, got shape {X.shape}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"design matrix must be nonempty, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("design matrix contains non-finite entries")
    return X


def _check_response(y, n: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (n,):
        raise ValueError(f"response must have shape ({n},), got {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("response contains non-finite entries")
    return y


@dataclass(frozen=True, eq=False)
class Dataset:
    """A design matrix with its response vector and optional provenance.

    ``meta`` may record how the data came to be (seed, generator settings);
    it is never consulted by numeric code.
    """

    X: np.ndarray
    y: np.ndarray
    meta: dict | None = None

    def __post_init__(self):
        X = _check_matrix(self.X)
        y = _check_response(self.y, X.shape[0])
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True, eq=False)
class StrlsProblem:
    """One trimmed sparse regression instance.

    ``h`` is the number of residuals kept by the trimmed sum, ``lam`` the
    l1 weight.  With ``fit_intercept=False`` the intercept is pinned to
    zero, its gradient slot reports exactly 0.0, and it is never updated.
    """

    data: Dataset
    h: int
    lam: float
    fit_intercept: bool = True

    def __post_init__(self):
        if not isinstance(self.data, Dataset):
            raise TypeError("data must be a Dataset")
        h = int(self.h)
        if not 1 <= h <= self.data.n:
            raise ValueError(f"trimming count h={h} outside [1, {self.data.n}]")
        lam = float(self.lam)
        if not (np.isfinite(lam) and lam >= 0.0):
            raise ValueError(f"l1 weight must be finite and nonnegative, got {lam}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "fit_intercept", bool(self.fit_intercept))

    @property
    def X(self) -> np.ndarray:
        return self.data.X

    @property
    def y(self) -> np.ndarray:
        return self.data.y

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def d(self) -> int:
        return self.data.d


@dataclass(frozen=True, eq=False)
class Iterate:
    """One point (b0, b, a) of the lifted problem, with cached evaluations.

    ``residual`` is ``y - b0 - X b - a`` and ``objective`` the lifted value,
    both computed at construction and never mutated.  Arrays are held by
    reference; callers must not write into them afterwards.
    """

    beta0: float
    beta: np.ndarray
    alpha: np.ndarray
    residual: np.ndarray
    objective: float


def _objective_at(problem: StrlsProblem, beta, alpha, r) -> float:
    val = 0.5 * float(r @ r)
    val += 0.5 * trimmed_squares(alpha, problem.h)
    if problem.lam != 0.0:
        val += problem.lam * float(np.abs(beta).sum())
    return val


def make_iterate(problem: StrlsProblem, beta0, beta, alpha) -> Iterate:
    """Validate (b0, b, a) against ``problem`` and attach cached residual/value."""
    beta0 = float(beta0)
    if not np.isfinite(beta0):
        raise ValueError(f"intercept must be finite, got {beta0}")
    if not problem.fit_intercept and beta0 != 0.0:
        raise ValueError("intercept is pinned to zero for this problem")
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (problem.d,):
        raise ValueError(f"coefficients must have shape ({problem.d},), got {beta.shape}")
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (problem.n,):
        raise ValueError(f"absorber must have shape ({problem.n},), got {alpha.shape}")
    if not (np.all(np.isfinite(beta)) and np.all(np.isfinite(alpha))):
        raise ValueError("iterate contains non-finite entries")
    r = (problem.y - beta0) - problem.X @ beta - alpha
    return Iterate(
        beta0=beta0,
        beta=beta,
        alpha=alpha,
        residual=r,
        objective=_objective_at(problem, beta, alpha, r),
    )


def eval_smooth(problem: StrlsProblem, it: Iterate) -> float:
    """Smooth part ``0.5*||y - b0 - X b - a||^2`` from the cached residual."""
    r = it.residual
    return 0.5 * float(r @ r)


def grad_smooth(problem: StrlsProblem, it: Iterate):
    """Gradient of the smooth part, as the triple ``(g0, g_beta, g_alpha)``.

    The intercept slot is exactly 0.0 when the problem has no intercept, so
    norms over all three blocks match the two-block restriction bit for bit.
    """
    r = it.residual
    g0 = -float(r.sum()) if problem.fit_intercept else 0.0
    gbeta = -(problem.X.T @ r)
    galpha = -r
    return g0, gbeta, galpha


def eval_objective(problem: StrlsProblem, it: Iterate) -> float:
    """Full lifted objective at ``it``, recomputed from the cached residual."""
    return _objective_at(problem, it.beta, it.alpha, it.residual)


def slts_objective(problem: StrlsProblem, beta0, beta) -> float:
    """Trimmed objective ``0.25*T_h(y - b0 - X b) + lam*||b||_1``."""
    beta = np.asarray(beta, dtype=float)
    res = (problem.y - float(beta0)) - problem.X @ beta
    val = 0.25 * trimmed_squares(res, problem.h)
    if problem.lam != 0.0:
        val += problem.lam * float(np.abs(beta).sum())
    return val


def lift_to_strls(problem: StrlsProblem, beta0, beta) -> Iterate:
    """Complete ``(b0, b)`` with the absorber that is optimal for it.

    The minimizer over ``a`` of the lifted objective at fixed ``(b0, b)`` is
    the trimmed-squares prox (weight 1/2) of the plain residual, and at that
    point the lifted value collapses to the trimmed objective.
    """
    beta = np.asarray(beta, dtype=float)
    res = (problem.y - float(beta0)) - problem.X @ beta
    alpha = prox_trimmed_squares(res, problem.h, 0.5).point
    return make_iterate(problem, beta0, beta, alpha)
