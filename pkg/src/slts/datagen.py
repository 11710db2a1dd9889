"""Synthetic contaminated regression data and robust preprocessing.

Covariate rows are drawn from N(0, S) with S_ij = rho^|i-j| through a
Cholesky factor, coefficients from N(0,1) with entries zeroed at a fixed
probability, and a fixed fraction of rows receives grossly shifted noise.
Every random ingredient comes from its own named stream, and covariates are
drawn per column through a lower-triangular factor, so growing n or d
extends the data instead of reshuffling it.

Preprocessing is the robust analogue of centering and scaling: the response
is centered by its median and each covariate column is centered by its
median and divided by its median absolute deviation (optionally times the
Gaussian consistency constant 1.4826).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .problem import Dataset
from .rng import named_stream

__all__ = [
    "GenSpec",
    "Truth",
    "RobustScale",
    "ar1_covariance",
    "generate",
    "robust_standardize",
    "trimming_count",
    "MAD_CONSTANT",
]

MAD_CONSTANT = 1.4826


@dataclass(frozen=True)
class GenSpec:
    n: int
    d: int
    rho: float = 0.5
    sparsity_zero_prob: float = 0.1
    outlier_frac: float = 0.1
    outlier_mean: float = 20.0
    outlier_sd: float = math.sqrt(2.0)
    noise_sd: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n) < 1 or int(self.d) < 1:
            raise ValueError(f"n and d must be positive, got n={self.n}, d={self.d}")
        if not abs(float(self.rho)) < 1.0:
            raise ValueError(f"correlation base must satisfy |rho| < 1, got {self.rho}")
        for name in ("sparsity_zero_prob", "outlier_frac"):
            p = float(getattr(self, name))
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {p}")
        for name in ("outlier_sd", "noise_sd"):
            v = float(getattr(self, name))
            if not (np.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and nonnegative, got {v}")
        if not np.isfinite(float(self.outlier_mean)):
            raise ValueError(f"outlier_mean must be finite, got {self.outlier_mean}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True, eq=False)
class Truth:
    """The generating coefficients and the contaminated-row mask."""

    beta0: float
    beta: np.ndarray
    outlier_mask: np.ndarray

    @property
    def outlier_rows(self) -> np.ndarray:
        return np.flatnonzero(self.outlier_mask)


@dataclass(frozen=True, eq=False)
class RobustScale:
    """Per-column centers and scales, plus the response center."""

    center: np.ndarray
    scale: np.ndarray
    y_center: float
    mad_constant: bool = False


def _snap(v: float) -> float:
    # products like 0.1*100 land a few ulps off the integer; snap before
    # floor/ceil so the intended count survives
    r = round(v)
    return float(r) if abs(v - r) < 1e-9 else v


def trimming_count(n, frac: float = 0.75) -> int:
    """floor(frac*n) clamped into [1, n].  Needs n >= 2: trimming a single
    sample is degenerate."""
    n = int(n)
    if n < 2:
        raise ValueError(f"need at least 2 samples, got n={n}")
    frac = float(frac)
    if not frac > 0.0:
        raise ValueError(f"frac must be positive, got {frac}")
    k = math.floor(_snap(frac * n))
    return min(max(k, 1), n)


def _outlier_count(n: int, frac: float) -> int:
    k = math.ceil(_snap(frac * n))
    return min(max(k, 0), n)


def ar1_covariance(d: int, rho: float) -> np.ndarray:
    idx = np.arange(int(d))
    return float(rho) ** np.abs(idx[:, None] - idx[None, :])


def generate(spec: GenSpec):
    """Draw one contaminated instance; returns (Dataset, Truth).

    The same seed reproduces the data bit for bit, and a run with larger n
    or d agrees with the smaller run on the shared leading block of X and
    the shared leading coefficients.
    """
    n, d = spec.n, spec.d
    L = np.linalg.cholesky(ar1_covariance(d, spec.rho))
    Z = np.empty((n, d))
    for j in range(d):
        Z[:, j] = named_stream(spec.seed, "covariate", j).standard_normal(n)
    X = Z @ L.T

    beta0 = float(named_stream(spec.seed, "intercept").standard_normal())
    beta = named_stream(spec.seed, "coef").standard_normal(d)
    zeroed = named_stream(spec.seed, "sparsity").random(d) < spec.sparsity_zero_prob
    beta = np.where(zeroed, 0.0, beta)

    e = named_stream(spec.seed, "noise").standard_normal(n) * spec.noise_sd
    mask = np.zeros(n, dtype=bool)
    k = _outlier_count(n, spec.outlier_frac)
    if k > 0:
        rows = np.sort(named_stream(spec.seed, "rows").choice(n, size=k, replace=False))
        e[rows] = spec.outlier_mean + spec.outlier_sd * named_stream(
            spec.seed, "outliers"
        ).standard_normal(k)
        mask[rows] = True

    y = beta0 + X @ beta + e
    meta = {
        "seed": spec.seed,
        "n": n,
        "d": d,
        "rho": spec.rho,
        "sparsity_zero_prob": spec.sparsity_zero_prob,
        "outlier_frac": spec.outlier_frac,
        "outlier_mean": spec.outlier_mean,
        "outlier_sd": spec.outlier_sd,
        "noise_sd": spec.noise_sd,
    }
    return Dataset(X, y, meta=meta), Truth(beta0=beta0, beta=beta, outlier_mask=mask)


def robust_standardize(ds: Dataset, mad_constant: bool = False):
    """Center y by its median; center and scale X columns by median and MAD.

    Returns the standardized Dataset and the RobustScale that produced it.
    A column with zero MAD cannot be scaled and is reported by name.
    """
    med = np.median(ds.X, axis=0)
    centered = ds.X - med
    mad = np.median(np.abs(centered), axis=0)
    bad = np.flatnonzero(mad == 0.0)
    if bad.size:
        raise ValueError(f"column x{int(bad[0]) + 1} has zero median absolute deviation")
    scale = mad * MAD_CONSTANT if mad_constant else mad
    Xs = centered / scale
    y_center = float(np.median(ds.y))
    ys = ds.y - y_center
    meta = dict(ds.meta) if ds.meta else {}
    meta["standardized"] = True
    meta["mad_constant"] = bool(mad_constant)
    return (
        Dataset(Xs, ys, meta=meta),
        RobustScale(center=med, scale=scale, y_center=y_center, mad_constant=bool(mad_constant)),
    )
