"""Trimmed squares function, its proximal mapping, and soft thresholding.

The trimmed squares function of order ``h`` sums the ``h`` smallest squared
entries of a vector.  It is nonconvex and nonsmooth, yet its proximal mapping
and Moreau envelope are cheap and closed-form: the prox shrinks the ``h``
smallest-magnitude entries by ``1/(2*gamma + 1)`` and leaves the rest alone,
and the envelope equals ``gamma/(2*gamma + 1)`` times the trimmed squares
value.  These operators are the workhorses of every solver in this package.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TrimSelection",
    "ProxResult",
    "trimmed_squares",
    "select_trim",
    "prox_trimmed_squares",
    "soft_threshold",
]


def _as_finite_vector(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {r.shape}")
    if not np.all(np.isfinite(r)):
        raise ValueError("input vector contains non-finite entries")
    return r


def _check_count(h, n: int) -> int:
    h = operator.index(h)
    if not 1 <= h <= n:
        raise ValueError(f"trimming count h={h} outside [1, {n}]")
    return h


@dataclass(frozen=True)
class TrimSelection:
    """Indices of the ``h`` smallest-magnitude entries of a vector.

    ``kept_indices`` is sorted ascending.  Ties at the threshold magnitude
    are broken in favor of the smallest index, which makes the selection a
    deterministic canonical choice among all valid ones.
    """

    kept_indices: np.ndarray
    threshold_value: float


@dataclass(frozen=True)
class ProxResult:
    """Output of the trimmed-squares proximal mapping.

    ``point`` is the prox point, ``envelope_value`` the Moreau envelope value
    at the input, and ``selection`` the index set that was shrunk.
    """

    point: np.ndarray
    envelope_value: float
    selection: TrimSelection


def trimmed_squares(r, h) -> float:
    """Sum of the ``h`` smallest squared entries of ``r``.

    Equals ``sum(r**2)`` when ``h == len(r)``.  Runs in expected O(n) via
    partial selection.
    """
    r = _as_finite_vector(r)
    h = _check_count(h, r.size)
    sq = np.square(r)
    if h == r.size:
        return float(sq.sum())
    return float(np.partition(sq, h - 1)[:h].sum())


def select_trim(r, h) -> TrimSelection:
    """Pick the ``h`` smallest-magnitude entries of ``r``.

    Returns the canonical selection: entries are ordered by ``(|r_i|, i)``
    and the first ``h`` are kept, so ties at the threshold go to the
    smallest indices.  Expected O(n) via introselect partitioning.
    """
    r = _as_finite_vector(r)
    h = _check_count(h, r.size)
    a = np.abs(r)
    thr = float(np.partition(a, h - 1)[h - 1])
    below = np.flatnonzero(a < thr)
    at = np.flatnonzero(a == thr)
    kept = np.concatenate([below, at[: h - below.size]])
    kept.sort()
    return TrimSelection(kept_indices=kept, threshold_value=thr)


def prox_trimmed_squares(r, h, gamma) -> ProxResult:
    """Proximal mapping and Moreau envelope of ``gamma * trimmed_squares``.

    The returned point shrinks the selected entries by ``1/(2*gamma + 1)``
    and leaves the others unchanged; the envelope value is
    ``gamma/(2*gamma + 1)`` times the trimmed squares value of ``r``.
    The mapping is set-valued when magnitudes tie at the threshold; the
    canonical member from :func:`select_trim` is returned.
    """
    r = _as_finite_vector(r)
    h = _check_count(h, r.size)
    gamma = float(gamma)
    if not gamma > 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    sel = select_trim(r, h)
    point = r.copy()
    point[sel.kept_indices] /= 2.0 * gamma + 1.0
    kept_sq = float(np.square(r[sel.kept_indices]).sum())
    envelope = gamma / (2.0 * gamma + 1.0) * kept_sq
    return ProxResult(point=point, envelope_value=envelope, selection=sel)


def soft_threshold(x, c):
    """Soft-thresholding ``sign(x) * max(|x| - c, 0)``, elementwise.

    This is the proximal mapping of ``c * ||.||_1``.  Scalars map to float,
    arrays map to arrays.
    """
    c = float(c)
    if c < 0.0:
        raise ValueError(f"threshold must be nonnegative, got {c}")
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise ValueError("input contains non-finite entries")
    out = np.sign(xa) * np.maximum(np.abs(xa) - c, 0.0)
    if xa.ndim == 0:
        return float(out)
    return out
