"""Sparse trimmed regression via a smooth lifted reformulation.

The least trimmed squares loss keeps only the h best-fitting samples, which
makes the usual l1-penalized estimator robust to outliers but nonsmooth and
combinatorial.  This package solves it through an equivalent lifted problem
with an extra absorber vector whose proximal mapping is closed-form, using
a proximal gradient loop with variable-wise Barzilai-Borwein stepsizes and
backtracking.  A multi-start alternating baseline, a plugin interface for
nonlinear models and general penalties, a synthetic data generator, and a
benchmark CLI round out the toolkit.

Entry points:
  trimmed_squares, prox_trimmed_squares    the loss core and its prox
  StrlsProblem, lift_to_strls              problem container and lifting
  solve                                    the proximal gradient solver
  solve_nonlinear                          model/penalty plugin variant
  fast_slts                                alternating multi-start baseline
  generate, robust_standardize             synthetic data pipeline
"""

from .trimmed import (
    ProxResult,
    TrimSelection,
    prox_trimmed_squares,
    select_trim,
    soft_threshold,
    trimmed_squares,
)
from .problem import (
    Dataset,
    Iterate,
    StrlsProblem,
    eval_objective,
    eval_smooth,
    grad_smooth,
    lift_to_strls,
    make_iterate,
    slts_objective,
)
from .solver import (
    STATUS_CONVERGED,
    STATUS_LINESEARCH_STALLED,
    STATUS_MAX_ITERATIONS,
    SolverConfig,
    SolverReport,
    StepState,
    accept_test,
    bb_init,
    pgm_step,
    solve,
    stationarity_measure,
)
from .nonlinear import (
    ModelSpec,
    NlState,
    PenaltySpec,
    box_indicator,
    eval_tilde_objective,
    exponential_decay_model,
    l1_penalty,
    linear_model,
    make_nl_state,
    solve_nonlinear,
    zero_penalty,
)
from .fastslts import (
    MultiStartConfig,
    Subset,
    c_step,
    elemental_start,
    fast_slts,
    lasso_on_subset,
)
from .datagen import (
    GenSpec,
    RobustScale,
    Truth,
    ar1_covariance,
    generate,
    robust_standardize,
    trimming_count,
)
from .rng import named_stream

__version__ = "1.0.0"

__all__ = [
    "ProxResult",
    "TrimSelection",
    "prox_trimmed_squares",
    "select_trim",
    "soft_threshold",
    "trimmed_squares",
    "Dataset",
    "Iterate",
    "StrlsProblem",
    "eval_objective",
    "eval_smooth",
    "grad_smooth",
    "lift_to_strls",
    "make_iterate",
    "slts_objective",
    "STATUS_CONVERGED",
    "STATUS_LINESEARCH_STALLED",
    "STATUS_MAX_ITERATIONS",
    "SolverConfig",
    "SolverReport",
    "StepState",
    "accept_test",
    "bb_init",
    "pgm_step",
    "solve",
    "stationarity_measure",
    "ModelSpec",
    "NlState",
    "PenaltySpec",
    "box_indicator",
    "eval_tilde_objective",
    "exponential_decay_model",
    "l1_penalty",
    "linear_model",
    "make_nl_state",
    "solve_nonlinear",
    "zero_penalty",
    "MultiStartConfig",
    "Subset",
    "c_step",
    "elemental_start",
    "fast_slts",
    "lasso_on_subset",
    "GenSpec",
    "RobustScale",
    "Truth",
    "ar1_covariance",
    "generate",
    "robust_standardize",
    "trimming_count",
    "named_stream",
    "__version__",
]
