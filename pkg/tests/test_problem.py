"""Problem container, objectives, gradients, and the lifting identity."""

import numpy as np
import pytest

import slts
from helpers import make_instance
from slts.problem import (
    Dataset,
    StrlsProblem,
    eval_objective,
    eval_smooth,
    grad_smooth,
    lift_to_strls,
    make_iterate,
    slts_objective,
)


def tiny_problem(lam=0.0, h=2, fit_intercept=True):
    X = np.array([[1.0], [1.0]])
    y = np.array([1.0, 2.0])
    return StrlsProblem(Dataset(X, y), h=h, lam=lam, fit_intercept=fit_intercept)


class TestContainers:
    def test_dataset_shapes(self):
        ds = Dataset(np.zeros((3, 2)), np.zeros(3))
        assert (ds.n, ds.d) == (3, 2)

    def test_dataset_rejects_mismatch(self):
        with pytest.raises(ValueError):
            Dataset(np.zeros((3, 2)), np.zeros(4))

    def test_dataset_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Dataset(np.array([[np.inf]]), np.array([1.0]))

    def test_problem_validates_h(self):
        ds = Dataset(np.zeros((3, 1)), np.zeros(3))
        with pytest.raises(ValueError):
            StrlsProblem(ds, h=0, lam=0.0)
        with pytest.raises(ValueError):
            StrlsProblem(ds, h=4, lam=0.0)

    def test_problem_rejects_negative_lambda(self):
        ds = Dataset(np.zeros((3, 1)), np.zeros(3))
        with pytest.raises(ValueError):
            StrlsProblem(ds, h=2, lam=-0.1)

    def test_meta_defaults_empty(self):
        ds = Dataset(np.zeros((2, 1)), np.zeros(2))
        assert ds.meta is None


class TestIterate:
    def test_caches_residual_and_objective(self):
        p = tiny_problem()
        it = make_iterate(p, 0.0, np.zeros(1), np.zeros(2))
        np.testing.assert_array_equal(it.residual, [1.0, 2.0])
        # 0.5*(1+4) + 0.5*T_2(0) = 2.5
        assert it.objective == 2.5

    def test_cached_values_consistent(self):
        p, _ = make_instance(n=25, d=4, seed=3, lam=0.7)
        rng = np.random.default_rng(1)
        it = make_iterate(p, 0.3, rng.standard_normal(4), rng.standard_normal(25))
        r = (p.y - it.beta0) - p.X @ it.beta - it.alpha
        assert np.max(np.abs(r - it.residual)) <= 1e-10
        direct = 0.5 * float(r @ r) + 0.5 * slts.trimmed_squares(it.alpha, p.h) \
            + p.lam * float(np.abs(it.beta).sum())
        assert abs(direct - it.objective) <= 1e-10

    def test_intercept_pinned_when_disabled(self):
        p = tiny_problem(fit_intercept=False)
        with pytest.raises(ValueError):
            make_iterate(p, 0.5, np.zeros(1), np.zeros(2))

    def test_rejects_non_finite_alpha(self):
        p = tiny_problem()
        with pytest.raises(ValueError):
            make_iterate(p, 0.0, np.zeros(1), np.array([np.nan, 0.0]))


class TestObjectives:
    def test_smooth_half_squared_residual(self):
        p = tiny_problem()
        it = make_iterate(p, 1.0, np.zeros(1), np.array([0.0, 1.0]))
        # residuals (0, 0) after intercept 1 and alpha (0, 1)
        assert eval_smooth(p, it) == 0.0
        it2 = make_iterate(p, 0.0, np.zeros(1), np.array([0.0, 1.0]))
        assert eval_smooth(p, it2) == 0.5 * (1.0 + 1.0)

    def test_gradient_at_zero(self):
        p = tiny_problem()
        it = make_iterate(p, 0.0, np.zeros(1), np.zeros(2))
        g0, gb, ga = grad_smooth(p, it)
        assert g0 == -3.0
        np.testing.assert_array_equal(gb, [-3.0])
        np.testing.assert_array_equal(ga, [-1.0, -2.0])

    def test_gradient_zero_intercept_when_disabled(self):
        p = tiny_problem(fit_intercept=False)
        it = make_iterate(p, 0.0, np.zeros(1), np.zeros(2))
        g0, _, _ = grad_smooth(p, it)
        assert g0 == 0.0

    def test_full_objective_adds_penalties(self):
        p = tiny_problem(lam=2.0, h=1)
        it = make_iterate(p, 0.0, np.array([0.5]), np.array([3.0, 0.2]))
        expect = eval_smooth(p, it) + 0.5 * 0.04 + 2.0 * 0.5
        assert eval_objective(p, it) == pytest.approx(expect, rel=1e-15)

    def test_slts_quarter_scale(self):
        p = tiny_problem(h=1)
        # residuals (1, 2); T_1 = 1; value 0.25
        assert slts_objective(p, 0.0, np.zeros(1)) == 0.25


class TestLift:
    def test_lift_example(self):
        X = np.zeros((2, 1))
        y = np.array([2.0, -1.0])
        p = StrlsProblem(Dataset(X, y), h=1, lam=0.0, fit_intercept=False)
        it = lift_to_strls(p, 0.0, np.zeros(1))
        np.testing.assert_array_equal(it.alpha, [2.0, -0.5])
        assert it.objective == 0.25

    def test_lift_matches_slts_value(self):
        rng = np.random.default_rng(7)
        for seed in range(10):
            p, _ = make_instance(n=20, d=6, seed=seed, lam=0.3)
            beta0 = float(rng.standard_normal())
            beta = rng.standard_normal(6)
            lifted = lift_to_strls(p, beta0, beta)
            assert lifted.objective == pytest.approx(
                slts_objective(p, beta0, beta), rel=1e-12, abs=1e-12
            )

    def test_lift_minimizes_over_alpha(self):
        p, _ = make_instance(n=15, d=3, seed=2, lam=0.0)
        rng = np.random.default_rng(3)
        beta0, beta = 0.1, rng.standard_normal(3)
        lifted = lift_to_strls(p, beta0, beta)
        for _ in range(20):
            alt = make_iterate(p, beta0, beta, lifted.alpha + 0.01 * rng.standard_normal(15))
            assert lifted.objective <= alt.objective + 1e-12
