"""Alternating multi-start baseline: C-steps, inner LASSO, full pipeline."""

import itertools

import numpy as np
import pytest

import slts
from slts.fastslts import MultiStartConfig, Subset, c_step, elemental_start, lasso_on_subset
from slts.problem import Dataset, StrlsProblem, slts_objective

from helpers import make_instance


class TestSubset:
    def test_sorted_and_distinct(self):
        s = Subset(np.array([3, 1, 2]))
        assert s.indices.tolist() == [1, 2, 3]
        assert s.size == 3

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            Subset(np.array([1, 1]))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Subset(np.array([-1, 0]))


class TestCStep:
    def test_picks_best_fitting_rows(self):
        X = np.zeros((4, 1))
        y = np.array([0.1, 5.0, 0.2, 0.3])
        p = StrlsProblem(Dataset(X, y), h=3, lam=0.0, fit_intercept=False)
        s = c_step(p, 0.0, np.zeros(1))
        assert s.indices.tolist() == [0, 2, 3]

    def test_all_ties_take_first_h(self):
        X = np.zeros((5, 1))
        y = np.ones(5)
        p = StrlsProblem(Dataset(X, y), h=2, lam=0.0, fit_intercept=False)
        s = c_step(p, 0.0, np.zeros(1))
        assert s.indices.tolist() == [0, 1]

    def test_minimizes_over_all_subsets(self):
        rng = np.random.default_rng(0)
        for n, h in [(6, 3), (7, 5), (8, 2)]:
            X = rng.standard_normal((n, 2))
            y = rng.standard_normal(n)
            p = StrlsProblem(Dataset(X, y), h=h, lam=0.0)
            b0, b = 0.3, rng.standard_normal(2)
            s = c_step(p, b0, b)
            r2 = ((y - b0 - X @ b) ** 2)
            got = float(r2[s.indices].sum())
            best = min(float(r2[list(S)].sum()) for S in itertools.combinations(range(n), h))
            assert got == pytest.approx(best, rel=1e-12)


class TestLassoOnSubset:
    def test_full_subset_lambda_zero_matches_lstsq(self):
        rng = np.random.default_rng(1)
        Q, _ = np.linalg.qr(rng.standard_normal((12, 4)))
        y = rng.standard_normal(12)
        p = StrlsProblem(Dataset(Q, y), h=12, lam=0.0, fit_intercept=False)
        b0, b = lasso_on_subset(p, Subset(np.arange(12)), (0.0, np.zeros(4)),
                                tol=1e-10, max_iter=5000)
        np.testing.assert_allclose(b, Q.T @ y, atol=1e-8)
        assert b0 == 0.0

    def test_huge_lambda_zeroes_coefficients(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((10, 3))
        y = rng.standard_normal(10) + 5.0
        p = StrlsProblem(Dataset(X, y), h=6, lam=1e6)
        sub = Subset(np.arange(6))
        b0, b = lasso_on_subset(p, sub, (0.0, np.zeros(3)), tol=1e-10, max_iter=5000)
        np.testing.assert_allclose(b, 0.0, atol=1e-12)
        assert b0 == pytest.approx(float(y[:6].mean()), abs=1e-8)

    def test_critical_lambda_boundary(self):
        # at lam = ||0.5 X^T (y - ybar)||_inf the fit stays at zero
        rng = np.random.default_rng(3)
        X = rng.standard_normal((15, 4))
        y = rng.standard_normal(15)
        sub = Subset(np.arange(15))
        r = y - y.mean()
        lam_crit = float(np.abs(0.5 * (X.T @ r)).max())
        p = StrlsProblem(Dataset(X, y), h=15, lam=lam_crit)
        b0, b = lasso_on_subset(p, sub, (0.0, np.zeros(4)), tol=1e-10, max_iter=5000)
        np.testing.assert_allclose(b, 0.0, atol=1e-8)
        # slightly below the threshold some coefficient moves
        p2 = StrlsProblem(Dataset(X, y), h=15, lam=0.9 * lam_crit)
        _, b2 = lasso_on_subset(p2, sub, (0.0, np.zeros(4)), tol=1e-10, max_iter=5000)
        assert np.abs(b2).max() > 1e-6

    def test_never_worse_than_warm_start(self):
        p, _ = make_instance(n=30, d=6, seed=4, lam=0.8)
        rng = np.random.default_rng(5)
        sub = Subset(np.sort(rng.choice(30, size=p.h, replace=False)))

        def quarter_obj(b0, b):
            idx = sub.indices
            r = p.y[idx] - b0 - p.X[idx] @ b
            return 0.25 * float(r @ r) + p.lam * float(np.abs(b).sum())

        for _ in range(5):
            warm = (float(rng.standard_normal()), rng.standard_normal(6))
            b0, b = lasso_on_subset(p, sub, warm)
            assert quarter_obj(b0, b) <= quarter_obj(*warm) + 1e-10

    def test_out_of_range_subset_rejected(self):
        p, _ = make_instance(n=10, d=2, seed=0)
        with pytest.raises(ValueError):
            lasso_on_subset(p, Subset(np.array([5, 11])), (0.0, np.zeros(2)))


class TestAlternation:
    def test_monotone_over_pairs(self):
        p, _ = make_instance(n=40, d=8, seed=6, lam=0.5)
        rng = np.random.default_rng(7)
        b0, b = float(rng.standard_normal()), rng.standard_normal(8)
        prev = slts_objective(p, b0, b)
        for _ in range(8):
            S = c_step(p, b0, b)
            b0, b = lasso_on_subset(p, S, (b0, b), tol=1e-8, max_iter=5000)
            cur = slts_objective(p, b0, b)
            assert cur <= prev + 1e-8
            prev = cur


class TestFastSlts:
    def test_single_start_at_optimum_stays(self):
        p, _ = make_instance(n=30, d=5, seed=8, lam=0.6)
        ms = MultiStartConfig(n_starts=1, warm_iters=1, n_keep=1, seed=0)
        first = slts.fast_slts(p, ms)
        b0 = first.final.beta0
        b = first.final.beta
        again = slts.fast_slts(p, ms, starts=[(b0, b)])
        assert again.objective <= first.objective + 1e-10
        assert again.status == slts.STATUS_CONVERGED

    def test_clean_data_matches_least_squares(self):
        rng = np.random.default_rng(9)
        X = rng.standard_normal((40, 5))
        y = X @ rng.standard_normal(5) + 0.05 * rng.standard_normal(40)
        p = StrlsProblem(Dataset(X, y), h=40, lam=0.0)
        ms = MultiStartConfig(n_starts=20, warm_iters=2, n_keep=5, seed=1,
                              inner_tol=1e-10, inner_max_iter=10000)
        rep = slts.fast_slts(p, ms)
        A = np.column_stack([np.ones(40), X])
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        assert rep.final.beta0 == pytest.approx(coef[0], abs=1e-6)
        np.testing.assert_allclose(rep.final.beta, coef[1:], atol=1e-6)

    def test_report_shape_and_per_start_table(self):
        p, _ = make_instance(n=30, d=6, seed=10, lam=0.5)
        ms = MultiStartConfig(n_starts=12, warm_iters=2, n_keep=4, seed=2)
        rep = slts.fast_slts(p, ms)
        table = rep.extra["per_start"]
        assert table.shape == (12, 3)
        np.testing.assert_array_equal(table[:, 0], np.arange(12))
        assert rep.extra["best_start"] in table[:, 0]
        assert rep.objective == rep.final.objective
        # winner's objective appears in the table
        assert np.isclose(table[:, 1].min(), rep.objective, rtol=1e-9)

    def test_lifted_objective_equals_trimmed_value(self):
        p, _ = make_instance(n=30, d=6, seed=11, lam=0.4)
        ms = MultiStartConfig(n_starts=8, warm_iters=2, n_keep=3, seed=3)
        rep = slts.fast_slts(p, ms)
        direct = slts_objective(p, rep.final.beta0, rep.final.beta)
        assert rep.objective == pytest.approx(direct, rel=1e-12)

    def test_deterministic_given_seed(self):
        p, _ = make_instance(n=30, d=6, seed=12, lam=0.5)
        ms = MultiStartConfig(n_starts=10, warm_iters=2, n_keep=3, seed=4)
        a = slts.fast_slts(p, ms)
        b = slts.fast_slts(p, ms)
        assert a.objective == b.objective
        np.testing.assert_array_equal(a.final.beta, b.final.beta)
        np.testing.assert_array_equal(a.extra["per_start"], b.extra["per_start"])

    def test_elemental_start_uses_three_rows(self):
        p, _ = make_instance(n=20, d=4, seed=13, lam=0.3)
        rng = slts.named_stream(0, "elemental", 0)
        b0, b = elemental_start(p, rng)
        assert np.isfinite(b0) and b.shape == (4,)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MultiStartConfig(n_starts=0)
        with pytest.raises(ValueError):
            MultiStartConfig(n_keep=100, n_starts=10)
