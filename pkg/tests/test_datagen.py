"""Synthetic data generation and robust standardization."""

import numpy as np
import pytest

import slts
from slts.datagen import GenSpec, ar1_covariance, generate, robust_standardize, trimming_count


class TestTrimmingCount:
    def test_hundred(self):
        assert trimming_count(100) == 75

    def test_two(self):
        assert trimming_count(2, 0.75) == 1

    def test_five_hundred(self):
        assert trimming_count(500) == 375

    def test_float_epsilon_snap(self):
        # 0.29 * 300 is 86.99999... in floats; the snapped floor is 87
        assert trimming_count(300, 0.29) == 87

    def test_clamped_to_valid_range(self):
        assert trimming_count(2, 0.01) == 1
        assert trimming_count(3, 1.0) == 3

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            trimming_count(1)


class TestCovariance:
    def test_ar1_entries(self):
        S = ar1_covariance(3, 0.5)
        assert S[0, 1] == 0.5
        assert S[0, 2] == 0.25
        assert np.all(np.diag(S) == 1.0)

    def test_empirical_covariance_close(self):
        spec = GenSpec(n=100_000, d=3, rho=0.5, sparsity_zero_prob=0.0,
                       outlier_frac=0.0, noise_sd=0.0, seed=42)
        ds, _ = generate(spec)
        emp = np.cov(ds.X, rowvar=False)
        np.testing.assert_allclose(emp, ar1_covariance(3, 0.5), atol=0.02)


class TestGenerate:
    def test_shapes_and_truth(self):
        ds, truth = generate(GenSpec(n=50, d=7, seed=0))
        assert ds.X.shape == (50, 7) and ds.y.shape == (50,)
        assert truth.beta.shape == (7,)
        assert truth.outlier_mask.shape == (50,)

    def test_outlier_count_is_ceiling(self):
        for n in (10, 95, 100, 101):
            _, truth = generate(GenSpec(n=n, d=2, seed=1))
            assert truth.outlier_mask.sum() == int(np.ceil(0.1 * n))

    def test_noiseless_case_exact(self):
        spec = GenSpec(n=30, d=4, outlier_frac=0.0, noise_sd=0.0, seed=2)
        ds, truth = generate(spec)
        np.testing.assert_allclose(
            ds.y, truth.beta0 + ds.X @ truth.beta, rtol=0, atol=1e-12
        )
        assert truth.outlier_mask.sum() == 0

    def test_reproducible_bitwise(self):
        a, ta = generate(GenSpec(n=40, d=6, seed=3))
        b, tb = generate(GenSpec(n=40, d=6, seed=3))
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.y, b.y)
        np.testing.assert_array_equal(ta.outlier_mask, tb.outlier_mask)

    def test_seed_changes_data(self):
        a, _ = generate(GenSpec(n=40, d=6, seed=3))
        b, _ = generate(GenSpec(n=40, d=6, seed=4))
        assert not np.array_equal(a.y, b.y)

    def test_column_streams_stable_under_width_growth(self):
        # adding covariates must not reshuffle existing columns
        a, _ = generate(GenSpec(n=25, d=3, rho=0.0, seed=5))
        b, _ = generate(GenSpec(n=25, d=5, rho=0.0, seed=5))
        np.testing.assert_array_equal(a.X, b.X[:, :3])

    def test_sparsity_zeroes_coefficients(self):
        _, truth = generate(GenSpec(n=50, d=400, seed=6))
        zero_frac = float((truth.beta == 0.0).mean())
        assert 0.03 < zero_frac < 0.25  # around the nominal 0.1

    def test_outliers_shift_response(self):
        ds, truth = generate(GenSpec(n=200, d=3, seed=7))
        clean = ds.y - truth.beta0 - ds.X @ truth.beta
        assert clean[truth.outlier_mask].mean() > 10.0
        assert abs(clean[~truth.outlier_mask].mean()) < 1.0

    def test_meta_records_spec(self):
        ds, _ = generate(GenSpec(n=20, d=2, seed=8))
        assert ds.meta["n"] == 20 and ds.meta["seed"] == 8

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            GenSpec(n=0, d=1)
        with pytest.raises(ValueError):
            GenSpec(n=10, d=2, rho=1.0)
        with pytest.raises(ValueError):
            GenSpec(n=10, d=2, outlier_frac=1.5)


class TestStandardize:
    def test_hand_computed_example(self):
        X = np.array([[1.0], [2.0], [3.0], [100.0]])
        y = np.zeros(4)
        ds = slts.Dataset(X, y)
        out, scale = robust_standardize(ds)
        assert scale.center[0] == 2.5
        assert scale.scale[0] == 1.0
        np.testing.assert_array_equal(out.X[:, 0], [-1.5, -0.5, 0.5, 97.5])

    def test_consistency_constant_divides(self):
        X = np.array([[1.0], [2.0], [3.0], [100.0]])
        ds = slts.Dataset(X, np.zeros(4))
        out, scale = robust_standardize(ds, mad_constant=True)
        assert scale.scale[0] == pytest.approx(1.4826, rel=1e-12)
        np.testing.assert_allclose(out.X[:, 0], np.array([-1.5, -0.5, 0.5, 97.5]) / 1.4826)

    def test_symmetric_column_centers_at_zero(self):
        X = np.array([[-3.0], [0.0], [3.0]])
        ds = slts.Dataset(X, np.array([1.0, 2.0, 3.0]))
        out, scale = robust_standardize(ds)
        assert scale.center[0] == 0.0

    def test_y_median_zero(self):
        ds, _ = generate(GenSpec(n=41, d=3, seed=9))
        out, _ = robust_standardize(ds)
        assert float(np.median(out.y)) == pytest.approx(0.0, abs=1e-12)

    def test_columns_have_unit_mad(self):
        ds, _ = generate(GenSpec(n=60, d=5, seed=10))
        out, _ = robust_standardize(ds)
        for j in range(5):
            col = out.X[:, j]
            mad = float(np.median(np.abs(col - np.median(col))))
            assert mad == pytest.approx(1.0, abs=1e-12)

    def test_zero_mad_column_names_culprit(self):
        X = np.column_stack([np.arange(6.0), np.ones(6)])
        ds = slts.Dataset(X, np.arange(6.0))
        with pytest.raises(ValueError, match="x2"):
            robust_standardize(ds)

    def test_meta_flags_standardization(self):
        ds, _ = generate(GenSpec(n=20, d=2, seed=11))
        out, _ = robust_standardize(ds, mad_constant=True)
        assert out.meta["standardized"] is True
        assert out.meta["mad_constant"] is True
