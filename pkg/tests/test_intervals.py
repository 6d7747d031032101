import numpy as np
import pytest

from lc_modulation.basis.design import design_for_times
from lc_modulation.basis.penalty import penalty_block
from lc_modulation.config import BasisConfig, ModelConfig
from lc_modulation.estimation.fit import fit_pols
from lc_modulation.estimation.intervals import (
    component_band,
    empirical_band,
    normal_quantile,
    prediction_band,
    theta_covariance,
)
from lc_modulation.exceptions import OutOfRange, TooFewReplicates, UnknownComponent


@pytest.fixture
def fitted(rng):
    times = np.sort(rng.uniform(0.0, 10.0, 200))
    spec = ModelConfig(frequencies=[0.7], basis=BasisConfig(n_intervals=6, degree=3),
                       penalty_order=2, taus=[2.0, 1.0, 1.0])
    design = design_for_times(times, spec)
    P = penalty_block(spec.penalty_spec())
    y = 1.0 + np.sin(2 * np.pi * 0.7 * times) + rng.normal(0.0, 0.3, size=len(times))
    return fit_pols(design, y, P), design, P


def test_normal_quantile():
    assert normal_quantile(0.975) == pytest.approx(1.959964, abs=1e-6)
    assert normal_quantile(0.5) == pytest.approx(0.0, abs=1e-15)
    assert normal_quantile(0.1) == pytest.approx(-normal_quantile(0.9))
    with pytest.raises(OutOfRange):
        normal_quantile(1.0)


def test_unpenalized_covariance(fitted):
    _, design, _ = fitted
    zero = np.zeros((design.n_columns, design.n_columns))
    B = design.matrix
    np.testing.assert_allclose(theta_covariance(design, zero, 2.0), 2.0 * np.linalg.inv(B.T @ B),
                               rtol=1e-7, atol=1e-10)


def test_covariance_is_symmetric(fitted):
    _, design, P = fitted
    V = theta_covariance(design, P, 0.5)
    np.testing.assert_array_equal(V, V.T)
    assert np.min(np.linalg.eigvalsh(V)) > -1e-12


def test_prediction_band_shape_and_symmetry(fitted):
    fit, design, P = fitted
    band = prediction_band(fit, design, P, level=0.95)
    np.testing.assert_allclose(band.center, fit.fitted)
    np.testing.assert_allclose(band.upper - band.center, band.center - band.lower)
    assert np.all(band.half_width > 0)


def test_zero_variance_collapses_band(fitted):
    fit, design, P = fitted
    band = prediction_band(fit, design, P, sigma2=0.0)
    np.testing.assert_array_equal(band.lower, band.center)
    np.testing.assert_array_equal(band.upper, band.center)


def test_wider_level_gives_wider_band(fitted):
    fit, design, P = fitted
    narrow = prediction_band(fit, design, P, level=0.8)
    wide = prediction_band(fit, design, P, level=0.99)
    assert np.all(wide.half_width > narrow.half_width)


def test_trend_band_matches_prediction_band_without_harmonics(rng):
    times = np.sort(rng.uniform(0.0, 1.0, 80))
    spec = ModelConfig(basis=BasisConfig(n_intervals=5, degree=3), penalty_order=2, taus=[1.0])
    design = design_for_times(times, spec)
    P = penalty_block(spec.penalty_spec())
    fit = fit_pols(design, rng.normal(size=80), P)
    trend = component_band(fit, design, P, "trend")
    whole = prediction_band(fit, design, P)
    np.testing.assert_allclose(trend.lower, whole.lower, atol=1e-12)
    np.testing.assert_allclose(trend.upper, whole.upper, atol=1e-12)


def test_component_selectors(fitted):
    fit, design, P = fitted
    cos_band = component_band(fit, design, P, (1, 1))
    np.testing.assert_allclose(cos_band.center, fit.components.amplitude(1, 1))
    np.testing.assert_allclose(component_band(fit, design, P, ("cos", 1)).upper, cos_band.upper)
    sin_band = component_band(fit, design, P, (2, 1))
    np.testing.assert_allclose(sin_band.center, fit.components.amplitude(2, 1))


@pytest.mark.parametrize("which", [(1, 2), (3, 1), "phase", ("cos", 0)])
def test_unknown_component(fitted, which):
    fit, design, P = fitted
    with pytest.raises(UnknownComponent):
        component_band(fit, design, P, which)


def test_bad_level_rejected(fitted):
    fit, design, P = fitted
    with pytest.raises(OutOfRange):
        prediction_band(fit, design, P, level=1.0)


def test_empirical_band_order_statistics():
    M = 200
    values = np.arange(1, M + 1, dtype=float)
    curves = np.tile(values[::-1, None], (1, 3))
    band = empirical_band(curves, level=0.95)
    np.testing.assert_array_equal(band.lower, [5.0, 5.0, 5.0])
    np.testing.assert_array_equal(band.upper, [196.0, 196.0, 196.0])
    np.testing.assert_allclose(band.center, np.mean(values))


def test_identical_curves_give_zero_width():
    curve = np.array([0.5, 1.5, -2.0])
    band = empirical_band(np.vstack([curve, curve]))
    np.testing.assert_array_equal(band.lower, curve)
    np.testing.assert_array_equal(band.upper, curve)


def test_empirical_band_of_normal_samples(rng):
    band = empirical_band(rng.standard_normal((10000, 4)))
    np.testing.assert_allclose(band.lower, -1.96, atol=0.08)
    np.testing.assert_allclose(band.upper, 1.96, atol=0.08)


def test_empirical_band_needs_two_curves():
    with pytest.raises(TooFewReplicates):
        empirical_band(np.ones((1, 5)))


def test_band_coverage_helper():
    band = empirical_band(np.array([[0.0, 0.0], [1.0, 1.0]]))
    assert band.coverage([0.5, 2.0]) == 0.5
