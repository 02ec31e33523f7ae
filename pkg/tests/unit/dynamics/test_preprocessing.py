import numpy as np
import pytest

from sysid.core.errors import ConfigError, DataError
from sysid.dynamics.derivatives import estimate_derivatives
from sysid.dynamics.noise import inject_noise, sample_noise
from sysid.dynamics.schemas import NoiseModel, TimeSeriesSet


def _quadratic_series(n=11, dt=0.1):
    t = dt * np.arange(n)
    return TimeSeriesSet.from_states(np.stack([t**2, 3.0 * t], axis=1), dt)


def test_central_difference_exact_on_quadratics():
    series = _quadratic_series()
    targets, aligned = estimate_derivatives(series, "central")
    assert targets.shape == (9, 2)
    np.testing.assert_allclose(targets[:, 0], 2.0 * aligned.times, atol=1e-12)
    np.testing.assert_allclose(targets[:, 1], 3.0, atol=1e-12)
    np.testing.assert_array_equal(aligned.states, series.states[1:-1])


def test_forward_difference_alignment():
    series = _quadratic_series()
    targets, aligned = estimate_derivatives(series, "forward")
    assert targets.shape == (10, 2)
    np.testing.assert_array_equal(aligned.states, series.states[:-1])
    np.testing.assert_allclose(targets[:, 1], 3.0, atol=1e-12)


def test_map_targets_are_next_states():
    series = _quadratic_series()
    targets, aligned = estimate_derivatives(series, "map")
    np.testing.assert_array_equal(targets, series.states[1:])
    np.testing.assert_array_equal(aligned.states, series.states[:-1])


def test_too_short_series():
    series = _quadratic_series(n=2)
    with pytest.raises(DataError):
        estimate_derivatives(series, "central")


def test_unknown_scheme():
    with pytest.raises(ConfigError):
        estimate_derivatives(_quadratic_series(), "backward")


def test_non_uniform_times_rejected():
    with pytest.raises(ValueError):
        TimeSeriesSet(times=np.array([0.0, 0.1, 0.3]), states=np.zeros((3, 1)), dt=0.1)


def test_every_doubles_step():
    series = _quadratic_series()
    thinned = series.every(2)
    assert thinned.n_samples == 6
    assert thinned.dt == pytest.approx(0.2)


def test_silent_noise_is_exact_copy():
    series = _quadratic_series()
    noisy = inject_noise(series, NoiseModel())
    np.testing.assert_array_equal(noisy.states, series.states)
    assert noisy.states is not series.states


def test_noise_reproducible_per_seed():
    model = NoiseModel(eps1=0.1, eps2=1.0, p=0.2, seed=7)
    np.testing.assert_array_equal(sample_noise((50, 3), model), sample_noise((50, 3), model))
    other = NoiseModel(eps1=0.1, eps2=1.0, p=0.2, seed=8)
    assert not np.array_equal(sample_noise((50, 3), model), sample_noise((50, 3), other))


def test_noise_variance_matches_mixture():
    model = NoiseModel(eps1=0.1, eps2=0.5, p=0.3, seed=11)
    draws = sample_noise((200_000,), model)
    expected = 0.1**2 + 0.3 * 0.5**2
    assert draws.var() == pytest.approx(expected, rel=0.03)
    assert abs(draws.mean()) < 0.01


def test_per_row_outliers_share_indicator():
    model = NoiseModel(eps1=0.0, eps2=1.0, p=0.5, seed=3, per_row=True)
    draws = sample_noise((100, 4), model)
    zero_rows = np.all(draws == 0.0, axis=1)
    nonzero_rows = np.all(draws != 0.0, axis=1)
    assert np.all(zero_rows | nonzero_rows)
    assert zero_rows.any() and nonzero_rows.any()


def test_noise_model_bounds():
    with pytest.raises(ValueError):
        NoiseModel(p=1.5)
    with pytest.raises(ValueError):
        NoiseModel(eps1=-0.1)
