import numpy as np
import pytest

from notary_forge.config import TrainConfig
from notary_forge.errors import ConfigError, ShapeError
from notary_forge.harness import Adam, AdamState, adam_step, decay_points, lr_at
from notary_forge.ndtensor import Tensor


def test_constant_gradient_moves_by_lr_per_step():
    """Test a constant gradient gives updates of size lr over 10³ steps."""
    params = [np.zeros(3)]
    state = AdamState.zeros(params)
    for _ in range(1000):
        params, state = adam_step(params, [np.array([0.5, -2.0, 1e-3])], state, lr=1e-3)
    np.testing.assert_allclose(params[0], [-1.0, 1.0, -1.0], rtol=1e-4)
    assert state.t == 1000


def test_first_step_follows_gradient_sign():
    params = [np.array([1.0, 1.0])]
    new, _ = adam_step(params, [np.array([3.0, -0.1])], AdamState.zeros(params), lr=0.01)
    np.testing.assert_allclose(new[0], [0.99, 1.01], rtol=1e-6)


def test_missing_gradient_counts_as_zero():
    params = [np.ones(2), np.ones(2)]
    new, state = adam_step(params, [None, np.ones(2)], AdamState.zeros(params), lr=0.1)
    np.testing.assert_array_equal(new[0], params[0])
    assert not np.array_equal(new[1], params[1])
    assert state.t == 1


def test_parameter_dtype_is_kept():
    params = [np.ones(2, dtype=np.float32)]
    new, state = adam_step(params, [np.ones(2)], AdamState.zeros(params), lr=0.1)
    assert new[0].dtype == np.float32
    assert state.m[0].dtype == np.float64


def test_shape_mismatch():
    """Test mismatched gradients and parameter lists are rejected."""
    params = [np.ones(2)]
    with pytest.raises(ShapeError) as exc_info:
        adam_step(params, [np.ones(3)], AdamState.zeros(params), lr=0.1)
    assert "parameter 0 has shape (2,)" in str(exc_info.value)
    with pytest.raises(ShapeError):
        adam_step(params, [np.ones(2), np.ones(2)], AdamState.zeros(params), lr=0.1)


def test_adam_updates_tensors_in_place():
    weight = Tensor(np.array([1.0, -1.0], dtype=np.float32), requires_grad=True)
    optimizer = Adam([weight])
    (weight * weight).sum().backward()
    before = weight.data
    optimizer.step(0.1)
    assert weight.data is before
    np.testing.assert_allclose(weight.data, [0.9, -0.9], rtol=1e-5)
    optimizer.zero_grad()
    assert weight.grad is None or not np.any(weight.grad)


@pytest.mark.parametrize("t, expected", [(0, 1e-3), (249, 1e-3), (250, 5e-4), (1000, 6.25e-5)])
def test_classification_schedule(t, expected):
    """Test the step-decay rate of the classification defaults."""
    assert lr_at(TrainConfig.classification(), t) == pytest.approx(expected)


def test_focal_classification_starts_lower():
    cfg = TrainConfig.classification().for_loss(True)
    assert lr_at(cfg, 0) == pytest.approx(5e-4)


def test_segmentation_schedule():
    cfg = TrainConfig.segmentation()
    assert lr_at(cfg, 9) == pytest.approx(3e-3)
    assert lr_at(cfg, 10) == pytest.approx(9e-4)
    assert decay_points(cfg) == [10, 20]


def test_negative_position():
    with pytest.raises(ValueError):
        lr_at(TrainConfig.classification(), -1)


def test_decay_points_of_classification():
    assert decay_points(TrainConfig.classification()) == [250, 500]
    assert decay_points(TrainConfig.classification(duration=250)) == []


def test_invalid_decay():
    with pytest.raises(ConfigError):
        TrainConfig.classification(lr_decay=1.0)
