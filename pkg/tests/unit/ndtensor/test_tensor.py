import numpy as np
import pytest

from notary_forge.errors import ShapeError
from notary_forge.ndtensor import Tape, Tensor, backward, default_dtype, get_default_dtype, no_grad, set_debug


def test_default_dtype_is_float32():
    """Test new tensors default to 32-bit floats."""
    assert Tensor([1.0, 2.0]).dtype == np.float32


def test_default_dtype_context_restores():
    """Test the dtype switch only lasts inside the context."""
    with default_dtype(np.float64):
        assert Tensor([1.0]).dtype == np.float64
    assert get_default_dtype() is np.float32


def test_arithmetic_gradients():
    """Test gradients of a small expression against hand-derived values."""
    with default_dtype(np.float64):
        a = Tensor([1.0, 2.0, 3.0], requires_grad=True)
        b = Tensor([4.0, 5.0, 6.0], requires_grad=True)
        out = ((a * b) + a / b - 2.0 * a).sum()
        out.backward()

    np.testing.assert_allclose(a.grad, b.data + 1.0 / b.data - 2.0)
    np.testing.assert_allclose(b.grad, a.data - a.data / b.data**2)


def test_reflected_ndarray_operands():
    """Test ndarray on the left dispatches to the tensor's reflected operators."""
    with default_dtype(np.float64):
        x = Tensor([1.0, 2.0], requires_grad=True)
        out = (np.array([3.0, 4.0]) * x + np.array([1.0, 1.0]) - x).sum()
        out.backward()
    assert isinstance(out, Tensor)
    np.testing.assert_allclose(x.grad, [2.0, 3.0])


def test_broadcast_gradient_sums_back():
    """Test a broadcast operand receives the summed gradient."""
    with default_dtype(np.float64):
        x = Tensor(np.ones((3, 4)), requires_grad=True)
        bias = Tensor(np.zeros((1, 4)), requires_grad=True)
        (x + bias).sum().backward()
    np.testing.assert_allclose(bias.grad, np.full((1, 4), 3.0))


def test_gradients_accumulate_until_zeroed():
    """Test leaf gradients add up across backward calls."""
    x = Tensor([2.0], requires_grad=True)
    (x * 3.0).sum().backward()
    (x * 3.0).sum().backward()
    np.testing.assert_allclose(x.grad, [6.0])
    x.zero_grad()
    assert x.grad is None


def test_diamond_graph_visits_shared_node_once():
    """Test a tensor used twice gets both contributions."""
    with default_dtype(np.float64):
        x = Tensor([3.0], requires_grad=True)
        y = x * x
        out = (y + y * 2.0).sum()
        out.backward()
    np.testing.assert_allclose(x.grad, [18.0])
    tape = Tape.from_root(out)
    assert tape.records[-1] is out
    assert len(tape) == len({id(t) for t in tape.records})


def test_backward_needs_scalar():
    """Test backward on a non-scalar raises ShapeError."""
    x = Tensor(np.ones(3), requires_grad=True)
    with pytest.raises(ShapeError) as exc_info:
        backward(x * 2.0)
    assert "needs a scalar" in str(exc_info.value)


def test_no_grad_records_nothing():
    """Test no graph is built inside no_grad."""
    x = Tensor([1.0], requires_grad=True)
    with no_grad():
        y = x * 2.0
    assert not y.requires_grad
    assert y.node is None


def test_item_requires_single_element():
    """Test item() on a vector raises."""
    with pytest.raises(ShapeError):
        Tensor([1.0, 2.0]).item()


def test_debug_mode_flags_non_finite():
    """Test debug mode rejects non-finite op outputs."""
    set_debug(True)
    try:
        with pytest.raises(FloatingPointError):
            Tensor([0.0]).log()
    finally:
        set_debug(False)


def test_sum_over_tuple_axes():
    """Test reductions over several axes keep gradient shapes."""
    with default_dtype(np.float64):
        x = Tensor(np.arange(24.0).reshape(2, 3, 4), requires_grad=True)
        x.mean(axis=(0, 2)).sum().backward()
    np.testing.assert_allclose(x.grad, np.full((2, 3, 4), 1.0 / 8.0))
