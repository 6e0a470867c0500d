import numpy as np
import pytest

from notary_forge.errors import ConfigError
from notary_forge.models import PAPER_PRESETS, ClassifierConfig, build_classifier
from notary_forge.ndtensor import Tensor, no_grad


@pytest.fixture
def batch():
    return Tensor(np.random.default_rng(0).normal(size=(2, 3, 32, 32)))


@pytest.mark.parametrize("topology", ["residual", "dense"])
def test_single_logit_per_image(topology, batch):
    """Test both topologies map N images to N logits."""
    model = build_classifier(ClassifierConfig.desk(topology, input_size=(32, 32)))
    out = model(batch)
    assert out.shape == (2, 1)
    assert np.all(np.isfinite(out.numpy()))


def test_same_seed_same_weights():
    """Test initialisation is a function of the seed."""
    first = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32), seed=5))
    second = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32), seed=5))
    other = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32), seed=6))
    for name, value in first.state_dict().items():
        np.testing.assert_array_equal(value, second.state_dict()[name])
    assert any(
        not np.array_equal(value, other.state_dict()[name])
        for name, value in first.state_dict().items()
    )


def test_state_dict_round_trip(batch):
    """Test load_state_dict reproduces outputs of the source model."""
    source = build_classifier(ClassifierConfig.desk("dense", input_size=(32, 32), seed=1))
    target = build_classifier(ClassifierConfig.desk("dense", input_size=(32, 32), seed=2))
    target.load_state_dict(source.state_dict())
    source.eval()
    target.eval()
    with no_grad():
        np.testing.assert_array_equal(source(batch).numpy(), target(batch).numpy())


def test_eval_mode_reaches_every_submodule():
    """Test eval() switches dropout and batch norm off."""
    model = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32))).eval()
    assert all(not module.training for module in model.modules())


def test_backward_reaches_all_parameters(batch):
    """Test every parameter gets a gradient."""
    model = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32)))
    model(batch).sum().backward()
    assert all(p.grad is not None for p in model.parameters())


def test_wrong_input_shape():
    """Test an input of the wrong size is rejected."""
    model = build_classifier(ClassifierConfig.desk("residual", input_size=(32, 32)))
    with pytest.raises(ConfigError):
        model(Tensor(np.zeros((1, 3, 64, 64))))


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"topology": "vgg"}, "Unknown classifier topology"),
        ({"dropout_p": 1.0}, "dropout_p must lie in [0, 1)"),
        ({"input_size": (30, 30)}, "must be divisible by 8"),
    ],
)
def test_invalid_config(overrides, message):
    """Test configuration validation."""
    with pytest.raises(ConfigError) as exc_info:
        ClassifierConfig(**overrides)
    assert message in str(exc_info.value)


def test_dense_is_wider_than_residual_at_desk_scale():
    """Test desk presets stay small enough for CPU training."""
    residual = build_classifier(ClassifierConfig.desk("residual"))
    dense = build_classifier(ClassifierConfig.desk("dense"))
    assert residual.parameter_count() < 400_000
    assert dense.parameter_count() < 400_000


def test_paper_presets_use_full_size_input():
    """Test the full-size presets keep the large input and deep stages."""
    assert PAPER_PRESETS["residual"].input_size == (224, 224)
    assert PAPER_PRESETS["dense"].blocks_per_stage == (6, 12, 24, 16)
