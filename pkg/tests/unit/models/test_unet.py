import numpy as np
import pytest

from notary_forge.errors import ConfigError, ShapeError
from notary_forge.models import UNetConfig, build_unet5
from notary_forge.ndtensor import Tensor


@pytest.fixture
def small_unet():
    return build_unet5(UNetConfig(base_channels=2, input_size=(32, 32), seed=0))


def test_output_is_class_distribution(small_unet):
    """Test the U-Net returns per-pixel probabilities over four classes."""
    x = Tensor(np.random.default_rng(0).normal(size=(2, 3, 32, 32)))
    probs = small_unet(x).numpy()
    assert probs.shape == (2, 4, 32, 32)
    np.testing.assert_allclose(probs.sum(axis=1), 1.0, rtol=1e-5)
    assert probs.min() >= 0.0


def test_skip_connections_double_decoder_input(small_unet):
    """Test every decoder sees its skip concatenated with the upsampled path."""
    config = small_unet.config
    widths = [decoder.first.conv.weight.shape[1] for decoder in small_unet.decoders]
    assert widths == [2 * config.channels(level) for level in reversed(range(config.levels - 1))]


def test_input_must_be_divisible_by_sixteen(small_unet):
    """Test a non-divisible input raises ShapeError."""
    with pytest.raises(ShapeError) as exc_info:
        small_unet(Tensor(np.zeros((1, 3, 24, 24))))
    assert "not divisible by 16" in str(exc_info.value)


def test_config_validation():
    """Test level and size validation."""
    with pytest.raises(ConfigError):
        UNetConfig(levels=1)
    with pytest.raises(ConfigError):
        UNetConfig(input_size=(40, 40))
    with pytest.raises(ConfigError):
        build_unet5(UNetConfig(levels=4, input_size=(32, 32)))
