import numpy as np
import pytest

from notary_forge.augment import (
    PHOTOMETRIC,
    PRESETS,
    AugmentationPlan,
    EffectStep,
    apply_plan,
    draw_params,
    level_scales,
    sample_plan,
)
from notary_forge.augment.photometric import (
    brightness_contrast,
    channel_shuffle,
    clahe,
    gaussian_noise,
    grey,
    jpeg_compression,
    motion_kernel,
    shadow,
    snow,
)
from notary_forge.errors import ConfigError
from notary_forge.rng import make_rng


@pytest.fixture
def image():
    return make_rng(0, "photo").uniform(0.1, 0.9, (16, 16, 3))


def test_photometric_plans_leave_the_mask_alone(image):
    """Test colour effects change pixels but never the mask."""
    preset = PRESETS["heavy"].with_probs(1.0)
    mask = np.zeros((16, 16), dtype=np.uint8)
    mask[4:9, 4:9] = 1
    rng = make_rng(1, "photo-plan")
    for _ in range(30):
        plan = sample_plan(preset, rng)
        plan = AugmentationPlan(steps=[s for s in plan.steps if not s.geometric])
        _, out_mask = apply_plan(plan, image, mask)
        np.testing.assert_array_equal(out_mask, mask)


def test_apply_plan_clamps_and_keeps_dtype(image):
    plan = AugmentationPlan(
        steps=[
            EffectStep(
                group="brightness_contrast",
                effect="brightness_contrast",
                params={"brightness": 0.8, "contrast": 0.0},
            )
        ]
    )
    out, mask = apply_plan(plan, image.astype(np.float32))
    assert mask is None
    assert out.dtype == np.float32
    assert out.max() <= 1.0 and out.min() >= 0.0


def test_every_effect_keeps_the_shape(image):
    """Test each registered effect with drawn parameters returns an H×W×3 array."""
    scales = level_scales("heavy")
    for effect, fn in PHOTOMETRIC.items():
        params = draw_params(effect, scales, make_rng(2, effect))
        assert fn(image, **params).shape == image.shape, effect


def test_neutral_brightness_contrast_is_identity(image):
    np.testing.assert_array_equal(brightness_contrast(image, 0.0, 0.0), image)


def test_contrast_keeps_the_mean(image):
    out = brightness_contrast(image, 0.0, 0.5)
    assert out.mean() == pytest.approx(image.mean())
    assert out.std() == pytest.approx(1.5 * image.std())


def test_noise_is_seeded(image):
    np.testing.assert_array_equal(gaussian_noise(image, 0.1, 3), gaussian_noise(image, 0.1, 3))
    assert not np.array_equal(gaussian_noise(image, 0.1, 3), gaussian_noise(image, 0.1, 4))


def test_motion_kernel_is_normalised():
    kernel = motion_kernel(5, 45.0)
    assert kernel.shape == (5, 5)
    assert kernel.sum() == pytest.approx(1.0)
    assert kernel[2, 2] > 0


def test_grey_has_equal_channels(image):
    out = grey(image)
    np.testing.assert_allclose(out[..., 0], out[..., 2])


def test_channel_shuffle(image):
    np.testing.assert_array_equal(channel_shuffle(image, [2, 0, 1])[..., 0], image[..., 2])
    with pytest.raises(ConfigError):
        channel_shuffle(image, [0, 0, 1])


def test_full_shadow_blackens_the_polygon():
    out = shadow(np.ones((10, 10, 3)), [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], 1.0)
    assert out[3:7, 3:7].max() == 0.0


def test_snow_brightens(image):
    out = snow(image, blobs=3, radius=0.1, seed=5)
    assert out.mean() > image.mean()
    np.testing.assert_array_equal(out, snow(image, blobs=3, radius=0.1, seed=5))


def test_jpeg_quality_orders_error(image):
    """Test lower JPEG quality loses more detail."""
    fine = np.abs(jpeg_compression(image, 95) - image).mean()
    coarse = np.abs(jpeg_compression(image, 10) - image).mean()
    assert fine < coarse


def test_clahe_stays_in_range(image):
    out = clahe(image, 0.02)
    assert out.min() >= 0.0 and out.max() <= 1.0


@pytest.mark.parametrize(
    "call, message",
    [
        (lambda im: brightness_contrast(im, 0.0, -1.0), "contrast change"),
        (lambda im: gaussian_noise(im, -0.1, 0), "non-negative"),
        (lambda im: PHOTOMETRIC["box_blur"](im, 4), "positive odd integer"),
        (lambda im: PHOTOMETRIC["gaussian_blur"](im, 0.0), "sigma must be positive"),
        (lambda im: clahe(im, 0.0), "clip limit"),
        (lambda im: jpeg_compression(im, 0), "jpeg quality"),
        (lambda im: shadow(im, [[0, 0], [1, 0], [1, 1]], 1.5), "darkness"),
        (lambda im: PHOTOMETRIC["rgb_shift"](im, [0.1, 0.1]), "three values"),
    ],
)
def test_invalid_parameters(image, call, message):
    with pytest.raises(ConfigError) as exc_info:
        call(image)
    assert message in str(exc_info.value)
