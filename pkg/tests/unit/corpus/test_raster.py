import numpy as np
import pytest

from notary_forge.corpus import GLYPH_FAMILIES, glyph_polygon, rasterize_polygon, translate_polygon
from notary_forge.errors import ConfigError, OutOfBoundsError


def test_square_covers_exactly_its_pixels():
    """Test the 10×10 square covers 100 pixels."""
    mask = rasterize_polygon([(0, 0), (10, 0), (10, 10), (0, 10)], (12, 12))
    assert mask.sum() == 100
    assert mask[:10, :10].all()


def test_triangle_matches_pixel_centre_oracle():
    """Test the even-odd fill against a pixel-centre half-plane check."""
    vertices = [(1, 1), (9, 1), (1, 7)]
    mask = rasterize_polygon(vertices, (10, 10))
    rows, cols = np.mgrid[0:10, 0:10]
    x, y = cols + 0.5, rows + 0.5
    expected = (x > 1) & (y > 1) & (6 * x + 8 * y < 62)
    np.testing.assert_array_equal(mask, expected)


def test_vertices_on_the_border_are_allowed():
    assert rasterize_polygon([(0, 0), (8, 0), (8, 8)], (8, 8)).any()


def test_vertex_outside_raises():
    with pytest.raises(OutOfBoundsError) as exc_info:
        rasterize_polygon([(0, 0), (9, 0), (9, 9)], (8, 8))
    assert "outside the 8x8 image" in str(exc_info.value)


def test_degenerate_polygon():
    with pytest.raises(ConfigError):
        rasterize_polygon([(0, 0), (4, 4)], (8, 8))
    assert not rasterize_polygon([(1, 1), (5, 1), (3, 1)], (8, 8)).any()


@pytest.mark.parametrize("family", GLYPH_FAMILIES)
@pytest.mark.parametrize("size", [3, 5, 8, 15])
def test_glyph_bounding_box_is_size(family, size):
    """Test every glyph spans exactly ``size`` pixels each way."""
    mask = rasterize_polygon(glyph_polygon(family, size, origin=(2, 3)), (24, 24))
    rows, cols = np.nonzero(mask)
    assert rows.min() == 3 and rows.max() == 3 + size - 1
    assert cols.min() == 2 and cols.max() == 2 + size - 1
    assert mask.sum() >= 0.3 * size * size


def test_glyph_errors():
    with pytest.raises(ValueError) as exc_info:
        glyph_polygon("star", 5)
    assert "unknown glyph family" in str(exc_info.value)
    with pytest.raises(ValueError):
        glyph_polygon("cross", 2)


def test_translate_polygon():
    assert translate_polygon([(1, 2), (3, 4)], 1, -1) == [(2, 1), (4, 3)]
