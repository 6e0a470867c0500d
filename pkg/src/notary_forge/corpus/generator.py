"""Synthetic notarial instruments with pixel-exact ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..rng import make_rng
from .glyphs import GLYPH_FAMILIES, glyph_polygon
from .raster import rasterize_polygon
from .records import ORNAMENT, SIGN, TEXT, DocumentRecord, Label
from .spec import CorpusSpec

PAPER_BASE = np.array([0.93, 0.86, 0.68])
TEXT_INK = np.array([0.22, 0.17, 0.12])
SIGN_INK = np.array([0.45, 0.09, 0.07])
ORNAMENT_COLORS = (
    np.array([0.16, 0.26, 0.62]),
    np.array([0.68, 0.16, 0.12]),
    np.array([0.78, 0.62, 0.22]),
)
TEXT_FRACTION_RANGE = (0.26, 0.42)
STROKE_DENSITY = 0.55


@dataclass
class DocumentStyle:
    """Per-document appearance: paper tint, ink contrast, fading and stains."""

    paper: np.ndarray
    contrast: float
    ink_fade: float
    stains: int

    @classmethod
    def draw(cls, rng: np.random.Generator) -> "DocumentStyle":
        return cls(
            paper=np.clip(PAPER_BASE + rng.uniform(-0.05, 0.05, 3), 0.0, 1.0),
            contrast=float(rng.uniform(0.55, 1.0)),
            ink_fade=float(rng.uniform(0.6, 1.0)),
            stains=int(rng.integers(0, 4)),
        )


def _ink(under: np.ndarray, ink: np.ndarray, strength: float) -> np.ndarray:
    return under + (ink - under) * strength


def _paint_paper(shape: tuple[int, int], style: DocumentStyle, rng) -> np.ndarray:
    h, w = shape
    image = np.broadcast_to(style.paper, (h, w, 3)).copy()
    image += rng.normal(0.0, 0.015, (h, w, 1))
    yy, xx = np.mgrid[0:h, 0:w]
    for _ in range(style.stains):
        cy, cx = rng.uniform(0, h), rng.uniform(0, w)
        radius = rng.uniform(0.1, 0.3) * max(h, w)
        depth = rng.uniform(0.03, 0.10)
        blob = np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / (2.0 * radius * radius))
        image *= (1.0 - depth * blob)[..., None]
    return image


def _write_text(image, mask, style: DocumentStyle, rng, fraction: float) -> None:
    """Fill lines with word blocks until ``fraction`` of the page is text."""
    h, w = mask.shape
    margin = max(2, round(0.06 * min(h, w)))
    line_h = max(2, round(h / 16))
    gap = max(1, round(h / 64))
    goal = fraction * h * w
    written = 0
    y = margin
    while y + line_h <= h - margin and written < goal:
        x = margin + int(rng.integers(0, 3))
        while x < w - margin and written < goal:
            x_end = min(x + int(rng.integers(3, max(4, w // 5))), w - margin)
            mask[y : y + line_h, x:x_end] = TEXT
            region = image[y : y + line_h, x:x_end]
            strokes = rng.random(region.shape[:2]) < STROKE_DENSITY
            strength = style.contrast * style.ink_fade * rng.uniform(0.7, 1.0)
            region[strokes] = _ink(region[strokes], TEXT_INK, strength)
            written += line_h * (x_end - x)
            x = x_end + int(rng.integers(1, 4))
        y += line_h + gap


def _draw_ornament(image, mask, rng) -> None:
    h, w = mask.shape
    side = int(rng.integers(3, max(3, round(0.1 * min(h, w))) + 1))
    y = int(rng.integers(0, h - side + 1))
    x = int(rng.integers(0, w - side + 1))
    color = ORNAMENT_COLORS[int(rng.integers(len(ORNAMENT_COLORS)))]
    mask[y : y + side, x : x + side] = ORNAMENT
    checker = (np.add.outer(np.arange(side), np.arange(side)) % 2).astype(bool)
    patch = np.broadcast_to(color, (side, side, 3)).copy()
    patch[checker] = _ink(patch[checker], np.ones(3), 0.35)
    image[y : y + side, x : x + side] = patch


def _draw_sign(image, mask, spec: CorpusSpec, style: DocumentStyle, rng):
    h, w = mask.shape
    smin, smax = spec.sign_side_bounds()
    size = int(rng.integers(smin, smax + 1))
    family = GLYPH_FAMILIES[int(rng.integers(len(GLYPH_FAMILIES)))]
    # signs sit in the lower part of the charter when there is room
    top = min(h - size, int(0.4 * h))
    origin = (int(rng.integers(0, w - size + 1)), int(rng.integers(top, h - size + 1)))
    polygon = glyph_polygon(family, size, origin)
    pixels = rasterize_polygon(polygon, (h, w))
    mask[pixels] = SIGN
    strength = rng.uniform(0.8, 1.0) * max(style.contrast, 0.7)
    image[pixels] = _ink(image[pixels], SIGN_INK, strength)
    return polygon, family


def generate_document(
    seed: int,
    label: Union[Label, str],
    spec: CorpusSpec,
    doc_id: str | None = None,
) -> DocumentRecord:
    """Render one document; fully determined by ``(seed, label, spec)``."""
    label = Label(label)
    rng = make_rng(seed, label.value)
    shape = tuple(spec.image_size)
    style = DocumentStyle.draw(rng)
    image = _paint_paper(shape, style, rng)
    mask = np.zeros(shape, dtype=np.uint8)
    _write_text(image, mask, style, rng, float(rng.uniform(*TEXT_FRACTION_RANGE)))
    if rng.random() < spec.ornament_rate:
        _draw_ornament(image, mask, rng)
    polygon, family = None, None
    if label is Label.NOTARY:
        polygon, family = _draw_sign(image, mask, spec, style, rng)
    return DocumentRecord(
        id=doc_id or f"{label.value}-{seed}",
        image=np.clip(image, 0.0, 1.0).astype(np.float32),
        mask=mask,
        label=label,
        sign_polygon=polygon,
        seed=int(seed),
        meta={"glyph": family} if family else {},
    )
