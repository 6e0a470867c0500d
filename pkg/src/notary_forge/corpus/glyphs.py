"""Integer-vertex outlines of the synthetic notary signs.

Every family spans exactly ``size`` pixels in both directions, so the
bounding box of the rasterized sign is ``size × size``.
"""

from __future__ import annotations

GLYPH_FAMILIES = ("cross", "pattee", "flourish")


def _arms(size: int) -> tuple[int, int]:
    width = max(1, round(size / 3))
    low = (size - width) // 2
    return low, low + width


def cross(size: int) -> list[tuple[int, int]]:
    lo, hi = _arms(size)
    s = size
    return [
        (lo, 0), (hi, 0), (hi, lo), (s, lo), (s, hi), (hi, hi),
        (hi, s), (lo, s), (lo, hi), (0, hi), (0, lo), (lo, lo),
    ]  # fmt: skip


def pattee(size: int) -> list[tuple[int, int]]:
    """Cross whose arms widen towards their ends."""
    lo, hi = _arms(size)
    flare = max(1, round(size / 8))
    if lo < flare:
        return cross(size)
    s, f = size, flare
    return [
        (lo - f, 0), (hi + f, 0), (hi, lo), (s, lo - f), (s, hi + f), (hi, hi),
        (hi + f, s), (lo - f, s), (lo, hi), (0, hi + f), (0, lo - f), (lo, lo),
    ]  # fmt: skip


def flourish(size: int) -> list[tuple[int, int]]:
    """Cross with an enlarged square boss at the centre."""
    lo, hi = _arms(size)
    grow = max(1, round(size / 6))
    clo, chi = lo - grow, hi + grow
    if clo < 1:
        return cross(size)
    s = size
    return [
        (lo, 0), (hi, 0), (hi, clo), (chi, clo), (chi, lo), (s, lo), (s, hi),
        (chi, hi), (chi, chi), (hi, chi), (hi, s), (lo, s), (lo, chi), (clo, chi),
        (clo, hi), (0, hi), (0, lo), (clo, lo), (clo, clo), (lo, clo),
    ]  # fmt: skip


_BUILDERS = {"cross": cross, "pattee": pattee, "flourish": flourish}


def glyph_polygon(family: str, size: int, origin: tuple[int, int] = (0, 0)) -> list[tuple[int, int]]:
    if family not in _BUILDERS:
        raise ValueError(f"unknown glyph family: {family}")
    if size < 3:
        raise ValueError(f"glyph size must be at least 3 px, got {size}")
    ox, oy = origin
    return [(x + ox, y + oy) for x, y in _BUILDERS[family](size)]
