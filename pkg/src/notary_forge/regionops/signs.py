"""Notary-sign swap and insertion between documents."""

from __future__ import annotations

from typing import Literal, NamedTuple, Optional, Sequence

import numpy as np

from ..corpus import BACKGROUND, SIGN, DocumentRecord, Label, rasterize_polygon
from ..errors import MissingSignError, OutOfBoundsError
from .resample import bbox, resize

PasteMode = Literal["masked", "rectangle"]
SwapMode = Literal["none", "swap", "swap_and_add"]


class SignPatch(NamedTuple):
    """Bounding-box crop of a sign: pixels and the donor's class mask."""

    image: np.ndarray
    mask: np.ndarray


def _require_sign(record: DocumentRecord, role: str) -> np.ndarray:
    region = record.mask == SIGN
    if not region.any():
        raise MissingSignError(f"{role} {record.id} has no notary sign")
    return region


def extract_sign(donor: DocumentRecord) -> SignPatch:
    region = _require_sign(donor, "donor")
    r0, r1, c0, c1 = bbox(region)
    return SignPatch(donor.image[r0:r1, c0:c1].copy(), donor.mask[r0:r1, c0:c1].copy())


def _paste(image, mask, patch: SignPatch, top: int, left: int, paste: PasteMode) -> None:
    ph, pw = patch.mask.shape
    window = (slice(top, top + ph), slice(left, left + pw))
    if paste == "rectangle":
        image[window] = patch.image
        mask[window] = patch.mask
        return
    if paste != "masked":
        raise ValueError(f"unknown paste mode: {paste}")
    sign = patch.mask == SIGN
    image[window][sign] = patch.image[sign]
    mask[window][sign] = SIGN


def _moved_polygon(
    donor: DocumentRecord, mask: np.ndarray, top: int, left: int
) -> Optional[list[tuple[int, int]]]:
    """Donor outline shifted to the paste position, if it still matches the mask exactly."""
    if donor.sign_polygon is None:
        return None
    r0, _, c0, _ = bbox(donor.mask == SIGN)
    moved = [(x - c0 + left, y - r0 + top) for x, y in donor.sign_polygon]
    try:
        filled = rasterize_polygon(moved, mask.shape)
    except OutOfBoundsError:
        return None
    return moved if np.array_equal(filled, mask == SIGN) else None


def background_color(record: DocumentRecord) -> np.ndarray:
    """Median colour of the background pixels (of the whole page if there are none)."""
    region = record.mask == BACKGROUND
    pixels = record.image[region] if region.any() else record.image.reshape(-1, 3)
    return np.median(pixels, axis=0).astype(record.image.dtype)


def swap_sign(
    recipient: DocumentRecord,
    donor: DocumentRecord,
    rescale: bool = True,
    paste: PasteMode = "masked",
) -> DocumentRecord:
    """Replace the recipient's sign with the donor's, at the recipient's sign position.

    With ``rescale`` the donor patch is resized to the recipient's sign
    bounding box; otherwise it is pasted at native size centred on it.
    """
    old = _require_sign(recipient, "recipient")
    patch = extract_sign(donor)
    native_shape = patch.mask.shape
    image = recipient.image.copy()
    mask = recipient.mask.copy()
    image[old] = background_color(recipient)
    mask[old] = BACKGROUND

    r0, r1, c0, c1 = bbox(old)
    h, w = mask.shape
    if rescale:
        target = (r1 - r0, c1 - c0)
        patch = SignPatch(resize(patch.image, target, order=1), resize(patch.mask, target, order=0))
        top, left = r0, c0
    else:
        ph, pw = patch.mask.shape
        if ph > h or pw > w:
            raise OutOfBoundsError(f"donor sign {ph}x{pw} does not fit into a {h}x{w} image")
        top = min(max((r0 + r1 - ph) // 2, 0), h - ph)
        left = min(max((c0 + c1 - pw) // 2, 0), w - pw)
    _paste(image, mask, patch, top, left, paste)

    polygon = None
    if patch.mask.shape == native_shape:
        polygon = _moved_polygon(donor, mask, top, left)
    return recipient.with_arrays(image, mask, label=Label.NOTARY, sign_polygon=polygon)


def add_sign(
    recipient: DocumentRecord,
    donor: DocumentRecord,
    rng: np.random.Generator,
    paste: PasteMode = "masked",
) -> DocumentRecord:
    """Paste the donor's sign at a uniformly random position fully inside the page.

    The sign is drawn on top of whatever lies below it.
    """
    patch = extract_sign(donor)
    ph, pw = patch.mask.shape
    h, w = recipient.mask.shape
    if ph > h or pw > w:
        raise OutOfBoundsError(f"donor sign {ph}x{pw} is larger than the {h}x{w} recipient")
    top = int(rng.integers(0, h - ph + 1))
    left = int(rng.integers(0, w - pw + 1))
    had_sign = recipient.sign_pixels() > 0
    image = recipient.image.copy()
    mask = recipient.mask.copy()
    _paste(image, mask, patch, top, left, paste)
    polygon = None if had_sign else _moved_polygon(donor, mask, top, left)
    return recipient.with_arrays(image, mask, label=Label.NOTARY, sign_polygon=polygon)


def apply_swap_mode(
    record: DocumentRecord,
    donors: Sequence[DocumentRecord],
    mode: SwapMode,
    rng: np.random.Generator,
    probability: float = 0.5,
    paste: PasteMode = "masked",
    rescale: bool = True,
) -> DocumentRecord:
    """Per-sample region operation of a training setting.

    Only notary samples are touched. ``swap`` replaces their sign;
    ``swap_and_add`` either replaces it or adds a second one, with equal odds.
    """
    if mode not in ("none", "swap", "swap_and_add"):
        raise ValueError(f"unknown swap mode: {mode}")
    if mode == "none" or not record.is_notary or not donors:
        return record
    if rng.random() >= probability:
        return record
    donor = donors[int(rng.integers(len(donors)))]
    if mode == "swap" or rng.random() < 0.5:
        return swap_sign(record, donor, rescale=rescale, paste=paste)
    return add_sign(record, donor, rng, paste=paste)
