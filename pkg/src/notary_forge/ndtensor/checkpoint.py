"""Flat binary parameter container with a JSON header.

Layout: magic ``NFCK``, a little-endian uint32 header length, the UTF-8 JSON
header, then the raw little-endian tensor bytes at the recorded offsets
(relative to the end of the header).
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Any, Mapping

import numpy as np

MAGIC = b"NFCK"
FORMAT_VERSION = 1


def save_checkpoint(
    path: str | Path,
    state: Mapping[str, np.ndarray],
    config: Mapping[str, Any] | None = None,
) -> Path:
    path = Path(path)
    entries, blobs, offset = [], [], 0
    for name in sorted(state):
        array = np.asarray(state[name])
        little = array.astype(array.dtype.newbyteorder("<"), copy=False)
        blob = np.ascontiguousarray(little).tobytes()
        entries.append(
            {
                "name": name,
                "shape": list(array.shape),
                "dtype": little.dtype.str,
                "offset": offset,
                "nbytes": len(blob),
            }
        )
        blobs.append(blob)
        offset += len(blob)
    header = json.dumps(
        {
            "format_version": FORMAT_VERSION,
            "config": dict(config or {}),
            "tensors": entries,
        },
        sort_keys=True,
    ).encode("utf-8")
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header)))
        fh.write(header)
        for blob in blobs:
            fh.write(blob)
    return path


def load_checkpoint(path: str | Path) -> tuple[dict[str, np.ndarray], dict[str, Any]]:
    """Return ``(state, config)`` from a file written by :func:`save_checkpoint`."""
    raw = Path(path).read_bytes()
    if raw[:4] != MAGIC:
        raise ValueError(f"{path} is not a checkpoint file")
    (header_len,) = struct.unpack("<I", raw[4:8])
    header = json.loads(raw[8 : 8 + header_len].decode("utf-8"))
    if header.get("format_version") != FORMAT_VERSION:
        raise ValueError(
            f"Unsupported checkpoint format version: {header.get('format_version')}"
        )
    body = raw[8 + header_len :]
    state = {}
    for entry in header["tensors"]:
        start = entry["offset"]
        chunk = body[start : start + entry["nbytes"]]
        state[entry["name"]] = (
            np.frombuffer(chunk, dtype=np.dtype(entry["dtype"]))
            .reshape(entry["shape"])
            .copy()
        )
    return state, header["config"]
