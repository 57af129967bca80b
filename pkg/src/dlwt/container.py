"""DLWC coefficient container.

Layout::

    b"DLWC1\\n"
    <one line of UTF-8 JSON, keys sorted>\\n
    <little-endian float64 payload>

The payload holds the coarse grid, then every level from coarsest to
finest with its twelve detail grids in ascending direction order, each grid
row-major. ``level_dims`` lists ``[width, height]`` per level in the same
coarsest-to-finest order.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .boundary import BoundaryMode
from .directions import N_DIRECTIONS, direction_vectors
from .transform import Decomposition, LiftingConfig, MergePolicy, default_top_level

MAGIC = b"DLWC1\n"
_FLOAT = np.dtype("<f8")


class ContainerError(ValueError):
    """Raised for malformed DLWC data."""


def encode(decomp: Decomposition, merge_default: MergePolicy | str = "average") -> bytes:
    decomp.validate()
    cfg = decomp.config
    levels = list(reversed(decomp.detail_levels()))
    header = {
        "width": decomp.width,
        "height": decomp.height,
        "J": decomp.levels,
        "L": decomp.top_level,
        "N": N_DIRECTIONS,
        "K": cfg.scale,
        "M": cfg.order,
        "M_tilde": cfg.update_order,
        "stages": cfg.stages,
        "boundary": cfg.boundary.value,
        "merge_default": str(MergePolicy.parse(merge_default)),
        "level_dims": [[decomp.level_shape(lvl)[1], decomp.level_shape(lvl)[0]] for lvl in levels],
    }
    parts = [np.ascontiguousarray(decomp.coarse, dtype=_FLOAT).tobytes()]
    for lvl in levels:
        for k in decomp.directions.indices:
            parts.append(np.ascontiguousarray(decomp.details[(lvl, k)], dtype=_FLOAT).tobytes())
    line = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return MAGIC + line + b"\n" + b"".join(parts)


def decode(data: bytes) -> tuple[Decomposition, MergePolicy]:
    """Parse a DLWC blob; returns the decomposition and the stored default merge policy."""
    if not data.startswith(MAGIC):
        raise ContainerError("not a DLWC container (bad magic)")
    end = data.find(b"\n", len(MAGIC))
    if end < 0:
        raise ContainerError("truncated DLWC header")
    try:
        header = json.loads(data[len(MAGIC):end].decode("utf-8"))
        width, height, levels = int(header["width"]), int(header["height"]), int(header["J"])
        n = int(header["N"])
        cfg = LiftingConfig(
            order=int(header["M"]),
            update_order=int(header["M_tilde"]),
            scale=float(header["K"]),
            boundary=BoundaryMode.parse(header["boundary"]),
            stages=int(header.get("stages", 1)),
        )
        merge = MergePolicy.parse(header.get("merge_default", "average"))
        dims = [tuple(int(v) for v in wh) for wh in header["level_dims"]]
        top = int(header["L"]) if "L" in header else default_top_level(width, height)
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as exc:
        raise ContainerError(f"invalid DLWC header: {exc}") from exc
    if n != N_DIRECTIONS:
        raise ContainerError(f"unsupported direction count N={n}")
    if levels < 1 or len(dims) != levels:
        raise ContainerError("level_dims does not match J")
    for j, (w, h) in enumerate(reversed(dims), start=1):
        if (w, h) != (width >> j, height >> j) or width % 2**levels or height % 2**levels:
            raise ContainerError(f"level_dims entry {w}x{h} inconsistent with a {width}x{height} image")
    if top < levels:
        raise ContainerError(f"top level L={top} is smaller than J={levels}")

    count = dims[0][0] * dims[0][1] + N_DIRECTIONS * sum(w * h for w, h in dims)
    payload = data[end + 1:]
    if len(payload) != 8 * count:
        raise ContainerError(f"payload has {len(payload)} bytes, header implies {8 * count}")
    values = np.frombuffer(payload, dtype=_FLOAT).astype(np.float64)

    pos = 0

    def take(w: int, h: int) -> np.ndarray:
        nonlocal pos
        grid = values[pos:pos + w * h].reshape(h, w).copy()
        pos += w * h
        return grid

    dirs = direction_vectors()
    coarse = take(*dims[0])
    details = {}
    for i, (w, h) in enumerate(dims):
        level = top - levels + i
        for k in dirs.indices:
            details[(level, k)] = take(w, h)
    decomp = Decomposition(coarse, details, levels, top, cfg, width, height, dirs)
    decomp.validate()
    return decomp, merge


def write_container(path: str | os.PathLike, decomp: Decomposition,
                    merge_default: MergePolicy | str = "average") -> int:
    blob = encode(decomp, merge_default)
    Path(path).write_bytes(blob)
    return len(blob)


def read_container(path: str | os.PathLike) -> tuple[Decomposition, MergePolicy]:
    return decode(Path(path).read_bytes())
