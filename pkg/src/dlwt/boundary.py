"""Boundary extension for finite grids.

Every transform in this package is written as if the signal lived on the
whole integer lattice; out-of-range indices are folded back into range here.
All array helpers act on the last two axes (rows = y, columns = x), so a
stack of grids can be pushed through the same code path.
"""
from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np


class BoundaryMode(str, enum.Enum):
    PERIODIC = "periodic"
    SYMMETRIC = "symmetric"  # whole-sample: ... c b | a b c d | c b ...

    @classmethod
    def parse(cls, value: "BoundaryMode | str") -> "BoundaryMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown boundary mode {value!r} (expected one of: {names})") from None


def resolve_index(index, size: int, mode: BoundaryMode | str = BoundaryMode.PERIODIC):
    """Map integer index(es) onto ``range(size)``.

    Works on scalars and integer arrays. In-range indices are returned
    unchanged for both modes.
    """
    if size < 1:
        raise ValueError("size must be positive")
    mode = BoundaryMode.parse(mode)
    idx = np.asarray(index, dtype=np.int64)
    if mode is BoundaryMode.PERIODIC:
        out = np.mod(idx, size)
    elif size == 1:
        out = np.zeros_like(idx)
    else:
        period = 2 * size - 2
        out = np.mod(idx, period)
        out = np.where(out >= size, period - out, out)
    if np.ndim(index) == 0:
        return int(out)
    return out


@lru_cache(maxsize=4096)
def _shift_indices(size: int, offset: int, mode: BoundaryMode) -> np.ndarray:
    idx = resolve_index(np.arange(size) + offset, size, mode)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=4096)
def _strided_indices(size: int, stride: int, offset: int, count: int, mode: BoundaryMode) -> np.ndarray:
    idx = resolve_index(stride * np.arange(count) + offset, size, mode)
    idx.setflags(write=False)
    return idx


def shifted(a: np.ndarray, dx: int, dy: int, mode: BoundaryMode | str = BoundaryMode.PERIODIC) -> np.ndarray:
    """Return ``b`` with ``b[..., y, x] = a[..., y + dy, x + dx]`` (boundary-resolved)."""
    mode = BoundaryMode.parse(mode)
    if dx == 0 and dy == 0:
        return a
    h, w = a.shape[-2:]
    if mode is BoundaryMode.PERIODIC:
        return np.roll(a, (-dy, -dx), axis=(-2, -1))
    out = a
    if dy:
        out = np.take(out, _shift_indices(h, dy, mode), axis=-2)
    if dx:
        out = np.take(out, _shift_indices(w, dx, mode), axis=-1)
    return out


def sample_lattice(a: np.ndarray, ox: int, oy: int, mode: BoundaryMode | str = BoundaryMode.PERIODIC) -> np.ndarray:
    """Return ``b[..., ty, tx] = a[..., 2*ty + oy, 2*tx + ox]`` on a half-size grid."""
    mode = BoundaryMode.parse(mode)
    h, w = a.shape[-2:]
    rows = _strided_indices(h, 2, oy, h // 2, mode)
    cols = _strided_indices(w, 2, ox, w // 2, mode)
    return np.take(np.take(a, rows, axis=-2), cols, axis=-1)
