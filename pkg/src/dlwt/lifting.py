"""One-dimensional lifting wavelet transform.

Lifting operators are applied as correlations, ``(P x)[n] = sum_l p[l] x[n + l]``,
so that a predict tap at offset ``+1`` reads the *next* even sample. This is
the orientation in which ``{0: 1/2, 1: 1/2}`` is linear interpolation of the
odd sample sitting between ``x[2n]`` and ``x[2n + 2]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Mapping, Sequence

import numpy as np

from .boundary import BoundaryMode, resolve_index


@dataclass(frozen=True)
class LiftingStep1D:
    """One predict/update pair with its trailing scale factor.

    With several steps in a cascade only the scale of the last step is used;
    earlier ``scale`` values must be left at 1.
    """

    predict_taps: Mapping[int, float]
    update_taps: Mapping[int, float]
    scale: float = 1.0

    def __post_init__(self):
        if self.scale == 0 or not isfinite(self.scale):
            raise ValueError("scale K must be finite and nonzero")
        for name in ("predict_taps", "update_taps"):
            taps = getattr(self, name)
            if not all(isfinite(v) for v in taps.values()):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, {int(k): float(v) for k, v in taps.items()})


def haar_step() -> LiftingStep1D:
    """Unnormalised Haar: ``d = odd - even``, ``c = even + d/2``."""
    return LiftingStep1D({0: 1.0}, {0: 0.5})


def lagrange_midpoint_taps(order: int) -> dict[int, float]:
    """Weights of the order-``order`` interpolating predictor.

    Order 0 copies the left neighbour. An even order ``M >= 2`` uses the
    ``M`` nodes ``-M/2 + 1 .. M/2`` and evaluates their Lagrange
    interpolant half-way between nodes 0 and 1, which reproduces every
    polynomial of degree ``M - 1``.
    """
    if order < 0 or order % 2:
        raise ValueError(f"interpolation order must be a nonnegative even integer, got {order}")
    if order == 0:
        return {0: 1.0}
    nodes = range(-order // 2 + 1, order // 2 + 1)
    taps = {}
    for i in nodes:
        w = 1.0
        for m in nodes:
            if m != i:
                w *= (0.5 - m) / (i - m)
        taps[i] = w
    return taps


def _as_signal(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    return a


def _correlate(x: np.ndarray, taps: Mapping[int, float], boundary: BoundaryMode) -> np.ndarray:
    n = np.arange(x.size)
    out = np.zeros_like(x)
    for offset, weight in sorted(taps.items()):
        out += weight * x[resolve_index(n + offset, x.size, boundary)]
    return out


def _steps(steps) -> list[LiftingStep1D]:
    if isinstance(steps, LiftingStep1D):
        return [steps]
    steps = list(steps)
    if not steps:
        raise ValueError("at least one lifting step is required")
    return steps


def lwt_forward_1d(signal, steps: LiftingStep1D | Sequence[LiftingStep1D],
                   boundary: BoundaryMode | str = BoundaryMode.PERIODIC):
    """Split, predict, update and scale one level of a 1-D signal.

    Parameters
    ----------
    signal : array_like
        Even-length real samples.
    steps : LiftingStep1D or sequence of LiftingStep1D
        Predict/update pairs applied in order. The scale of the final step
        is applied once at the end.
    boundary : BoundaryMode or str
        Extension used for taps that fall outside the half-length signals.

    Returns
    -------
    coarse, detail : ndarray
        Each of length ``len(signal) // 2``.
    """
    x = _as_signal(signal, "signal")
    if x.size < 2 or x.size % 2:
        raise ValueError(f"signal length must be even and >= 2, got {x.size}")
    boundary = BoundaryMode.parse(boundary)
    steps = _steps(steps)
    even, odd = x[0::2].copy(), x[1::2].copy()
    for step in steps:
        odd -= _correlate(even, step.predict_taps, boundary)
        even += _correlate(odd, step.update_taps, boundary)
    k = steps[-1].scale
    return k * even, odd / k


def lwt_inverse_1d(coarse, detail, steps: LiftingStep1D | Sequence[LiftingStep1D],
                   boundary: BoundaryMode | str = BoundaryMode.PERIODIC) -> np.ndarray:
    """Undo :func:`lwt_forward_1d` exactly (up to rounding)."""
    c = _as_signal(coarse, "coarse")
    d = _as_signal(detail, "detail")
    if c.size != d.size:
        raise ValueError(f"coarse and detail lengths differ ({c.size} != {d.size})")
    boundary = BoundaryMode.parse(boundary)
    steps = _steps(steps)
    k = steps[-1].scale
    even, odd = c / k, d * k
    for step in reversed(steps):
        even -= _correlate(odd, step.update_taps, boundary)
        odd += _correlate(even, step.predict_taps, boundary)
    out = np.empty(2 * c.size)
    out[0::2] = even
    out[1::2] = odd
    return out

