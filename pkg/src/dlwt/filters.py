"""Lifting filters: directional interpolating predictors, their matched
update filters, and the B-spline low-pass used by the update-first form."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping

import numpy as np

from .boundary import BoundaryMode, shifted
from .directions import DirectionSet, direction_vectors
from .lifting import lagrange_midpoint_taps

SUPPORTED_ORDERS = (0, 2, 4)


@dataclass(frozen=True)
class Filter2D:
    """Finite set of taps ``{(x, y): weight}``; zero weights are dropped.

    Applied as a correlation: ``apply(a)[t] = sum_l taps[l] * a[t + l]``.
    """

    taps: Mapping[tuple[int, int], float]

    def __post_init__(self):
        clean = {}
        for (x, y), w in self.taps.items():
            w = float(w)
            if not np.isfinite(w):
                raise ValueError("filter taps must be finite")
            if w != 0.0:
                clean[(int(x), int(y))] = clean.get((int(x), int(y)), 0.0) + w
        object.__setattr__(self, "taps", dict(sorted(clean.items())))

    def __iter__(self) -> Iterator[tuple[tuple[int, int], float]]:
        return iter(self.taps.items())

    def __len__(self) -> int:
        return len(self.taps)

    def __getitem__(self, offset: tuple[int, int]) -> float:
        return self.taps.get(offset, 0.0)

    def total(self) -> float:
        return float(sum(self.taps.values()))

    def reflected(self) -> "Filter2D":
        return Filter2D({(-x, -y): w for (x, y), w in self.taps.items()})

    def scaled(self, factor: float) -> "Filter2D":
        return Filter2D({o: w * factor for o, w in self.taps.items()})

    def radius(self) -> int:
        return max((max(abs(x), abs(y)) for x, y in self.taps), default=0)

    def apply(self, a: np.ndarray, boundary: BoundaryMode | str = BoundaryMode.PERIODIC) -> np.ndarray:
        out = np.zeros(a.shape, dtype=np.float64)
        for (x, y), w in self.taps.items():
            out += w * shifted(a, x, y, boundary)
        return out


def _check_order(order: int, name: str = "M") -> None:
    if order not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported order {name}={order}; expected one of {SUPPORTED_ORDERS}")


def _check_direction(k: int, dirs: DirectionSet) -> None:
    if k not in dirs.indices:
        raise ValueError(f"direction index must be in 1..{len(dirs.vectors) - 1}, got {k}")


def interpolating_prediction(order: int, k: int, dirs: DirectionSet | None = None) -> Filter2D:
    """M-th order Lagrange predictor laid along ``s_k``.

    M=0 is ``{0: 1}``, M=2 is ``{0: 1/2, s_k: 1/2}`` and M=4 is
    ``{-s_k: -1/16, 0: 9/16, s_k: 9/16, 2 s_k: -1/16}``.
    """
    _check_order(order)
    dirs = dirs or direction_vectors()
    _check_direction(k, dirs)
    sx, sy = dirs.vectors[k]
    return Filter2D({(i * sx, i * sy): w for i, w in lagrange_midpoint_taps(order).items()})


def update_from_prediction(order: int, k: int, dirs: DirectionSet | None = None) -> Filter2D:
    """Update filter matched to the predictor: reflect through the origin, divide by 4."""
    _check_order(order, "M_tilde")
    return interpolating_prediction(order, k, dirs).reflected().scaled(0.25)


def bspline_filter_1d(r: int) -> dict[int, float]:
    """Coefficients of ``exp(-i*eps*w/2) * cos(w/2)**r``.

    Binomial weights ``C(r, j) / 2**r`` at positions ``j - (r - eps)/2``;
    for odd ``r`` the half-sample phase term makes the positions integral.
    """
    if int(r) != r or r < 1:
        raise ValueError(f"B-spline order must be a positive integer, got {r}")
    r = int(r)
    eps = r % 2
    start = -(r - eps) // 2
    return {start + j: comb(r, j) / 2.0**r for j in range(r + 1)}


def bspline_filter_2d(r: int) -> Filter2D:
    taps = bspline_filter_1d(r)
    return Filter2D({(x, y): wx * wy for x, wx in taps.items() for y, wy in taps.items()})
