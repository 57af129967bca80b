"""Redundant 12-direction lifting wavelet transform (forward and inverse).

One analysis level splits ``c`` into the even polyphase component
``even[t] = c[2t]`` and twelve overlapping odd components
``odd_k[t] = c[2t + s_k]``, predicts each odd component from ``even``,
and feeds the averaged residuals back into ``even``::

    d_k    = odd_k - P_k(even)                               k = 1..12
    coarse = even + sum_m alpha_m * sum_{k in coset m} U_k(d_k)
    coarse *= K;  d_k /= K

Levels are iterated on the coarse output (a decimated pyramid). The inverse
undoes scale, update and predict, then merges: every odd component of one
coset holds a shifted copy of the same samples, and the merge policy decides
how those candidates are combined.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .boundary import BoundaryMode, sample_lattice, shifted
from .directions import COSET_REPRESENTATIVES, DirectionSet, direction_vectors
from .filters import Filter2D, interpolating_prediction, update_from_prediction, _check_order


@dataclass(frozen=True)
class LiftingConfig:
    """Filter orders and numerical conventions of the transform.

    ``order`` is the prediction order M, ``update_order`` the update order
    M~ (both in {0, 2, 4}, M~ <= M). ``stages`` repeats the predict/update
    pair that many times per level.
    """

    order: int = 2
    update_order: int = 2
    scale: float = 1.0
    boundary: BoundaryMode = BoundaryMode.PERIODIC
    stages: int = 1

    def __post_init__(self):
        _check_order(self.order, "M")
        _check_order(self.update_order, "M_tilde")
        if self.update_order > self.order:
            raise ValueError(f"update order ({self.update_order}) must not exceed prediction order ({self.order})")
        if self.scale == 0 or not math.isfinite(self.scale):
            raise ValueError("scale K must be finite and nonzero")
        if int(self.stages) != self.stages or self.stages < 1:
            raise ValueError("stages must be a positive integer")
        object.__setattr__(self, "boundary", BoundaryMode.parse(self.boundary))
        object.__setattr__(self, "scale", float(self.scale))

    def predictors(self, dirs: DirectionSet) -> dict[int, Filter2D]:
        return _predictors(self.order, dirs)

    def updaters(self, dirs: DirectionSet) -> dict[int, Filter2D]:
        return _updaters(self.update_order, dirs)


@lru_cache(maxsize=64)
def _predictors(order: int, dirs: DirectionSet) -> dict[int, Filter2D]:
    return {k: interpolating_prediction(order, k, dirs) for k in dirs.indices}


@lru_cache(maxsize=64)
def _updaters(order: int, dirs: DirectionSet) -> dict[int, Filter2D]:
    # alpha_m folded into the taps so the update is a plain sum over k
    return {k: update_from_prediction(order, k, dirs).scaled(dirs.alpha(k)) for k in dirs.indices}


@dataclass(frozen=True)
class MergePolicy:
    """How the inverse combines the redundant candidates of one coset.

    ``average`` (default) takes the mean of all candidates, ``first`` takes
    the lowest direction index of the coset, ``select`` takes direction
    ``k`` for its own coset and averages the others.
    """

    kind: str = "average"
    k: int | None = None

    def __post_init__(self):
        if self.kind not in ("average", "first", "select"):
            raise ValueError(f"unknown merge policy {self.kind!r}")
        if (self.kind == "select") != (self.k is not None):
            raise ValueError("merge policy 'select' needs exactly one direction index k")

    @classmethod
    def parse(cls, value: "MergePolicy | str | int | None") -> "MergePolicy":
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls("select", value)
        text = str(value).strip().lower()
        if text.startswith("k="):
            return cls("select", int(text[2:]))
        if text in ("average", "first"):
            return cls(text)
        raise ValueError(f"unknown merge policy {value!r} (expected average, first or k=<index>)")

    def __str__(self) -> str:
        return f"k={self.k}" if self.kind == "select" else self.kind


@dataclass
class Decomposition:
    """Output of :func:`dlwt_forward`.

    ``details`` is keyed by ``(level, k)``. The input sits at level
    ``top_level`` (L); one analysis step produces level ``L - 1`` and the
    coarse grid is at level ``L - J``.
    """

    coarse: np.ndarray
    details: dict[tuple[int, int], np.ndarray]
    levels: int
    top_level: int
    config: LiftingConfig
    width: int
    height: int
    directions: DirectionSet = field(default_factory=direction_vectors)

    def detail_levels(self) -> list[int]:
        """Levels from finest to coarsest."""
        return [self.top_level - j for j in range(1, self.levels + 1)]

    def level_shape(self, level: int) -> tuple[int, int]:
        step = 2 ** (self.top_level - level)
        return self.height // step, self.width // step

    def coefficient_count(self) -> int:
        return int(self.coarse.size + sum(d.size for d in self.details.values()))

    def copy(self) -> "Decomposition":
        return Decomposition(
            coarse=self.coarse.copy(),
            details={key: d.copy() for key, d in self.details.items()},
            levels=self.levels,
            top_level=self.top_level,
            config=self.config,
            width=self.width,
            height=self.height,
            directions=self.directions,
        )

    def validate(self) -> None:
        if self.levels < 1:
            raise ValueError("decomposition must have at least one level")
        coarsest = self.top_level - self.levels
        if self.coarse.shape != self.level_shape(coarsest):
            raise ValueError(f"coarse grid has shape {self.coarse.shape}, expected {self.level_shape(coarsest)}")
        expected = {(lvl, k) for lvl in self.detail_levels() for k in self.directions.indices}
        if set(self.details) != expected:
            raise ValueError("detail bands are missing or unexpected")
        for (lvl, k), d in self.details.items():
            if d.shape != self.level_shape(lvl):
                raise ValueError(f"detail ({lvl}, {k}) has shape {d.shape}, expected {self.level_shape(lvl)}")


def _as_grid(image) -> np.ndarray:
    a = np.asarray(image, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D grid, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("grid must be nonempty")
    if not np.all(np.isfinite(a)):
        raise ValueError("grid contains NaN or Inf")
    return a


def split(c, dirs: DirectionSet | None = None,
          boundary: BoundaryMode | str = BoundaryMode.PERIODIC) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    """Even component ``c[2t]`` and odd components ``c[2t + s_k]``, k = 1..12."""
    dirs = dirs or direction_vectors()
    c = np.asarray(c, dtype=np.float64)
    h, w = c.shape[-2:]
    if h % 2 or w % 2:
        raise ValueError(f"grid dimensions must be even to split, got {w}x{h}")
    even = sample_lattice(c, 0, 0, boundary)
    odds = {k: sample_lattice(c, *dirs.vectors[k], boundary) for k in dirs.indices}
    return even, odds


def _analyze(c: np.ndarray, cfg: LiftingConfig, dirs: DirectionSet):
    even, odds = split(c, dirs, cfg.boundary)
    predict, update = cfg.predictors(dirs), cfg.updaters(dirs)
    for _ in range(cfg.stages):
        for k in dirs.indices:
            odds[k] = odds[k] - predict[k].apply(even, cfg.boundary)
        # fixed summation order over k keeps the result bit-reproducible
        correction = np.zeros_like(even)
        for k in dirs.indices:
            correction += update[k].apply(odds[k], cfg.boundary)
        even = even + correction
    return cfg.scale * even, {k: d / cfg.scale for k, d in odds.items()}


def _unlift(coarse: np.ndarray, details: Mapping[int, np.ndarray], cfg: LiftingConfig, dirs: DirectionSet):
    even = coarse / cfg.scale
    odds = {k: details[k] * cfg.scale for k in dirs.indices}
    predict, update = cfg.predictors(dirs), cfg.updaters(dirs)
    for _ in range(cfg.stages):
        correction = np.zeros_like(even)
        for k in dirs.indices:
            correction += update[k].apply(odds[k], cfg.boundary)
        even = even - correction
        for k in dirs.indices:
            odds[k] = odds[k] + predict[k].apply(even, cfg.boundary)
    return even, odds


def coset_candidates(odds: Mapping[int, np.ndarray], m: int, dirs: DirectionSet,
                     boundary: BoundaryMode | str) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Candidates for ``c[2t + t_m]`` from every odd component of coset ``m``.

    Returns the direction indices, a stack of ``odd_k[t - v_k]`` and a
    boolean validity stack. Under periodic extension every candidate is
    valid; under symmetric extension a candidate is only valid where
    ``t - v_k`` stays inside the half-size grid (elsewhere the forward
    split read a reflected sample).
    """
    boundary = BoundaryMode.parse(boundary)
    ks = list(dirs.cosets[m])
    h, w = next(iter(odds.values())).shape[-2:]
    rows, cols = np.arange(h)[:, None], np.arange(w)[None, :]
    values, masks = [], []
    for k in ks:
        vx, vy = dirs.offsets[k]
        values.append(shifted(odds[k], -vx, -vy, BoundaryMode.PERIODIC))
        if boundary is BoundaryMode.PERIODIC:
            masks.append(np.ones((h, w), dtype=bool))
        else:
            masks.append((rows - vy >= 0) & (rows - vy < h) & (cols - vx >= 0) & (cols - vx < w))
    return ks, np.stack(values), np.stack(masks)


def _merge(even: np.ndarray, odds: Mapping[int, np.ndarray], dirs: DirectionSet,
           boundary: BoundaryMode, policy: MergePolicy) -> np.ndarray:
    h, w = even.shape
    out = np.empty((2 * h, 2 * w))
    out[0::2, 0::2] = even
    for m, (tx, ty) in COSET_REPRESENTATIVES.items():
        ks, values, masks = coset_candidates(odds, m, dirs, boundary)
        # the representative (v_k = 0) is valid everywhere and is the fallback
        rep = values[[i for i, k in enumerate(ks) if dirs.offsets[k] == (0, 0)][0]]
        if policy.kind == "first" or (policy.kind == "select" and policy.k in ks):
            i = 0 if policy.kind == "first" else ks.index(policy.k)
            merged = np.where(masks[i], values[i], rep)
        else:
            merged = (values * masks).sum(axis=0) / masks.sum(axis=0)
        out[ty::2, tx::2] = merged
    return out


def default_top_level(width: int, height: int) -> int:
    return int(math.floor(math.log2(min(width, height))))


def dlwt_forward(image, levels: int, cfg: LiftingConfig | None = None,
                 dirs: DirectionSet | None = None, top_level: int | None = None) -> Decomposition:
    """Multiscale analysis of an image.

    Parameters
    ----------
    image : array_like
        2-D grid of shape ``(height, width)``; both sizes divisible by ``2**levels``.
    levels : int
        Number of analysis levels J >= 1.
    cfg : LiftingConfig, optional
        Filter orders, scale, boundary. Defaults to M = M~ = 2, K = 1, periodic.
    dirs : DirectionSet, optional
        Direction table; defaults to :func:`direction_vectors`.
    top_level : int, optional
        Resolution level L of the input (only used for labelling). Defaults
        to ``floor(log2(min(width, height)))``, i.e. 9 for 512x512.

    Returns
    -------
    Decomposition
    """
    c = _as_grid(image)
    cfg = cfg or LiftingConfig()
    dirs = dirs or direction_vectors()
    if int(levels) != levels or levels < 1:
        raise ValueError(f"number of levels J must be >= 1, got {levels}")
    levels = int(levels)
    h, w = c.shape
    if h % 2**levels or w % 2**levels:
        raise ValueError(f"grid {w}x{h} is not divisible by 2**J = {2**levels}")
    top = default_top_level(w, h) if top_level is None else int(top_level)
    if top < levels:
        raise ValueError(f"top level L={top} must be >= J={levels}")
    details = {}
    for j in range(1, levels + 1):
        c, ds = _analyze(c, cfg, dirs)
        for k, d in ds.items():
            details[(top - j, k)] = d
    return Decomposition(c, details, levels, top, cfg, w, h, dirs)


def dlwt_inverse(decomp: Decomposition, merge: MergePolicy | str | int | None = None) -> np.ndarray:
    """Reconstruct the image from a (possibly modified) decomposition."""
    decomp.validate()
    policy = MergePolicy.parse(merge)
    dirs, cfg = decomp.directions, decomp.config
    if policy.kind == "select" and policy.k not in dirs.indices:
        raise ValueError(f"merge direction must be in 1..12, got {policy.k}")
    c = np.asarray(decomp.coarse, dtype=np.float64)
    for level in reversed(decomp.detail_levels()):
        details = {k: decomp.details[(level, k)] for k in dirs.indices}
        even, odds = _unlift(c, details, cfg, dirs)
        c = _merge(even, odds, dirs, cfg.boundary, policy)
    return c


def coset_spread(image, cfg: LiftingConfig | None = None, dirs: DirectionSet | None = None) -> float:
    """Largest disagreement between valid coset candidates after one analysis
    and undo-predict step (zero up to rounding for an untouched decomposition)."""
    cfg = cfg or LiftingConfig()
    dirs = dirs or direction_vectors()
    coarse, ds = _analyze(_as_grid(image), cfg, dirs)
    _, odds = _unlift(coarse, ds, cfg, dirs)
    spread = 0.0
    for m in COSET_REPRESENTATIVES:
        _, values, masks = coset_candidates(odds, m, dirs, cfg.boundary)
        hi = np.where(masks, values, -np.inf).max(axis=0)
        lo = np.where(masks, values, np.inf).min(axis=0)
        spread = max(spread, float(np.max(hi - lo)))
    return spread


def coefficient_count(width: int, height: int, levels: int, n_directions: int = 12) -> int:
    """Stored coefficients of a ``levels``-deep decomposition of a ``width x height`` grid."""
    count = (width >> levels) * (height >> levels)
    for j in range(1, levels + 1):
        count += n_directions * (width >> j) * (height >> j)
    return count


def redundancy_ratio(decomp: Decomposition) -> Fraction:
    """Stored coefficients divided by input pixels, as an exact fraction."""
    return Fraction(decomp.coefficient_count(), decomp.width * decomp.height)
