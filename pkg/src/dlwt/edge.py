"""Edge maps from detail-only reconstructions.

The image is decomposed ``J`` levels deep, the coarse grid is replaced by
zeros and the inverse transform is run on what is left. The magnitude of
that reconstruction is the edge energy; thresholding it gives a binary map.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .imaging import gaussian_smooth
from .transform import Decomposition, LiftingConfig, MergePolicy, dlwt_forward, dlwt_inverse


@dataclass(frozen=True)
class Threshold:
    """``relative``: cut at ``value * max(energy)`` with ``0 < value < 1``;
    ``absolute``: cut at ``value``."""

    kind: str = "relative"
    value: float = 0.1

    def __post_init__(self):
        if self.kind not in ("relative", "absolute"):
            raise ValueError(f"unknown threshold mode {self.kind!r}")
        if self.kind == "relative" and not 0 < self.value < 1:
            raise ValueError(f"relative threshold must lie in (0, 1), got {self.value}")
        if self.kind == "absolute" and not self.value >= 0:
            raise ValueError(f"absolute threshold must be nonnegative, got {self.value}")

    def resolve(self, energy: np.ndarray) -> float:
        if self.kind == "absolute":
            return float(self.value)
        return float(self.value * energy.max()) if energy.size else 0.0


@dataclass(frozen=True)
class EdgePipelineConfig:
    levels: int = 1
    lifting: LiftingConfig = field(default_factory=LiftingConfig)
    presmooth_sigma: float = 0.0
    threshold: Threshold = field(default_factory=Threshold)
    merge: MergePolicy = field(default_factory=MergePolicy)

    def __post_init__(self):
        if int(self.levels) != self.levels or self.levels < 1:
            raise ValueError(f"levels must be a positive integer, got {self.levels}")
        if self.presmooth_sigma < 0:
            raise ValueError("presmooth_sigma must be nonnegative (0 disables smoothing)")


@dataclass
class EdgeMap:
    mask: np.ndarray
    config: EdgePipelineConfig | None
    threshold: float

    def to_image(self) -> np.ndarray:
        return self.mask.astype(np.float64) * 255.0


def zero_coarse(decomp: Decomposition) -> Decomposition:
    out = decomp.copy()
    out.coarse = np.zeros_like(out.coarse)
    return out


def keep_levels(decomp: Decomposition, levels) -> Decomposition:
    """Zero every detail band whose level is not in ``levels``."""
    keep = set(levels)
    out = decomp.copy()
    for (level, k), d in out.details.items():
        if level not in keep:
            d[...] = 0.0
    return out


def signed_edges(image, cfg: EdgePipelineConfig | None = None) -> np.ndarray:
    """Reconstruction from detail bands only (before taking the magnitude)."""
    cfg = cfg or EdgePipelineConfig()
    x = np.asarray(image, dtype=np.float64)
    if cfg.presmooth_sigma > 0:
        x = gaussian_smooth(x, cfg.presmooth_sigma, cfg.lifting.boundary)
    decomp = dlwt_forward(x, cfg.levels, cfg.lifting)
    return dlwt_inverse(zero_coarse(decomp), cfg.merge)


def edge_energy(image, cfg: EdgePipelineConfig | None = None) -> np.ndarray:
    return np.abs(signed_edges(image, cfg))


def binarize(energy, threshold: Threshold | None = None, config: EdgePipelineConfig | None = None) -> EdgeMap:
    """Mark samples strictly above the threshold. A relative threshold on an
    all-zero energy gives an empty map."""
    energy = np.asarray(energy, dtype=np.float64)
    if np.any(energy < 0):
        raise ValueError("energy must be nonnegative")
    threshold = threshold or (config.threshold if config else Threshold())
    cut = threshold.resolve(energy)
    return EdgeMap((energy > cut).astype(np.uint8), config, cut)


def detect_edges(image, cfg: EdgePipelineConfig | None = None) -> EdgeMap:
    cfg = cfg or EdgePipelineConfig()
    return binarize(edge_energy(image, cfg), cfg.threshold, cfg)
