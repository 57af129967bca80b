"""Update-first analysis, equivalent low/high-pass filters, frequency responses.

A single analysis level is linear and commutes with even shifts, so it can be
written as ``coarse[t] = sum_v h[v - 2t] c[v]`` and
``d_k[t] = sum_v g_k[v - 2t] c[v]``. The filters ``h`` and ``g_k`` are found
here by feeding unit impulses through the lifting code on a periodic grid.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryMode, sample_lattice
from .directions import DirectionSet, direction_vectors
from .filters import Filter2D, bspline_filter_2d, interpolating_prediction, _check_order
from .transform import LiftingConfig, _analyze

FORMS = ("predict-first", "update-first")


def update_first_forward(image, r: int = 2, order: int = 2, dirs: DirectionSet | None = None,
                         boundary: BoundaryMode | str = BoundaryMode.PERIODIC):
    """One analysis level in update-first order.

    The coarse grid is the B-spline low-pass sampled on the even lattice,
    ``coarse[t] = sum_l u[l] c[2t - l]``; each detail is the odd component
    minus the interpolating prediction from that coarse grid. There is no
    matching inverse.

    Returns
    -------
    coarse : ndarray
    details : dict[int, ndarray]
        Keyed by direction index 1..12.
    """
    dirs = dirs or direction_vectors()
    _check_order(order)
    c = np.asarray(image, dtype=np.float64)
    if c.ndim < 2:
        raise ValueError("expected a 2-D grid")
    h, w = c.shape[-2:]
    if h % 2 or w % 2:
        raise ValueError(f"grid dimensions must be even, got {w}x{h}")
    smooth = bspline_filter_2d(r).reflected().apply(c, boundary)
    coarse = sample_lattice(smooth, 0, 0, boundary)
    details = {}
    for k in dirs.indices:
        odd = sample_lattice(c, *dirs.vectors[k], boundary)
        details[k] = odd - interpolating_prediction(order, k, dirs).apply(coarse, boundary)
    return coarse, details


@dataclass
class EquivalentFilters:
    """Impulse responses on a ``size x size`` grid; offset ``(0, 0)`` sits at
    index ``[origin, origin]``. Arrays are indexed ``[y, x]``."""

    lowpass: np.ndarray
    highpass: dict[int, np.ndarray]
    origin: int

    @staticmethod
    def _taps(a: np.ndarray, origin: int, tol: float) -> Filter2D:
        ys, xs = np.nonzero(np.abs(a) > tol)
        return Filter2D({(int(x) - origin, int(y) - origin): a[y, x] for y, x in zip(ys, xs)})

    def lowpass_filter(self, tol: float = 1e-14) -> Filter2D:
        return self._taps(self.lowpass, self.origin, tol)

    def highpass_filter(self, k: int, tol: float = 1e-14) -> Filter2D:
        return self._taps(self.highpass[k], self.origin, tol)


def _support(form: str, cfg: LiftingConfig, r: int, dirs: DirectionSet):
    """Fine-grid offsets that can influence the outputs at ``t = 0``."""
    pred = {k: [o for o, _ in interpolating_prediction(cfg.order, k, dirs)] for k in dirs.indices}
    if form == "update-first":
        low = {(-x, -y) for (x, y), _ in bspline_filter_2d(r)}
        high = {k: {dirs.vectors[k]} | {(2 * lx + cx, 2 * ly + cy) for lx, ly in pred[k] for cx, cy in low}
                for k in dirs.indices}
        return low, high
    upd = {k: [o for o, _ in cfg.updaters(dirs)[k]] for k in dirs.indices}
    low = {(0, 0)}
    high = {k: {dirs.vectors[k]} for k in dirs.indices}
    for _ in range(cfg.stages):
        high = {k: high[k] | {(2 * lx + cx, 2 * ly + cy) for lx, ly in pred[k] for cx, cy in low}
                for k in dirs.indices}
        low = low | {(2 * mx + dx, 2 * my + dy)
                     for k in dirs.indices for mx, my in upd[k] for dx, dy in high[k]}
    return low, high


def _extent(form: str, cfg: LiftingConfig, r: int, dirs: DirectionSet) -> tuple[int, int]:
    low, high = _support(form, cfg, r, dirs)
    offsets = low.union(*high.values())
    return min(min(x, y) for x, y in offsets), max(max(x, y) for x, y in offsets)


def required_probe_size(form: str = "predict-first", cfg: LiftingConfig | None = None, r: int = 2,
                        dirs: DirectionSet | None = None) -> int:
    """Smallest even probing size whose centred window holds every filter tap."""
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")
    lo, hi = _extent(form, cfg or LiftingConfig(), r, dirs or direction_vectors())
    return 2 * max(-lo, hi + 1, 1)


def equivalent_filters(form: str = "predict-first", cfg: LiftingConfig | None = None, r: int = 2,
                       size: int = 32, dirs: DirectionSet | None = None) -> EquivalentFilters:
    """Low-pass ``h`` and high-pass ``g_k`` of one analysis level, by impulse probing.

    Parameters
    ----------
    form : {"predict-first", "update-first"}
    cfg : LiftingConfig, optional
        Orders and scale. The update-first form only uses ``cfg.order``
        (its low-pass is the B-spline of order ``r``). The boundary mode is
        irrelevant: probing always runs on a periodic grid.
    r : int
        B-spline order for the update-first form.
    size : int
        Even probing grid size; must hold the filter support around the centre.
    """
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")
    cfg = cfg or LiftingConfig()
    dirs = dirs or direction_vectors()
    if size < 2 or size % 2:
        raise ValueError("probing size must be an even integer >= 2")
    origin = size // 2
    lo, hi = _extent(form, cfg, r, dirs)
    if lo < -origin or hi > size - origin - 1:
        need = 2 * max(-lo, hi + 1)
        raise ValueError(f"probing size {size} cannot hold the filter support [{lo}, {hi}]; use size >= {need}")

    impulses = np.zeros((size * size, size, size))
    vy, vx = np.divmod(np.arange(size * size), size)
    impulses[np.arange(size * size), vy, vx] = 1.0
    if form == "update-first":
        coarse, details = update_first_forward(impulses, r, cfg.order, dirs, BoundaryMode.PERIODIC)
    else:
        periodic = LiftingConfig(cfg.order, cfg.update_order, cfg.scale, BoundaryMode.PERIODIC, cfg.stages)
        coarse, details = _analyze(impulses, periodic, dirs)

    def response(out: np.ndarray) -> np.ndarray:
        # impulse at v gives out[0] = filt[v]; re-centre so offset 0 lands at [origin, origin]
        a = out[:, 0, 0].reshape(size, size)
        return np.roll(a, (origin, origin), axis=(0, 1))

    return EquivalentFilters(response(coarse), {k: response(d) for k, d in details.items()}, origin)


@dataclass
class FrequencyResponse:
    """``values[iy, ix]`` is the transfer function at ``(omega[ix], omega[iy])``."""

    size: int
    omega: np.ndarray
    values: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


def frequency_response(filt: Filter2D, size: int = 64) -> FrequencyResponse:
    """Sample ``G(w) = sum_t g[t] exp(-i w.t)`` on a uniform ``size x size`` grid over ``[-pi, pi)^2``."""
    if size < 16:
        raise ValueError(f"frequency grid size must be >= 16, got {size}")
    if not isinstance(filt, Filter2D):
        filt = Filter2D(filt)
    omega = -np.pi + 2 * np.pi * np.arange(size) / size
    wx, wy = omega[None, :], omega[:, None]
    values = np.zeros((size, size), dtype=np.complex128)
    for (x, y), w in filt:
        values += w * np.exp(-1j * (wx * x + wy * y))
    return FrequencyResponse(size, omega, values)


def dominant_orientation(resp: FrequencyResponse) -> float:
    """Angle in degrees, in ``[0, 180)``, of the frequency with largest magnitude
    (frequencies ``w`` and ``-w`` are the same orientation for a real filter)."""
    mag = resp.magnitude.copy()
    wx, wy = np.meshgrid(resp.omega, resp.omega)
    half = (wy > 0) | ((wy == 0) & (wx > 0))
    mag[~half] = -np.inf
    iy, ix = np.unravel_index(np.argmax(mag), mag.shape)
    return float(np.degrees(np.arctan2(wy[iy, ix], wx[iy, ix])) % 180.0)
