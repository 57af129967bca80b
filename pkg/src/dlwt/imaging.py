"""Grayscale image I/O, Gaussian smoothing and synthetic test images.

Images are float64 arrays of shape ``(height, width)`` holding values on the
8-bit scale ``[0, 255]``.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

from .boundary import BoundaryMode

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class ImageFormatError(ValueError):
    """Raised for malformed or unsupported image files."""


@dataclass
class ImageBuffer:
    pixels: np.ndarray
    bit_depth: int = 8
    source: str | None = None

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


_PGM_HEADER = re.compile(rb"\AP5(?:\s+|#[^\n]*\n)+?"
                         rb"(\d+)(?:\s+|#[^\n]*\n)+?(\d+)(?:\s+|#[^\n]*\n)+?(\d+)\s")


def _read_pgm(data: bytes, path) -> np.ndarray:
    m = _PGM_HEADER.match(data)
    if m is None:
        raise ImageFormatError(f"{path}: malformed PGM header (only binary P5 is supported)")
    width, height, maxval = (int(g) for g in m.groups())
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: invalid PGM dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"{path}: unsupported PGM maxval {maxval} (only 8-bit, maxval 255)")
    body = data[m.end():]
    if len(body) < width * height:
        raise ImageFormatError(f"{path}: truncated PGM payload ({len(body)} of {width * height} bytes)")
    return np.frombuffer(body, dtype=np.uint8, count=width * height).reshape(height, width).astype(np.float64)


def _read_png(data: bytes, path) -> np.ndarray:
    from PIL import Image

    bit_depth = data[24] if len(data) > 24 and data[12:16] == b"IHDR" else None
    if bit_depth is None:
        raise ImageFormatError(f"{path}: malformed PNG header")
    if bit_depth > 8:
        raise ImageFormatError(f"{path}: unsupported PNG bit depth {bit_depth}; only 8-bit images are supported")
    try:
        img = Image.open(path)
        img.load()
    except OSError as exc:
        raise ImageFormatError(f"{path}: cannot decode PNG ({exc})") from exc
    if img.mode in ("L", "LA", "1"):
        return np.asarray(img.convert("L"), dtype=np.float64)
    rgb = np.asarray(img.convert("RGB"), dtype=np.float64)
    return rgb @ np.asarray(LUMA_WEIGHTS)


def load_image(path: str | os.PathLike) -> ImageBuffer:
    """Read a binary PGM (P5, maxval 255) or an 8-bit PNG.

    RGB(A) PNGs are reduced to luma with weights 0.299, 0.587, 0.114.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such image file: {path}")
    data = path.read_bytes()
    if data[:2] == b"P5":
        pixels = _read_pgm(data, path)
    elif data[:8] == b"\x89PNG\r\n\x1a\n":
        pixels = _read_png(data, path)
    else:
        raise ImageFormatError(f"{path}: not a binary PGM (P5) or PNG file")
    return ImageBuffer(pixels, 8, str(path))


def to_uint8(pixels) -> np.ndarray:
    """Round to nearest and clip to ``[0, 255]``."""
    return np.clip(np.rint(np.asarray(pixels, dtype=np.float64)), 0, 255).astype(np.uint8)


def save_image(image, path: str | os.PathLike) -> None:
    """Write 8-bit grayscale; the format follows the suffix (``.png``, else PGM)."""
    pixels = image.pixels if isinstance(image, ImageBuffer) else image
    data = to_uint8(pixels)
    if data.ndim != 2:
        raise ValueError("only single-channel images can be saved")
    path = Path(path)
    if path.suffix.lower() == ".png":
        from PIL import Image

        Image.fromarray(data, mode="L").save(path, format="PNG")
    else:
        h, w = data.shape
        path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + data.tobytes())


def normalize_to_8bit(a) -> tuple[np.ndarray, dict]:
    """Affine map of ``[min, max]`` onto ``[0, 255]``; returns the image and the
    map parameters (a constant band maps to 0)."""
    a = np.asarray(a, dtype=np.float64)
    lo, hi = float(a.min()), float(a.max())
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    return (a - lo) * scale, {"min": lo, "max": hi, "scale": scale}


def gaussian_kernel(sigma: float) -> np.ndarray:
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    radius = math.ceil(4 * sigma)
    n = np.arange(-radius, radius + 1)
    kernel = np.exp(-(n**2) / (2 * sigma**2))
    return kernel / kernel.sum()


def gaussian_smooth(image, sigma: float, boundary: BoundaryMode | str = BoundaryMode.PERIODIC) -> np.ndarray:
    """Separable Gaussian blur with kernel ``exp(-n^2 / 2 sigma^2)`` cut at ``ceil(4 sigma)``."""
    kernel = gaussian_kernel(sigma)
    mode = {BoundaryMode.PERIODIC: "wrap", BoundaryMode.SYMMETRIC: "mirror"}[BoundaryMode.parse(boundary)]
    out = np.asarray(image, dtype=np.float64)
    for axis in (0, 1):
        out = ndimage.correlate1d(out, kernel, axis=axis, mode=mode)
    return out


# -- synthetic images ------------------------------------------------------------

def _coords(size: int):
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    return x, y


def radial_circle(size: int = 256, period: float = 16.0) -> np.ndarray:
    """Concentric rings about the image centre, ``127.5 * (1 + cos(2 pi r / period))``."""
    x, y = _coords(size)
    c = (size - 1) / 2
    r = np.hypot(x - c, y - c)
    return 127.5 * (1.0 + np.cos(2 * np.pi * r / period))


def filled_circle(size: int = 256, radius: float | None = None, value: float = 255.0) -> np.ndarray:
    """Disc of ``value`` on a zero background, centred; radius defaults to ``size / 4``."""
    x, y = _coords(size)
    c = (size - 1) / 2
    radius = size / 4 if radius is None else radius
    return np.where(np.hypot(x - c, y - c) <= radius, value, 0.0)


def oriented_sinusoid(size: int, angle_deg: float, frequency: float) -> np.ndarray:
    """``sin(2 pi f (x cos a + y sin a) / size)``; ``frequency`` is in cycles per image width."""
    x, y = _coords(size)
    a = math.radians(angle_deg)
    return np.sin(2 * np.pi * frequency * (x * math.cos(a) + y * math.sin(a)) / size)


def plane(size: int, a: float, b: float, c: float) -> np.ndarray:
    x, y = _coords(size)
    return a * x + b * y + c


def polynomial(size: int, degree: int, seed: int = 0) -> np.ndarray:
    """Bivariate polynomial of total degree ``degree`` with fixed pseudo-random
    coefficients, evaluated in centred, unit-scaled coordinates."""
    rng = np.random.default_rng(seed)
    x, y = _coords(size)
    x, y = (x - size / 2) / size, (y - size / 2) / size
    out = np.zeros_like(x)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            out += rng.uniform(-1, 1) * x**i * y**j
    return out


GENERATORS = {
    "radial_circle": radial_circle,
    "filled_circle": filled_circle,
    "oriented_sinusoid": oriented_sinusoid,
    "plane": plane,
    "polynomial": polynomial,
}


def generate_test_image(kind: str, size: int, **params) -> np.ndarray:
    """Dispatch to one of the synthetic generators by name."""
    if kind not in GENERATORS:
        raise ValueError(f"unknown test image {kind!r}; expected one of {sorted(GENERATORS)}")
    if size < 16:
        raise ValueError(f"test image size must be >= 16, got {size}")
    return GENERATORS[kind](size, **params)
