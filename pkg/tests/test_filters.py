import numpy as np
import pytest

from dlwt.boundary import resolve_index
from dlwt.directions import direction_vectors
from dlwt.filters import (
    Filter2D,
    bspline_filter_1d,
    bspline_filter_2d,
    interpolating_prediction,
    update_from_prediction,
)

DIRS = direction_vectors()


def bspline_idft(r, n=64):
    """Taps of exp(-i eps w/2) cos(w/2)^r by inverse DFT of its samples."""
    eps = r % 2
    w = 2 * np.pi * np.arange(n) / n
    spectrum = np.exp(-1j * eps * w / 2) * np.cos(w / 2) ** r
    h = np.fft.ifft(spectrum)
    assert np.abs(h.imag).max() < 1e-12
    taps = {}
    for i, v in enumerate(h.real):
        if abs(v) > 1e-12:
            taps[i if i < n // 2 else i - n] = v
    return taps


def correlate_brute(a, taps, mode):
    h, w = a.shape
    out = np.zeros_like(a)
    for y in range(h):
        for x in range(w):
            out[y, x] = sum(v * a[resolve_index(y + dy, h, mode), resolve_index(x + dx, w, mode)]
                            for (dx, dy), v in taps.items())
    return out


# -- Filter2D ------------------------------------------------------------------

def test_filter_drops_zero_taps_and_validates():
    f = Filter2D({(0, 0): 1.0, (1, 0): 0.0})
    assert len(f) == 1
    assert f[(1, 0)] == 0.0
    with pytest.raises(ValueError):
        Filter2D({(0, 0): np.inf})


def test_filter_reflect_scale_total():
    f = Filter2D({(1, 2): 3.0, (0, -1): -1.0})
    assert f.reflected().taps == {(-1, -2): 3.0, (0, 1): -1.0}
    assert f.scaled(0.5).total() == pytest.approx(1.0)
    assert f.radius() == 2


@pytest.mark.parametrize("mode", ["periodic", "symmetric"])
def test_apply_matches_brute_force(rng, mode):
    a = rng.normal(size=(6, 10))
    f = Filter2D({(0, 0): 0.3, (3, 1): -0.5, (-2, 1): 1.25})
    np.testing.assert_allclose(f.apply(a, mode), correlate_brute(a, f.taps, mode), atol=1e-14)


# -- prediction / update -----------------------------------------------------------

def test_prediction_m2_k4():
    assert interpolating_prediction(2, 4).taps == {(0, 0): 0.5, (1, 1): 0.5}


def test_prediction_m4_k1():
    assert interpolating_prediction(4, 1).taps == pytest.approx(
        {(-1, 0): -1 / 16, (0, 0): 9 / 16, (1, 0): 9 / 16, (2, 0): -1 / 16})


@pytest.mark.parametrize("k", range(1, 13))
def test_prediction_m0_identity(k):
    assert interpolating_prediction(0, k).taps == {(0, 0): 1.0}


@pytest.mark.parametrize("order", [0, 2, 4])
@pytest.mark.parametrize("k", range(1, 13))
def test_prediction_along_direction(order, k):
    f = interpolating_prediction(order, k)
    sx, sy = DIRS.vectors[k]
    assert f.total() == pytest.approx(1.0)
    for (x, y), _ in f:
        assert x * sy - y * sx == 0


@pytest.mark.parametrize("order, degree", [(2, 1), (4, 3)])
@pytest.mark.parametrize("k", [1, 2, 6, 9, 12])
def test_prediction_reproduces_polynomials_at_midpoint(order, degree, k):
    sx, sy = DIRS.vectors[k]
    f = interpolating_prediction(order, k)

    def poly(x, y):
        return (0.3 * x - 0.7 * y + 1.1) ** degree + (x * y if degree > 1 else 0.0)

    est = sum(w * poly(x, y) for (x, y), w in f)
    assert est == pytest.approx(poly(sx / 2, sy / 2), abs=1e-12)


def test_update_m0():
    assert update_from_prediction(0, 5).taps == {(0, 0): 0.25}


def test_update_m2_k1():
    assert update_from_prediction(2, 1).taps == {(0, 0): 1 / 8, (-1, 0): 1 / 8}


def test_update_m4_k7():
    assert update_from_prediction(4, 7).taps == pytest.approx(
        {(0, 1): -1 / 64, (0, 0): 9 / 64, (0, -1): 9 / 64, (0, -2): -1 / 64})


@pytest.mark.parametrize("order", [1, 3, 6, -2])
def test_unsupported_orders(order):
    with pytest.raises(ValueError, match="unsupported order"):
        interpolating_prediction(order, 1)
    with pytest.raises(ValueError, match="unsupported order"):
        update_from_prediction(order, 1)


@pytest.mark.parametrize("k", [0, 13])
def test_bad_direction(k):
    with pytest.raises(ValueError, match="direction"):
        interpolating_prediction(2, k)


# -- B-spline ---------------------------------------------------------------------

def test_bspline_r2():
    assert bspline_filter_1d(2) == {-1: 0.25, 0: 0.5, 1: 0.25}


def test_bspline_r1():
    assert bspline_filter_1d(1) == {0: 0.5, 1: 0.5}


@pytest.mark.parametrize("r", range(1, 9))
def test_bspline_matches_inverse_dft(r):
    taps = bspline_filter_1d(r)
    oracle = bspline_idft(r)
    assert set(taps) == set(oracle)
    for n, v in oracle.items():
        assert taps[n] == pytest.approx(v, abs=1e-13)
    assert sum(taps.values()) == pytest.approx(1.0)


def test_bspline_2d_r2():
    f = bspline_filter_2d(2)
    grid = np.array([[f[(x, y)] for x in (-1, 0, 1)] for y in (-1, 0, 1)])
    np.testing.assert_allclose(grid, np.outer([1, 2, 1], [1, 2, 1]) / 16)


def test_bspline_2d_r1():
    assert bspline_filter_2d(1).taps == {(0, 0): 0.25, (1, 0): 0.25, (0, 1): 0.25, (1, 1): 0.25}


@pytest.mark.parametrize("r", [0, -1, 1.5])
def test_bspline_rejects_bad_order(r):
    with pytest.raises(ValueError):
        bspline_filter_1d(r)
