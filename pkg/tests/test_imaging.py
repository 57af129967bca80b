import numpy as np
import pytest
from PIL import Image

from dlwt.boundary import resolve_index
from dlwt.imaging import (
    ImageFormatError,
    gaussian_kernel,
    gaussian_smooth,
    generate_test_image,
    load_image,
    normalize_to_8bit,
    save_image,
    to_uint8,
)


@pytest.fixture
def pixels(rng):
    return rng.integers(0, 256, size=(12, 20)).astype(np.float64)


@pytest.mark.parametrize("suffix", [".pgm", ".png"])
def test_save_load_round_trip(tmp_path, pixels, suffix):
    path = tmp_path / f"img{suffix}"
    save_image(pixels, path)
    img = load_image(path)
    np.testing.assert_array_equal(img.pixels, pixels)
    assert (img.width, img.height, img.bit_depth) == (20, 12, 8)


def test_pgm_layout(tmp_path):
    path = tmp_path / "a.pgm"
    save_image(np.array([[0.0, 255.0, 128.4]]), path)
    assert path.read_bytes() == b"P5\n3 1\n255\n\x00\xff\x80"


def test_pgm_two_by_two_bytes(tmp_path):
    path = tmp_path / "b.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([10, 20, 30, 40]))
    assert load_image(path).pixels.tolist() == [[10.0, 20.0], [30.0, 40.0]]


def test_pgm_load_save_byte_identical(tmp_path, rng):
    src = tmp_path / "src.pgm"
    src.write_bytes(b"P5\n7 3\n255\n" + rng.integers(0, 256, 21, dtype=np.uint8).tobytes())
    save_image(load_image(src), tmp_path / "dst.pgm")
    assert (tmp_path / "dst.pgm").read_bytes() == src.read_bytes()


def test_pgm_header_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# made by hand\n2 2\n# max\n255\n\x01\x02\x03\x04")
    np.testing.assert_array_equal(load_image(path).pixels, [[1, 2], [3, 4]])


@pytest.mark.parametrize("data, match", [
    (b"P5\n2 2\n65535\n" + bytes(8), "maxval"),
    (b"P5\n2 2\n255\n\x01\x02", "truncated"),
    (b"P2\n2 2\n255\n1 2 3 4\n", "not a binary PGM"),
    (b"P5\nxx\n", "malformed"),
    (b"GIF89a", "not a binary PGM"),
])
def test_bad_files(tmp_path, data, match):
    path = tmp_path / "bad.pgm"
    path.write_bytes(data)
    with pytest.raises(ImageFormatError, match=match):
        load_image(path)


def test_missing_file_names_path(tmp_path):
    path = tmp_path / "nope.pgm"
    with pytest.raises(FileNotFoundError, match="nope.pgm"):
        load_image(path)


def test_rgb_png_to_luma(tmp_path):
    rgb = np.zeros((2, 2, 3), dtype=np.uint8)
    rgb[0, 0] = (255, 0, 0)
    rgb[0, 1] = (0, 255, 0)
    rgb[1, 0] = (0, 0, 255)
    rgb[1, 1] = (10, 20, 30)
    path = tmp_path / "rgb.png"
    Image.fromarray(rgb, "RGB").save(path)
    got = load_image(path).pixels
    expected = rgb.astype(float) @ np.array([0.299, 0.587, 0.114])
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_sixteen_bit_png_rejected(tmp_path):
    path = tmp_path / "deep.png"
    Image.fromarray(np.full((4, 4), 40000, dtype=np.uint16)).save(path)
    with pytest.raises(ImageFormatError, match="bit depth 16"):
        load_image(path)


def test_to_uint8_rounds_and_clips():
    out = to_uint8([[-3.0, 0.49, 0.51, 254.6, 300.0]])
    assert out.tolist() == [[0, 0, 1, 255, 255]]
    assert out.dtype == np.uint8


def test_save_rejects_multichannel(tmp_path):
    with pytest.raises(ValueError):
        save_image(np.zeros((2, 2, 3)), tmp_path / "x.pgm")


def test_normalize():
    img, params = normalize_to_8bit(np.array([[-1.0, 0.0, 3.0]]))
    np.testing.assert_allclose(img, [[0.0, 63.75, 255.0]])
    assert params == {"min": -1.0, "max": 3.0, "scale": 63.75}
    flat, params = normalize_to_8bit(np.full((2, 2), 5.0))
    np.testing.assert_array_equal(flat, 0.0)
    assert params["scale"] == 0.0


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.3])
def test_gaussian_kernel(sigma):
    g = gaussian_kernel(sigma)
    radius = int(np.ceil(4 * sigma))
    assert g.size == 2 * radius + 1
    assert g.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(g, g[::-1])
    assert g[radius + 1] / g[radius] == pytest.approx(np.exp(-1 / (2 * sigma**2)))


def test_gaussian_kernel_rejects_nonpositive():
    with pytest.raises(ValueError):
        gaussian_kernel(0.0)


@pytest.mark.parametrize("mode", ["periodic", "symmetric"])
def test_gaussian_smooth_matches_direct_sum(rng, mode):
    a = rng.normal(size=(9, 11))
    sigma = 1.2
    g = gaussian_kernel(sigma)
    r = g.size // 2
    expected = np.zeros_like(a)
    for y in range(9):
        for x in range(11):
            expected[y, x] = sum(g[i + r] * g[j + r] * a[resolve_index(y + i, 9, mode), resolve_index(x + j, 11, mode)]
                                 for i in range(-r, r + 1) for j in range(-r, r + 1))
    np.testing.assert_allclose(gaussian_smooth(a, sigma, mode), expected, atol=1e-12)


def test_gaussian_impulse_center():
    a = np.zeros((21, 21))
    a[10, 10] = 1.0
    g = gaussian_kernel(1.0)
    assert gaussian_smooth(a, 1.0)[10, 10] == pytest.approx(g[g.size // 2] ** 2, abs=1e-15)


def test_gaussian_sum_preserved_periodic(rng):
    a = rng.uniform(0, 255, size=(24, 24))
    assert gaussian_smooth(a, 1.7).sum() == pytest.approx(a.sum(), rel=1e-9)


def test_gaussian_smooth_preserves_constant():
    np.testing.assert_allclose(gaussian_smooth(np.full((16, 16), 9.0), 2.0), 9.0)


def test_generators():
    circle = generate_test_image("filled_circle", 64)
    assert circle[32, 32] == 255 and circle[0, 0] == 0
    assert set(np.unique(circle)) == {0.0, 255.0}
    rings = generate_test_image("radial_circle", 32, period=8)
    assert rings.min() >= 0 and rings.max() <= 255
    wave = generate_test_image("oriented_sinusoid", 32, angle_deg=0, frequency=4)
    np.testing.assert_allclose(wave[0], wave[5])
    np.testing.assert_array_equal(generate_test_image("plane", 16, a=0, b=0, c=4.5), 4.5)
    p = generate_test_image("plane", 16, a=1, b=2, c=3)
    assert p[2, 1] == 1 + 4 + 3


def test_generator_guards():
    with pytest.raises(ValueError, match=">= 16"):
        generate_test_image("plane", 8, a=1, b=1, c=0)
    with pytest.raises(ValueError, match="unknown"):
        generate_test_image("lena", 64)
