import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlwt.container import MAGIC, ContainerError, decode, encode, read_container, write_container
from dlwt.transform import LiftingConfig, coefficient_count, dlwt_forward, dlwt_inverse


def header_of(blob):
    end = blob.index(b"\n", len(MAGIC))
    return json.loads(blob[len(MAGIC):end]), blob[end + 1:]


@pytest.fixture
def decomp(rng):
    return dlwt_forward(rng.normal(size=(16, 24)) * 30, 2, LiftingConfig(4, 2, 1.5, "symmetric"))


def test_header_keys_and_payload(decomp):
    header, payload = header_of(encode(decomp, "first"))
    assert header == {
        "width": 24, "height": 16, "J": 2, "L": 4, "N": 12, "K": 1.5, "M": 4, "M_tilde": 2,
        "stages": 1, "boundary": "symmetric", "merge_default": "first",
        "level_dims": [[6, 4], [12, 8]],
    }
    assert len(payload) == 8 * coefficient_count(24, 16, 2)


def test_payload_order(decomp):
    _, payload = header_of(encode(decomp))
    values = np.frombuffer(payload, dtype="<f8")
    n0 = decomp.coarse.size
    np.testing.assert_array_equal(values[:n0], decomp.coarse.ravel())
    coarsest = decomp.top_level - decomp.levels
    np.testing.assert_array_equal(values[n0:n0 + 24], decomp.details[(coarsest, 1)].ravel())
    np.testing.assert_array_equal(values[-96:], decomp.details[(decomp.top_level - 1, 12)].ravel())


def test_bit_exact_round_trip(decomp):
    blob = encode(decomp, "k=3")
    back, merge = decode(blob)
    assert str(merge) == "k=3"
    assert encode(back, merge) == blob
    np.testing.assert_array_equal(back.coarse, decomp.coarse)
    for key, d in decomp.details.items():
        np.testing.assert_array_equal(back.details[key], d)
    assert back.config == decomp.config


def test_file_helpers(tmp_path, decomp):
    path = tmp_path / "x.dlwc"
    n = write_container(path, decomp)
    assert path.stat().st_size == n
    back, _ = read_container(path)
    np.testing.assert_allclose(dlwt_inverse(back), dlwt_inverse(decomp))


def test_512_payload_size():
    dec = dlwt_forward(np.zeros((512, 512)), 1)
    _, payload = header_of(encode(dec))
    assert len(payload) == 6_815_744


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31), st.sampled_from(["periodic", "symmetric"]))
def test_reencode_property(levels, seed, mode):
    x = np.random.default_rng(seed).normal(size=(8 * 2**levels, 4 * 2**levels))
    blob = encode(dlwt_forward(x, levels, LiftingConfig(boundary=mode)))
    assert encode(*decode(blob)) == blob


def corrupt(blob, **changes):
    header, payload = header_of(blob)
    header.update(changes)
    return MAGIC + json.dumps(header).encode() + b"\n" + payload


@pytest.mark.parametrize("mutate, match", [
    (lambda b: b"DLWC2\n" + b[6:], "magic"),
    (lambda b: b[:-8], "payload"),
    (lambda b: b + b"\0" * 8, "payload"),
    (lambda b: b[:20], "truncated|header"),
    (lambda b: corrupt(b, N=8), "direction count"),
    (lambda b: corrupt(b, J=3), "level_dims"),
    (lambda b: corrupt(b, level_dims=[[6, 4], [12, 9]]), "inconsistent"),
    (lambda b: corrupt(b, M=3), "header"),
    (lambda b: corrupt(b, boundary="zero"), "header"),
    (lambda b: b[:6] + b"{not json\n" + b[6:], "header"),
])
def test_corrupt_containers(decomp, mutate, match):
    with pytest.raises(ContainerError, match=match):
        decode(mutate(encode(decomp)))
