import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from fracdehaze.imgcore import (
    as_plane,
    as_rgb,
    dequantize,
    histogram256,
    luminance,
    moments,
    quantize_u8,
    rgb_to_lab,
)

finite = st.floats(-2.0, 3.0, allow_nan=False, allow_infinity=False)


def test_luminance_white_and_red():
    assert np.array_equal(luminance(np.ones((3, 2, 3))), np.ones((3, 2)))
    red = np.zeros((2, 2, 3))
    red[..., 0] = 1.0
    assert np.all(luminance(red) == 0.299)


def test_luminance_matches_loop(rng):
    img = rng.random((4, 4, 3))
    got = luminance(img)
    for y in range(4):
        for x in range(4):
            r, g, b = img[y, x]
            assert got[y, x] == pytest.approx(0.299 * r + 0.587 * g + 0.114 * b, abs=1e-12)


@pytest.mark.parametrize("x, q", [(-0.2, 0), (1.5, 255), (0.5, 128), (1.0, 255), (0.0, 0)])
def test_quantize_examples(x, q):
    assert quantize_u8(np.array([[x]]))[0, 0] == q


@given(arrays(np.float64, (5, 7), elements=finite))
def test_quantize_idempotent(p):
    q = quantize_u8(p)
    assert q.min() >= 0 and q.max() <= 255
    assert np.array_equal(quantize_u8(dequantize(q)), q)


def test_histogram_examples():
    h = histogram256(np.full((3, 3), 128.0))
    assert h.bins[128] == 9 and h.bins.sum() == 9 and h.total == 9
    h = histogram256(np.array([[0, 255]], dtype=np.uint8))
    assert h.bins[0] == 1 and h.bins[255] == 1 and h.bins.sum() == 2


def test_histogram_conserves_mass(rng):
    p = rng.integers(0, 256, size=(17, 9))
    h = histogram256(p)
    assert h.bins.sum() == h.total == p.size


@pytest.mark.parametrize("bad", [np.array([[0.5, 1.0]]), np.array([[-1.0]]), np.array([[256]])])
def test_histogram_rejects_misuse(bad):
    with pytest.raises(ValueError):
        histogram256(bad)


def test_moments_examples(rng):
    assert moments(np.full((3, 4), 0.7)) == (pytest.approx(0.7), 0.0)
    assert moments(np.array([[0.0, 1.0]])) == (0.5, 0.5)
    p = rng.random((6, 5))
    m, s = oracles.pop_mean_std(p.ravel().tolist())
    got = moments(p)
    assert got[0] == pytest.approx(m, abs=1e-12)
    assert got[1] == pytest.approx(s, abs=1e-12)


# zero or at least 1e-300 in magnitude: below that a non-zero std can round to 0.0 in float64
representable = st.one_of(st.just(0.0), finite.filter(lambda x: abs(x) >= 1e-300))


@given(arrays(np.float64, (4, 4), elements=representable))
def test_moments_std_nonnegative_zero_iff_constant(p):
    _, s = moments(p)
    assert s >= 0
    if np.all(p == p.flat[0]):
        assert s == 0
    else:
        assert s > 0


def test_lab_white_black_grey():
    L, a, b = rgb_to_lab(np.ones((1, 1, 3)))
    assert L[0, 0] == pytest.approx(100.0, abs=1e-9)
    assert abs(a[0, 0]) < 1e-6 and abs(b[0, 0]) < 1e-6
    L, a, b = rgb_to_lab(np.zeros((1, 1, 3)))
    assert np.allclose([L[0, 0], a[0, 0], b[0, 0]], 0.0, atol=1e-12)
    L, a, b = rgb_to_lab(np.full((1, 1, 3), 0.5))
    lin = ((0.5 + 0.055) / 1.055) ** 2.4
    assert L[0, 0] == pytest.approx(116.0 * lin ** (1.0 / 3.0) - 16.0, abs=1e-6)
    assert abs(a[0, 0]) < 1e-6 and abs(b[0, 0]) < 1e-6


@settings(max_examples=50)
@given(st.floats(0.0, 1.0))
def test_lab_grey_has_no_chroma(v):
    _, a, b = rgb_to_lab(np.full((1, 1, 3), v))
    assert abs(a[0, 0]) < 1e-6 and abs(b[0, 0]) < 1e-6


def test_lab_matches_pixel_oracle(rng):
    img = rng.random((3, 3, 3))
    L, a, b = rgb_to_lab(img)
    for y in range(3):
        for x in range(3):
            exp = oracles.lab_pixel(*img[y, x])
            assert (L[y, x], a[y, x], b[y, x]) == pytest.approx(exp, abs=1e-9)


def test_validators_reject_bad_input():
    with pytest.raises(ValueError):
        as_plane(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        as_plane(np.array([[np.nan]]))
    with pytest.raises(ValueError):
        as_rgb(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        as_rgb(np.full((1, 1, 3), np.inf))
