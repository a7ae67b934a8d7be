"""Image containers, colour conversions, quantization and basic statistics.

Planes are 2-D ``float64`` arrays of shape ``(height, width)``; RGB images
are ``(height, width, 3)`` arrays. Samples are nominally in ``[0, 1]``
although intermediates may leave that range.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

LUMA_WEIGHTS = (0.299, 0.587, 0.114)

# sRGB primaries, D65. The reference white is taken as the row sums so that
# (1, 1, 1) maps to the white point exactly and greys carry no chroma.
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_WHITE = _RGB_TO_XYZ.sum(axis=1)
_LAB_EPS = (6.0 / 29.0) ** 3
_LAB_KAPPA = 1.0 / (3.0 * (6.0 / 29.0) ** 2)


class Histogram256(NamedTuple):
    bins: np.ndarray
    total: int


def as_plane(p) -> np.ndarray:
    """Validate and return ``p`` as a contiguous float64 plane."""
    p = np.ascontiguousarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("plane contains NaN or infinite samples")
    return p


def as_rgb(img) -> np.ndarray:
    """Validate and return ``img`` as a float64 ``(h, w, 3)`` array."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"expected an (h, w, 3) image, got shape {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains NaN or infinite samples")
    return img


def channels(img):
    img = as_rgb(img)
    return img[..., 0], img[..., 1], img[..., 2]


def luminance(img) -> np.ndarray:
    """0.299 R + 0.587 G + 0.114 B, written so that greys map to themselves exactly."""
    r, g, b = channels(img)
    wr, _, wb = LUMA_WEIGHTS
    return g + wr * (r - g) + wb * (b - g)


def quantize_u8(p) -> np.ndarray:
    """Clamp to [0, 1], scale to 0..255 and round half away from zero."""
    p = np.asarray(p, dtype=np.float64)
    # after clamping every value is >= 0, so floor(x + 0.5) rounds half away from zero
    return np.floor(np.clip(p, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def dequantize(q) -> np.ndarray:
    return np.asarray(q, dtype=np.float64) / 255.0


def histogram256(p) -> Histogram256:
    p = np.asarray(p)
    if p.size == 0:
        raise ValueError("cannot histogram an empty plane")
    if np.issubdtype(p.dtype, np.integer):
        vals = p.astype(np.int64)
    else:
        vals = np.asarray(p, dtype=np.float64)
        if not np.all(np.isfinite(vals)) or np.any(vals != np.round(vals)):
            raise ValueError("histogram256 requires integer-valued samples")
        vals = vals.astype(np.int64)
    if vals.min() < 0 or vals.max() > 255:
        raise ValueError("histogram256 requires samples in [0, 255]")
    bins = np.bincount(vals.ravel(), minlength=256).astype(np.int64)
    return Histogram256(bins, int(vals.size))


def moments(p) -> tuple[float, float]:
    """Mean and population standard deviation."""
    p = np.asarray(p, dtype=np.float64)
    if p.size == 0:
        raise ValueError("moments of an empty plane")
    # shifting by one sample makes constant planes come out exactly (c, 0)
    shift = p.flat[0]
    dev = p - shift
    m = dev.mean()
    centred = dev - m
    peak = np.max(np.abs(centred))
    if peak == 0:
        return float(shift + m), 0.0
    # power-of-two scaling is exact and keeps tiny deviations from underflowing when squared
    scale = np.ldexp(1.0, int(np.frexp(peak)[1]))
    std = float(scale * np.sqrt(np.mean((centred / scale) ** 2)))
    return float(shift + m), std


def srgb_to_linear(c):
    c = np.asarray(c, dtype=np.float64)
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _lab_f(t):
    return np.where(t > _LAB_EPS, np.cbrt(t), t * _LAB_KAPPA + 4.0 / 29.0)


def rgb_to_lab(img):
    """sRGB in [0, 1] -> CIELab (D65). Returns the planes ``(L, a, b)``."""
    lin = srgb_to_linear(np.clip(as_rgb(img), 0.0, 1.0))
    xyz = lin @ _RGB_TO_XYZ.T / _WHITE
    fx, fy, fz = (_lab_f(xyz[..., i]) for i in range(3))
    L = 116.0 * fy - 16.0
    a = 500.0 * (fx - fy)
    b = 200.0 * (fy - fz)
    return L, a, b
