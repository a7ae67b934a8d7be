"""Grünwald-Letnikov fractional-derivative masks.

The mask of order ``v`` averages eight directional GL difference operators
(the four axes and four diagonals). Order 0 gives the identity, order 1 the
classic zero-sum 8-neighbour sharpening mask, and orders in between give
the fractional family. The high-boost configuration adds ``A - 1`` to the
centre weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import ConfigError
from .imgcore import as_plane

MAX_ORDER = 2.0
MAX_TRUNCATION = 16

# (dy, dx) unit steps for the eight compass directions
DIRECTIONS = (
    (0, 1), (0, -1), (1, 0), (-1, 0),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
)


class FilterMode(str, Enum):
    HPFC = "hpfc"
    HBFC = "hbfc"

    @classmethod
    def parse(cls, value) -> "FilterMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ConfigError(
                f"mode must be one of {[m.value for m in cls]}, got {value!r}"
            ) from None


@dataclass(frozen=True)
class GlCoefficients:
    order: float
    coeffs: np.ndarray

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class FractionalKernel:
    weights: np.ndarray
    mode: FilterMode
    order: float
    truncation: int
    boost: float = 1.0

    @property
    def size(self) -> int:
        return self.weights.shape[0]


def _check_order_truncation(v, K):
    if not np.isfinite(v) or not 0.0 <= v <= MAX_ORDER:
        raise ConfigError(f"fractional order must lie in [0, {MAX_ORDER:g}], got {v!r}")
    if int(K) != K or not 1 <= K <= MAX_TRUNCATION:
        raise ConfigError(f"truncation K must be an integer in [1, {MAX_TRUNCATION}], got {K!r}")


def gl_coefficients(v: float, K: int) -> GlCoefficients:
    """Coefficients c_k = (-1)^k binom(v, k) for k = 0..K via the product recurrence."""
    _check_order_truncation(v, K)
    K = int(K)
    c = np.empty(K + 1)
    c[0] = 1.0
    for k in range(1, K + 1):
        c[k] = c[k - 1] * (k - 1 - v) / k
    return GlCoefficients(float(v), c)


def build_kernel(v: float, K: int = 2, mode="hpfc", A: float = 1.0) -> FractionalKernel:
    mode = FilterMode.parse(mode)
    gl = gl_coefficients(v, K)
    K = gl.truncation
    if mode is FilterMode.HBFC and not (np.isfinite(A) and A >= 1.0):
        raise ConfigError(f"boost A must be >= 1, got {A!r}")

    mask = np.zeros((2 * K + 1, 2 * K + 1))
    for dy, dx in DIRECTIONS:
        for k in range(K + 1):
            mask[K + k * dy, K + k * dx] += gl.coeffs[k]
    mask /= 8.0
    boost = 1.0
    if mode is FilterMode.HBFC:
        boost = float(A)
        mask[K, K] += boost - 1.0
    mask.setflags(write=False)
    return FractionalKernel(mask, mode, gl.order, K, boost)


def convolve(p, k: FractionalKernel | np.ndarray, backend=None) -> np.ndarray:
    """Correlate ``p`` with the kernel mask, clamping coordinates at the borders."""
    weights = k.weights if isinstance(k, FractionalKernel) else np.asarray(k)
    return kernels.correlate2d(as_plane(p), weights, backend=backend)
