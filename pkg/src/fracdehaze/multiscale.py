"""Undecimated multiscale decomposition, detail enhancement and reconstruction.

``decompose`` produces a telescoping stack: each level blurs the previous
smooth plane with a Gaussian of doubled width, and the detail plane is the
difference between successive smooth planes. Summing the approximation and
all details gives back the source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import ConfigError
from .fracfilter import FractionalKernel, convolve
from .imgcore import as_plane


@dataclass(frozen=True)
class ScaleStack:
    approx: np.ndarray
    details: tuple[np.ndarray, ...]
    sigmas: tuple[float, ...]

    @property
    def levels(self) -> int:
        return len(self.details)


def gaussian_taps(sigma: float) -> np.ndarray:
    """Sampled, unit-sum Gaussian of radius ceil(3 sigma)."""
    if not sigma > 0:
        raise ConfigError(f"sigma must be positive, got {sigma!r}")
    r = int(math.ceil(3.0 * sigma))
    half = np.exp(-0.5 * (np.arange(r + 1) / sigma) ** 2)
    taps = np.concatenate([half[:0:-1], half])
    return taps / taps.sum()


def gaussian_blur(p, sigma: float, backend=None) -> np.ndarray:
    return kernels.separable_filter(as_plane(p), gaussian_taps(sigma), backend=backend)


def level_sigmas(levels: int, sigma0: float) -> tuple[float, ...]:
    if int(levels) != levels or levels < 1:
        raise ConfigError(f"levels must be an integer >= 1, got {levels!r}")
    if not (np.isfinite(sigma0) and sigma0 > 0):
        raise ConfigError(f"sigma0 must be positive, got {sigma0!r}")
    return tuple(float(sigma0) * 2.0 ** l for l in range(int(levels)))


def approximation(p, levels: int, sigma0: float, backend=None) -> np.ndarray:
    """The coarsest smooth plane of ``decompose`` without keeping the details."""
    s = as_plane(p)
    for sigma in level_sigmas(levels, sigma0):
        s = gaussian_blur(s, sigma, backend=backend)
    return s


def decompose(p, levels: int = 3, sigma0: float = 1.0, backend=None) -> ScaleStack:
    sigmas = level_sigmas(levels, sigma0)
    prev = as_plane(p)
    details = []
    for sigma in sigmas:
        cur = gaussian_blur(prev, sigma, backend=backend)
        details.append(prev - cur)
        prev = cur
    return ScaleStack(prev, tuple(details), sigmas)


def enhance_stack(s: ScaleStack, k: FractionalKernel, lam: float, backend=None) -> ScaleStack:
    """Add ``lam`` times the fractional response of each detail plane to itself."""
    if not (np.isfinite(lam) and lam >= 0):
        raise ConfigError(f"lambda must be >= 0, got {lam!r}")
    if lam == 0:
        return s
    details = tuple(d + lam * convolve(d, k, backend=backend) for d in s.details)
    return replace(s, details=details)


def check_approx_gain(g: float) -> float:
    if not (np.isfinite(g) and 0.0 < g <= 1.5):
        raise ConfigError(f"approximation gain must lie in (0, 1.5], got {g!r}")
    return float(g)


def reconstruct(s: ScaleStack, approx_gain: float = 1.0) -> np.ndarray:
    g = check_approx_gain(approx_gain)
    out = g * s.approx
    for d in s.details:
        out = out + d
    return out
