"""Deterministic synthetic hazy and underwater test scenes.

Scenes are rendered as a textured clear image ``J`` seen through a
scattering medium, ``I = J t + airlight (1 - t)`` with per-channel
transmission ``t = exp(-beta * depth)``. Underwater scenes attenuate red
much faster than blue/green, which gives the usual blue-green cast.
Outputs are quantized to 8 bits like a decoded image file.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .imageio import write_image
from .imgcore import dequantize, quantize_u8
from .multiscale import gaussian_blur

CORPUS_SIZE = (96, 128)

# name, kind, seed
SCENES = (
    ("haze_city", "haze", 11),
    ("haze_mountain", "haze", 12),
    ("haze_canyon", "haze", 13),
    ("haze_train", "haze", 14),
    ("haze_pumpkins", "haze", 15),
    ("uw_fish", "underwater", 21),
    ("uw_reef", "underwater", 22),
    ("uw_rocks", "underwater", 23),
    ("uw_diver", "underwater", 24),
    ("uw_wreck", "underwater", 25),
)


def _smooth_noise(rng, shape, sigma):
    n = gaussian_blur(rng.standard_normal(shape), sigma)
    n -= n.min()
    peak = n.max()
    return n / peak if peak > 0 else n


def _clear_scene(rng, shape):
    h, w = shape
    yy, xx = np.mgrid[0:h, 0:w] / np.array([h, w]).reshape(2, 1, 1)
    img = np.empty((h, w, 3))
    base = rng.uniform(0.15, 0.85, size=3)
    for c in range(3):
        img[..., c] = 0.6 * base[c] + 0.4 * _smooth_noise(rng, shape, 6.0)
    # rectangles and discs with sharp edges
    for _ in range(int(rng.integers(6, 11))):
        colour = rng.uniform(0.0, 1.0, size=3)
        cy, cx = rng.uniform(0, 1, size=2)
        ry, rx = rng.uniform(0.05, 0.2, size=2)
        if rng.random() < 0.5:
            mask = (np.abs(yy - cy) < ry) & (np.abs(xx - cx) < rx)
        else:
            mask = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 < 1.0
        img[mask] = 0.3 * img[mask] + 0.7 * colour
    # fine texture
    tex = _smooth_noise(rng, shape, 0.8) - 0.5
    img += 0.25 * tex[..., None]
    return np.clip(img, 0.0, 1.0), yy


def render_scene(kind: str, seed: int, shape=CORPUS_SIZE) -> np.ndarray:
    rng = np.random.default_rng(seed)
    clear, yy = _clear_scene(rng, shape)
    depth = 0.35 + 0.65 * (1.0 - yy) * (0.7 + 0.3 * _smooth_noise(rng, shape, 10.0))
    if kind == "haze":
        beta = np.full(3, rng.uniform(1.2, 2.0))
        air = np.full(3, rng.uniform(0.75, 0.95)) + rng.uniform(-0.03, 0.03, size=3)
    elif kind == "underwater":
        beta = np.array([rng.uniform(2.5, 3.5), rng.uniform(0.8, 1.2), rng.uniform(0.6, 1.0)])
        air = np.array([rng.uniform(0.05, 0.15), rng.uniform(0.45, 0.65), rng.uniform(0.55, 0.75)])
    else:
        raise ValueError(f"unknown scene kind {kind!r}")
    t = np.exp(-beta[None, None, :] * depth[..., None])
    hazy = clear * t + air[None, None, :] * (1.0 - t)
    return dequantize(quantize_u8(hazy))


def load_corpus(shape=CORPUS_SIZE) -> dict[str, np.ndarray]:
    return {name: render_scene(kind, seed, shape) for name, kind, seed in SCENES}


def write_corpus(directory, shape=CORPUS_SIZE, suffix=".ppm") -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, img in load_corpus(shape).items():
        path = directory / f"{name}{suffix}"
        write_image(path, img)
        paths.append(path)
    return paths
