"""No-reference image quality metrics.

Entropy, average gradient (AG), Hasler-Süsstrunk colourfulness and its
enhancement factor (CEF), global contrast factor (GCF), UIQM and UCIQE.

RGB inputs are float images in [0, 1]; they are quantized to 8 bits before
scoring, so an image decoded from an 8-bit file is scored on its file values.
Plane-level functions (``entropy``, ``avg_gradient``) take already-quantized
0..255 planes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ImageTooSmallError, MetricUndefinedError
from .imgcore import (
    LUMA_WEIGHTS,
    as_rgb,
    histogram256,
    luminance,
    quantize_u8,
    rgb_to_lab,
)

BLOCK = 8

UIQM_WEIGHTS = (0.0282, 0.2953, 3.5753)
UICM_WEIGHTS = (-0.0268, 0.1586)
UICM_TRIM = (0.1, 0.1)
UCIQE_WEIGHTS = (0.4680, 0.2745, 0.2576)
UCIQE_TAIL = 0.01
UCIQE_EPS = 1e-6
GCF_LEVELS = 9
GCF_GAMMA = 2.2

_SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])


@dataclass(frozen=True)
class MetricReport:
    """Metric values for one image; ``None`` marks a metric undefined for it."""

    entropy: float
    avg_gradient: float | None
    colourfulness: float
    gcf: float | None
    uiqm: float | None
    uciqe: float
    cef: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _u8_rgb(img) -> np.ndarray:
    """Quantize an RGB image to 0..255 float samples."""
    return quantize_u8(as_rgb(img)).astype(np.float64)


def _u8_luma(img) -> np.ndarray:
    return quantize_u8(luminance(img))


# --- plane metrics -----------------------------------------------------------

def entropy(p) -> float:
    """Shannon entropy in bits of the 256-bin histogram of a quantized plane."""
    bins, total = histogram256(p)
    q = bins[bins > 0] / total
    return float(-np.sum(q * np.log2(q))) + 0.0


def avg_gradient(p) -> float:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] < 2 or p.shape[1] < 2:
        raise ImageTooSmallError(f"avg_gradient needs at least a 2x2 plane, got {p.shape}")
    gx = p[:-1, 1:] - p[:-1, :-1]
    gy = p[1:, :-1] - p[:-1, :-1]
    return float(np.mean(np.sqrt((gx * gx + gy * gy) / 2.0)))


# --- colour metrics ----------------------------------------------------------

def _opponents(rgb255):
    r, g, b = rgb255[..., 0], rgb255[..., 1], rgb255[..., 2]
    return r - g, 0.5 * (r + g) - b


def colourfulness(img) -> float:
    rg, yb = _opponents(_u8_rgb(img))
    sigma = math.sqrt(rg.var() + yb.var())
    mu = math.sqrt(rg.mean() ** 2 + yb.mean() ** 2)
    return sigma + 0.3 * mu


def cef(enhanced, original) -> float:
    """Colourfulness enhancement factor, C(enhanced) / C(original)."""
    c0 = colourfulness(original)
    if c0 == 0:
        raise MetricUndefinedError("CEF undefined: original image has zero colourfulness")
    return colourfulness(enhanced) / c0


# --- global contrast factor --------------------------------------------------

def gcf_weight(i: int) -> float:
    x = i / GCF_LEVELS
    return (-0.406385 * x + 0.334573) * x + 0.0877526


def _halve(lin):
    """2x2 block average; trailing odd rows/columns average what is available."""
    h, w = lin.shape
    hp, wp = h + (h & 1), w + (w & 1)
    padded = np.zeros((hp, wp))
    counts = np.zeros((hp, wp))
    padded[:h, :w] = lin
    counts[:h, :w] = 1.0
    sums = padded.reshape(hp // 2, 2, wp // 2, 2).sum(axis=(1, 3))
    n = counts.reshape(hp // 2, 2, wp // 2, 2).sum(axis=(1, 3))
    return sums / n


def _local_contrast(lin):
    lp = 100.0 * np.sqrt(lin)
    pad = np.pad(lp, 1, mode="edge")
    c = pad[1:-1, 1:-1]
    total = (
        np.abs(c - pad[:-2, 1:-1])
        + np.abs(c - pad[2:, 1:-1])
        + np.abs(c - pad[1:-1, :-2])
        + np.abs(c - pad[1:-1, 2:])
    )
    return float(np.mean(total / 4.0))


def gcf(img) -> float:
    k = _u8_luma(img).astype(np.float64)
    if k.shape[0] < 2 or k.shape[1] < 2:
        raise ImageTooSmallError(f"gcf needs at least a 2x2 image, got {k.shape}")
    lin = (k / 255.0) ** GCF_GAMMA
    total = 0.0
    for i in range(1, GCF_LEVELS + 1):
        if i > 1:
            lin = _halve(lin)
        if lin.shape[0] >= 2 and lin.shape[1] >= 2:
            total += gcf_weight(i) * _local_contrast(lin)
    return total


# --- UIQM --------------------------------------------------------------------

def _trimmed_stats(x, alpha_l, alpha_r):
    """Alpha-trimmed mean, and the mean squared deviation of all samples from it."""
    s = np.sort(x, axis=None)
    n = s.size
    lo = int(math.ceil(alpha_l * n))
    hi = n - int(math.floor(alpha_r * n))
    mu = float(s[lo:hi].mean())
    var = float(np.mean((s - mu) ** 2))
    return mu, var


def uicm(img) -> float:
    rg, yb = _opponents(_u8_rgb(img))
    mu_rg, var_rg = _trimmed_stats(rg, *UICM_TRIM)
    mu_yb, var_yb = _trimmed_stats(yb, *UICM_TRIM)
    a, b = UICM_WEIGHTS
    return a * math.sqrt(mu_rg ** 2 + mu_yb ** 2) + b * math.sqrt(var_rg + var_yb)


def _blocks(p):
    """Full 8x8 blocks of ``p`` as an array of shape (n_blocks, 64)."""
    by, bx = p.shape[0] // BLOCK, p.shape[1] // BLOCK
    if by == 0 or bx == 0:
        raise ImageTooSmallError(f"image smaller than one {BLOCK}x{BLOCK} block: {p.shape}")
    b = p[: by * BLOCK, : bx * BLOCK].reshape(by, BLOCK, bx, BLOCK)
    return b.transpose(0, 2, 1, 3).reshape(by * bx, BLOCK * BLOCK)


def sobel_magnitude(p) -> np.ndarray:
    pad = np.pad(np.asarray(p, dtype=np.float64), 1, mode="edge")
    h, w = p.shape
    gx = np.zeros((h, w))
    gy = np.zeros((h, w))
    for dy in range(3):
        for dx in range(3):
            win = pad[dy:dy + h, dx:dx + w]
            if _SOBEL_X[dy, dx]:
                gx += _SOBEL_X[dy, dx] * win
            if _SOBEL_X[dx, dy]:
                gy += _SOBEL_X[dx, dy] * win
    return np.sqrt(gx * gx + gy * gy)


def eme(p) -> float:
    b = _blocks(p)
    hi, lo = b.max(axis=1), b.min(axis=1)
    ok = (lo > 0) & (hi > lo)
    terms = np.zeros(b.shape[0])
    terms[ok] = np.log(hi[ok] / lo[ok])
    return float(2.0 * terms.sum() / b.shape[0])


def uism(img) -> float:
    rgb = _u8_rgb(img)
    total = 0.0
    for c, weight in enumerate(LUMA_WEIGHTS):
        ch = rgb[..., c]
        total += weight * eme(sobel_magnitude(ch) * ch)
    return total


def uiconm(img) -> float:
    b = _blocks(luminance(_u8_rgb(img)))
    hi, lo = b.max(axis=1), b.min(axis=1)
    ok = (hi + lo > 0) & (hi > lo)
    terms = np.zeros(b.shape[0])
    m = (hi[ok] - lo[ok]) / (hi[ok] + lo[ok])
    terms[ok] = m * np.log(m)
    return float(abs(terms.sum() / b.shape[0]))


def uiqm(img) -> float:
    c1, c2, c3 = UIQM_WEIGHTS
    _blocks(np.empty(as_rgb(img).shape[:2]))  # size check before any work
    return float(c1 * uicm(img) + c2 * uism(img) + c3 * uiconm(img))


# --- UCIQE -------------------------------------------------------------------

def uciqe(img) -> float:
    L, a, b = rgb_to_lab(_u8_rgb(img) / 255.0)
    L, a, b = L / 100.0, a / 100.0, b / 100.0
    chroma = np.sqrt(a * a + b * b)
    sigma_c = float(chroma.std())

    flat = np.sort(L, axis=None)
    n = max(1, int(math.floor(UCIQE_TAIL * flat.size + 0.5)))
    con_l = float(flat[-n:].mean() - flat[:n].mean())

    sat = np.clip(chroma / np.maximum(L, UCIQE_EPS), 0.0, 1.0)
    mu_s = float(sat.mean())

    c1, c2, c3 = UCIQE_WEIGHTS
    return c1 * sigma_c + c2 * con_l + c3 * mu_s


# --- report ------------------------------------------------------------------

def _maybe(fn, *args):
    try:
        return fn(*args)
    except (MetricUndefinedError, ImageTooSmallError):
        return None


def metric_report(img, reference=None) -> MetricReport:
    """All metrics for ``img``; CEF is computed against ``reference`` when given."""
    img = as_rgb(img)
    y = _u8_luma(img)
    return MetricReport(
        entropy=entropy(y),
        avg_gradient=_maybe(avg_gradient, y),
        colourfulness=colourfulness(img),
        gcf=_maybe(gcf, img),
        uiqm=_maybe(uiqm, img),
        uciqe=uciqe(img),
        cef=None if reference is None else _maybe(cef, img, reference),
    )
