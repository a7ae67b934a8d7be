"""Hot inner loops: tap correlation and separable filtering with replicate borders.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version operating on the same edge-padded buffer with the same tap order.
The active backend is chosen once at import time from the
``FRACDEHAZE_BACKEND`` environment variable (``numba`` or ``numpy``);
if numba cannot be imported the numpy path is used regardless.

Both paths visit taps in identical order, so per-pixel sums are formed the
same way; rows are independent, so the numba path is deterministic across
thread counts.
"""

from __future__ import annotations

import os

import numpy as np

if "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe, which warns on older system TBB builds
    os.environ["NUMBA_THREADING_LAYER"] = "workqueue"

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_requested = os.environ.get("FRACDEHAZE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(
        f"FRACDEHAZE_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )
BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"


def _taps_from_mask(mask):
    """Return (dy, dx, w) arrays for the non-zero entries of a centred mask."""
    mask = np.asarray(mask, dtype=np.float64)
    ry, rx = mask.shape[0] // 2, mask.shape[1] // 2
    ys, xs = np.nonzero(mask)
    return (
        (ys - ry).astype(np.int64),
        (xs - rx).astype(np.int64),
        mask[ys, xs].copy(),
    )


# ---------------------------------------------------------------------------
# numpy reference path
# ---------------------------------------------------------------------------

def correlate_taps_numpy(padded, ry, rx, dy, dx, w, out_h, out_w):
    out = np.zeros((out_h, out_w), dtype=np.float64)
    for t in range(w.shape[0]):
        y0 = ry + dy[t]
        x0 = rx + dx[t]
        out += w[t] * padded[y0:y0 + out_h, x0:x0 + out_w]
    return out


def filter_rows_numpy(padded, taps, out_w):
    """Correlate each row with ``taps``; ``padded`` has len(taps)//2 extra columns per side."""
    out = np.zeros((padded.shape[0], out_w), dtype=np.float64)
    for t in range(taps.shape[0]):
        out += taps[t] * padded[:, t:t + out_w]
    return out


def filter_cols_numpy(padded, taps, out_h):
    out = np.zeros((out_h, padded.shape[1]), dtype=np.float64)
    for t in range(taps.shape[0]):
        out += taps[t] * padded[t:t + out_h, :]
    return out


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    # Loops run taps outside and x innermost: contiguous, vectorizable, and
    # each pixel accumulates 0 + w0*a0 + w1*a1 + ... exactly like the numpy path.

    @njit(parallel=True, cache=True)
    def correlate_taps_numba(padded, ry, rx, dy, dx, w, out_h, out_w):
        out = np.zeros((out_h, out_w), dtype=np.float64)
        n = w.shape[0]
        for y in prange(out_h):
            for t in range(n):
                src = padded[y + ry + dy[t]]
                x0 = rx + dx[t]
                wt = w[t]
                for x in range(out_w):
                    out[y, x] += wt * src[x0 + x]
        return out

    @njit(parallel=True, cache=True)
    def filter_rows_numba(padded, taps, out_w):
        h = padded.shape[0]
        n = taps.shape[0]
        out = np.zeros((h, out_w), dtype=np.float64)
        for y in prange(h):
            for t in range(n):
                wt = taps[t]
                for x in range(out_w):
                    out[y, x] += wt * padded[y, x + t]
        return out

    @njit(parallel=True, cache=True)
    def filter_cols_numba(padded, taps, out_h):
        w = padded.shape[1]
        n = taps.shape[0]
        out = np.zeros((out_h, w), dtype=np.float64)
        for y in prange(out_h):
            for t in range(n):
                wt = taps[t]
                src = padded[y + t]
                for x in range(w):
                    out[y, x] += wt * src[x]
        return out

else:  # pragma: no cover
    correlate_taps_numba = correlate_taps_numpy
    filter_rows_numba = filter_rows_numpy
    filter_cols_numba = filter_cols_numpy


def _pick(backend):
    backend = BACKEND if backend is None else backend
    if backend == "numba":
        return correlate_taps_numba, filter_rows_numba, filter_cols_numba
    if backend == "numpy":
        return correlate_taps_numpy, filter_rows_numpy, filter_cols_numpy
    raise ValueError(f"unknown backend {backend!r}")


def correlate2d(plane, mask, backend=None):
    """2-D correlation of ``plane`` with an odd-sized ``mask``, replicate borders.

    Zero mask entries are skipped, so sparse directional masks cost only
    their non-zero taps.
    """
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    mask = np.asarray(mask, dtype=np.float64)
    if mask.ndim != 2 or mask.shape[0] % 2 == 0 or mask.shape[1] % 2 == 0:
        raise ValueError(f"mask must be 2-D with odd sides, got {mask.shape}")
    ry, rx = mask.shape[0] // 2, mask.shape[1] // 2
    dy, dx, w = _taps_from_mask(mask)
    h, wd = plane.shape
    if w.shape[0] == 0:
        return np.zeros_like(plane)
    padded = np.pad(plane, ((ry, ry), (rx, rx)), mode="edge")
    corr, _, _ = _pick(backend)
    return corr(padded, ry, rx, dy, dx, w, h, wd)


def separable_filter(plane, taps, backend=None):
    """Apply the 1-D ``taps`` along rows then columns with replicate borders."""
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    taps = np.ascontiguousarray(taps, dtype=np.float64)
    r = taps.shape[0] // 2
    h, w = plane.shape
    _, rows, cols = _pick(backend)
    tmp = rows(np.pad(plane, ((0, 0), (r, r)), mode="edge"), taps, w)
    return cols(np.pad(tmp, ((r, r), (0, 0)), mode="edge"), taps, h)
