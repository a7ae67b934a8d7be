"""Image file decoding and encoding.

Binary PPM (P6, and P5 greyscale on read) is handled here byte-for-byte.
PNG and JPEG go through Pillow. Decoded images are float64 ``(h, w, 3)``
arrays in [0, 1]; encoding quantizes with ``quantize_u8``.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import ImageFormatError
from .imgcore import as_rgb, quantize_u8

PPM_SUFFIXES = (".ppm", ".pnm", ".pgm")
PIL_SUFFIXES = (".png", ".jpg", ".jpeg")
SUPPORTED_SUFFIXES = PPM_SUFFIXES + PIL_SUFFIXES


def _ppm_tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens, pos, n = [], 0, len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PNM header")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    if pos >= n or not data[pos:pos + 1].isspace():
        raise ImageFormatError("malformed PNM header")
    return tokens, pos + 1


def decode_ppm(data: bytes) -> np.ndarray:
    if data[:2] not in (b"P6", b"P5"):
        raise ImageFormatError("not a binary PPM/PGM file (expected P6 or P5 magic)")
    (magic, *rest), offset = _ppm_tokens(data, 4)
    try:
        w, h, maxval = (int(t) for t in rest)
    except ValueError:
        raise ImageFormatError("non-numeric PNM header field") from None
    if w < 1 or h < 1:
        raise ImageFormatError(f"invalid PNM dimensions {w}x{h}")
    if not 1 <= maxval <= 255:
        raise ImageFormatError(f"unsupported PNM maxval {maxval} (8-bit only)")
    nch = 3 if magic == b"P6" else 1
    need = w * h * nch
    raster = data[offset:offset + need]
    if len(raster) < need:
        raise ImageFormatError(f"truncated PNM raster: {len(raster)} of {need} bytes")
    arr = np.frombuffer(raster, dtype=np.uint8).reshape(h, w, nch)
    if nch == 1:
        arr = np.repeat(arr, 3, axis=2)
    return arr.astype(np.float64) / maxval


def encode_ppm(img) -> bytes:
    q = quantize_u8(as_rgb(img))
    h, w, _ = q.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + q.tobytes()


def _read_pil(path: Path) -> np.ndarray:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageFormatError(f"cannot decode {path.name}: {exc}") from None
    return arr.astype(np.float64) / 255.0


def read_image(path) -> np.ndarray:
    """Decode ``path`` into an RGB float image.

    Raises ``FileNotFoundError``/``OSError`` for unreadable files and
    ``ImageFormatError`` for undecodable content.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in PPM_SUFFIXES:
        return decode_ppm(path.read_bytes())
    if suffix in PIL_SUFFIXES:
        if not path.exists():
            raise FileNotFoundError(path)
        return _read_pil(path)
    raise ImageFormatError(f"unsupported image format {suffix or '(none)'!r}")


def write_image(path, img) -> None:
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix in PPM_SUFFIXES[:1]:
        data = encode_ppm(img)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)
    elif suffix == ".png":
        from PIL import Image

        Image.fromarray(quantize_u8(as_rgb(img))).save(path, format="PNG")
    else:
        raise ImageFormatError(f"cannot write {suffix or '(none)'!r}; use .ppm or .png")


def list_images(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(directory)
    return sorted(
        p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in SUPPORTED_SUFFIXES
    )
