"""Compare the numba and numpy backends on the hot kernels and the full pipeline.

    python3 benchmarks/bench_backends.py --sizes 256x256,1024x768 --repeat 5

Reports the best-of-N wall time for each backend and checks that both
produce bit-identical results.
"""

import argparse
import time

import numpy as np

from fracdehaze.fracfilter import build_kernel, convolve
from fracdehaze.multiscale import gaussian_blur
from fracdehaze.pipeline import PipelineConfig, enhance_image, warmup

BACKENDS = ("numba", "numpy")


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def parse_sizes(text):
    sizes = []
    for item in text.split(","):
        w, h = item.lower().split("x")
        sizes.append((int(h), int(w)))
    return sizes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256x256,1024x768", help="comma-separated WxH list")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    for b in BACKENDS:
        warmup(b)
    rng = np.random.default_rng(0)
    kernel = build_kernel(0.5, 2, "hbfc")
    cfg = PipelineConfig()

    print(f"{'case':<28}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}  identical")
    for h, w in parse_sizes(args.sizes):
        img = rng.random((h, w, 3))
        plane = np.ascontiguousarray(img[..., 0])
        cases = {
            f"fractional filter {w}x{h}": lambda b: convolve(plane, kernel, backend=b),
            f"gaussian blur s=4 {w}x{h}": lambda b: gaussian_blur(plane, 4.0, backend=b),
            f"pipeline {w}x{h}": lambda b: enhance_image(img, cfg, backend=b),
        }
        for name, fn in cases.items():
            results = {b: best_of(lambda: fn(b), args.repeat) for b in BACKENDS}
            t_nb, out_nb = results["numba"]
            t_np, out_np = results["numpy"]
            same = np.array_equal(out_nb, out_np)
            print(f"{name:<28}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>9.2f}x  {same}")


if __name__ == "__main__":
    main()
