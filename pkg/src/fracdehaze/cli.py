"""Command-line front end: ``fracdehaze enhance|metrics|bench``.

Exit codes: 0 success, 1 partially failed batch, 2 I/O failure,
64 usage or validation error.

Configuration precedence is built-in defaults < ``--config`` file <
command-line flags. The config file is flat ``key = value`` text with
``#`` comments; keys are the long flag names without dashes
(``mode``, ``orders``, ``k``, ``boost``, ``levels``, ``sigma0``, ``lambda``,
``approx-gain``, ``strategy``, ``stretch``).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import imageio, iqa, report
from .errors import ConfigError, ImageFormatError
from .pipeline import PipelineConfig, enhance_image, run_batch, warmup

log = logging.getLogger("fracdehaze")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_IO = 2
EXIT_USAGE = 64

# flag/config key -> (PipelineConfig field, parser)
PIPELINE_KEYS = {
    "mode": ("mode", str),
    "orders": ("orders", lambda s: tuple(float(v) for v in s.split(",") if v.strip())),
    "k": ("K", int),
    "boost": ("A", float),
    "levels": ("levels", int),
    "sigma0": ("sigma0", float),
    "lambda": ("lam", float),
    "approx-gain": (None, float),
    "strategy": ("strategy", str),
    "stretch": ("stretch", lambda s: _on_off(s)),
}


class UsageError(Exception):
    pass


def _on_off(s: str) -> bool:
    v = s.strip().lower()
    if v in ("on", "true", "yes", "1"):
        return True
    if v in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"expected on/off, got {s!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def read_config_file(path) -> dict[str, str]:
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("_", "-")
        if key not in PIPELINE_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def resolve_config(args) -> PipelineConfig:
    """Merge defaults, config file and flags into a validated config."""
    raw = read_config_file(args.config) if args.config else {}
    for key in PIPELINE_KEYS:
        attr = "lambda_" if key == "lambda" else key.replace("-", "_")
        flag = getattr(args, attr, None)
        if flag is not None:
            raw[key] = flag
    kwargs, gain = {}, None
    for key, value in raw.items():
        field, parse = PIPELINE_KEYS[key]
        try:
            parsed = parse(value) if isinstance(value, str) else value
        except ValueError as exc:
            raise ConfigError(f"invalid value for {key}: {exc}") from None
        if field is None:
            gain = parsed
        else:
            kwargs[field] = parsed
    cfg = PipelineConfig(**kwargs)
    if gain is not None:
        cfg = cfg.with_approx_gain(gain)
        cfg.validate()
    return cfg


def _add_pipeline_flags(p):
    g = p.add_argument_group("pipeline")
    g.add_argument("--mode", help="hpfc or hbfc (default hbfc)")
    g.add_argument("--orders", help="comma-separated fractional orders in [0, 2]")
    g.add_argument("--k", help="GL truncation length K (default 2)")
    g.add_argument("--boost", help="high-boost factor A >= 1 (default 1)")
    g.add_argument("--levels", help="decomposition levels (default 3)")
    g.add_argument("--sigma0", help="finest blur sigma in pixels (default 1)")
    g.add_argument("--lambda", dest="lambda_", metavar="LAMBDA",
                   help="detail enhancement strength (default 0.8)")
    g.add_argument("--approx-gain", help="approximation gain for the active mode")
    g.add_argument("--strategy", help="weighted or argmax (default weighted)")
    g.add_argument("--stretch", help="on/off percentile stretch (default off)")
    g.add_argument("--config", help="key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracdehaze", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enhance", help="enhance one image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True, help="output .ppm or .png")
    _add_pipeline_flags(p)

    p = sub.add_parser("metrics", help="no-reference metrics for images")
    p.add_argument("--in", dest="input", required=True, nargs="+")
    p.add_argument("--reference", help="original image for CEF")
    p.add_argument("--report", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write the record here instead of stdout")

    p = sub.add_parser("bench", help="enhance a directory and report metrics/runtime")
    p.add_argument("--in", dest="input", required=True, help="directory of images")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--report", choices=("csv", "json"), default="csv")
    p.add_argument("--out-dir", help="also write enhanced images here")
    p.add_argument("--repeat", type=int, default=1, help="timed runs per image")
    p.add_argument("--metrics", choices=("on", "off"), default="on")
    p.add_argument("--no-timing", action="store_true",
                   help="leave runtime cells empty so reports are byte-reproducible")
    p.add_argument("--threads", type=int, help="numba worker threads")
    _add_pipeline_flags(p)
    return parser


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_enhance(args) -> int:
    cfg = resolve_config(args)
    img = imageio.read_image(args.input)
    warmup()
    t0 = time.perf_counter()
    out = enhance_image(img, cfg)
    runtime_ms = 1e3 * (time.perf_counter() - t0)
    imageio.write_image(args.out, out)
    print(f"runtime_ms={runtime_ms:.3f}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    ref = imageio.read_image(args.reference) if args.reference else None
    records = []
    for path in args.input:
        img = imageio.read_image(path)
        m = iqa.metric_report(img, reference=ref)
        if ref is not None and m.cef is None:
            log.warning("CEF undefined for %s: reference has zero colourfulness", path)
        records.append(report.metrics_record(Path(path).name, m, ref is not None))
    if args.report == "json":
        text = report.metrics_to_json(records)
    else:
        text = report.metrics_to_csv(records, ref is not None)
    _emit(text, args.out)
    return EXIT_OK


def _set_threads(n):
    if n is None:
        return
    if n < 1:
        raise ConfigError(f"--threads must be >= 1, got {n}")
    from . import kernels

    if kernels.BACKEND != "numba":
        return
    import numba

    if not 1 <= n <= numba.config.NUMBA_NUM_THREADS:
        raise ConfigError(f"--threads must be in [1, {numba.config.NUMBA_NUM_THREADS}], got {n}")
    numba.set_num_threads(n)


def cmd_bench(args) -> int:
    cfg = resolve_config(args)
    if args.repeat < 1:
        raise ConfigError(f"--repeat must be >= 1, got {args.repeat}")
    _set_threads(args.threads)
    paths = imageio.list_images(args.input)
    if not paths:
        log.error("no supported images in %s", args.input)
        return EXIT_IO
    loaders = [lambda p=p: imageio.read_image(p) for p in paths]
    rep = run_batch(
        loaders, cfg, with_metrics=args.metrics == "on",
        ids=[p.name for p in paths], repeat=args.repeat,
        keep_outputs=bool(args.out_dir),
    )
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for p, row in zip(paths, rep.rows):
            if row.ok:
                imageio.write_image(out_dir / (p.stem + ".ppm"), row.output)
    timing = not args.no_timing
    text = report.bench_to_json(rep, timing) if args.report == "json" else report.bench_to_csv(rep, timing)
    _emit(text, args.out)
    if rep.mean_runtime_ms is not None:
        log.info("mean runtime %.3f ms over %d images", rep.mean_runtime_ms, len(rep.rows) - rep.failures)
    return EXIT_PARTIAL if rep.failures else EXIT_OK


COMMANDS = {"enhance": cmd_enhance, "metrics": cmd_metrics, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"fracdehaze {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ImageFormatError) as exc:
        print(f"fracdehaze {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
