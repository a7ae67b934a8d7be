"""Fractional-order multiscale fusion de-hazing and underwater enhancement."""

from .errors import ConfigError, ImageFormatError, ImageTooSmallError, MetricUndefinedError
from .fracfilter import FilterMode, build_kernel, convolve, gl_coefficients
from .imageio import read_image, write_image
from .fusion import Strategy, blend, normalize_weights, score_candidate
from .iqa import MetricReport, metric_report
from .multiscale import decompose, enhance_stack, reconstruct
from .pipeline import PipelineConfig, enhance_image, run_batch

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "FilterMode",
    "ImageFormatError",
    "ImageTooSmallError",
    "MetricReport",
    "MetricUndefinedError",
    "PipelineConfig",
    "Strategy",
    "blend",
    "build_kernel",
    "convolve",
    "decompose",
    "enhance_image",
    "enhance_stack",
    "gl_coefficients",
    "metric_report",
    "normalize_weights",
    "read_image",
    "reconstruct",
    "run_batch",
    "score_candidate",
    "write_image",
]
