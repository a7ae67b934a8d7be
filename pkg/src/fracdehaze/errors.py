class ConfigError(ValueError):
    """Invalid configuration value, raised before any pixel work."""


class MetricUndefinedError(ValueError):
    """A metric has no defined value for the given input (e.g. CEF on a grey original)."""


class ImageFormatError(ValueError):
    """An image file could not be decoded."""


class ImageTooSmallError(ValueError):
    """The image is below the minimum size a metric is defined for."""
