"""Entropy-guided fusion of enhancement candidates.

Each candidate is scored by entropy x standard deviation of its quantized
luminance. Candidates are then either blended with score-proportional
weights or the best one is selected outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ConfigError
from .imgcore import as_rgb, luminance, moments, quantize_u8
from .iqa import entropy


class Strategy(str, Enum):
    WEIGHTED = "weighted"
    ARGMAX = "argmax"

    @classmethod
    def parse(cls, value) -> "Strategy":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ConfigError(
                f"strategy must be one of {[s.value for s in cls]}, got {value!r}"
            ) from None


@dataclass(frozen=True)
class FusionCandidate:
    order: float
    image: np.ndarray
    score: float


def score_candidate(img) -> float:
    y = quantize_u8(luminance(img))
    _, sigma = moments(y)
    return entropy(y) * sigma


def normalize_weights(scores: Sequence[float]) -> np.ndarray:
    s = np.asarray(scores, dtype=np.float64)
    if s.ndim != 1 or s.size == 0:
        raise ValueError("normalize_weights needs at least one score")
    if np.any(~np.isfinite(s)) or np.any(s < 0):
        raise ValueError(f"scores must be finite and non-negative, got {s.tolist()}")
    total = s.sum()
    if total == 0:
        return np.full(s.size, 1.0 / s.size)
    return s / total


def select_best(candidates: Sequence[FusionCandidate]) -> int:
    """Index of the highest-scoring candidate; ties go to the lowest order."""
    return min(range(len(candidates)), key=lambda i: (-candidates[i].score, candidates[i].order, i))


def blend(candidates: Sequence[FusionCandidate], weights=None, strategy="weighted") -> np.ndarray:
    strategy = Strategy.parse(strategy)
    if not candidates:
        raise ValueError("blend needs at least one candidate")
    shape = candidates[0].image.shape
    for c in candidates:
        if c.image.shape != shape:
            raise ValueError(f"candidate shape mismatch: {c.image.shape} vs {shape}")

    if strategy is Strategy.ARGMAX:
        return candidates[select_best(candidates)].image
    if len(candidates) == 1:
        return candidates[0].image

    if weights is None:
        weights = normalize_weights([c.score for c in candidates])
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(candidates),):
        raise ValueError("weights must align with candidates")
    # fixed summation order: ascending candidate index
    out = weights[0] * as_rgb(candidates[0].image)
    for w, c in zip(weights[1:], candidates[1:]):
        out = out + w * c.image
    return out
