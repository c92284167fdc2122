"""Python bindings for the peer-review evaluation core."""

from ._core import (
    AI_THRESHOLD,
    RATING_SCALE,
    __version__,
    ai_rate,
    binoculars_score,
    chunk_spans,
    coverage_from_similarities,
    f1,
    kl_divergence,
    max_recall,
    pearson,
    population_variance,
    precision,
    rating_mae,
)

__all__ = [
    "AI_THRESHOLD",
    "RATING_SCALE",
    "__version__",
    "ai_rate",
    "binoculars_score",
    "chunk_spans",
    "coverage_from_similarities",
    "f1",
    "kl_divergence",
    "max_recall",
    "pearson",
    "population_variance",
    "precision",
    "rating_mae",
]
