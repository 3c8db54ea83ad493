"""Streaming clustering: topological fuzzy ARTMAP guided by incremental
cluster validity indices, with baselines and benchmark helpers."""

from ._core import (
    IcviTopoArtMap,
    SequentialKMeans,
    StepReport,
    WsDualVigilanceArt,
    WsTopoFuzzyArt,
    accuracy,
    ari,
    gen_synthetic,
    order_stream,
)

__all__ = [
    "IcviTopoArtMap",
    "SequentialKMeans",
    "StepReport",
    "WsDualVigilanceArt",
    "WsTopoFuzzyArt",
    "accuracy",
    "ari",
    "gen_synthetic",
    "order_stream",
]
