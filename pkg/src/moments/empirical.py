import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.errors import DegenerateDistribution, EmptyInput
from src.freqdata.tables import CategoryTable, RankedTable, rank_frequencies


class MomentSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    mu2: float
    mu3: float


class OrdPoint(BaseModel):
    """Ord-plane coordinates I = mu2 / mean, S = mu3 / mu2."""
    model_config = ConfigDict(frozen=True)

    i: float
    s: float


def weighted_moments(values: Sequence[float], weights: Sequence[float]) -> MomentSummary:
    """Mean, variance and third central moment of a finite weighted support (two passes)."""
    x = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    total = math.fsum(w)
    if total <= 0:
        raise EmptyInput("weights sum to zero")
    p = w / total
    mean = math.fsum(x * p)
    d = x - mean
    mu2 = math.fsum(d * d * p)
    mu3 = math.fsum(d * d * d * p)
    return MomentSummary(mean=mean, mu2=max(mu2, 0.0), mu3=mu3)


def empirical_moments(ranked: RankedTable) -> MomentSummary:
    """Moments of the rank variable: rank r carries probability f_r / N."""
    if ranked.N == 0:
        raise EmptyInput(f"ranked table '{ranked.source}' has total count 0")
    return weighted_moments(ranked.ranks, ranked.counts)


def ord_coords(summary: MomentSummary) -> OrdPoint:
    if summary.mu2 == 0.0:
        raise DegenerateDistribution("zero variance; Ord coordinates are undefined")
    if summary.mean == 0.0:
        raise DegenerateDistribution("zero mean; Ord coordinate I is undefined")
    return OrdPoint(i=summary.mu2 / summary.mean, s=summary.mu3 / summary.mu2)


def ord_point(table: CategoryTable) -> OrdPoint:
    return ord_coords(empirical_moments(rank_frequencies(table)))
