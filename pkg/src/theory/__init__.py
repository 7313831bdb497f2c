from src.theory.distributions import (
    BetaBinomialSpec,
    BinomialSpec,
    DistSpec,
    HypergeometricSpec,
    NegBinomialSpec,
    PoissonSpec,
    dist_moments,
    dist_point,
    parse_dist_spec,
    summation_moments,
)
from src.theory.regions import LANDMARKS, RegionClassification, RegionLabel, classify_region

__all__ = [
    "BetaBinomialSpec",
    "BinomialSpec",
    "DistSpec",
    "HypergeometricSpec",
    "NegBinomialSpec",
    "PoissonSpec",
    "dist_moments",
    "dist_point",
    "parse_dist_spec",
    "summation_moments",
    "LANDMARKS",
    "RegionClassification",
    "RegionLabel",
    "classify_region",
]
