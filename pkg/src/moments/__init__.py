from src.moments.empirical import (
    MomentSummary,
    OrdPoint,
    empirical_moments,
    ord_coords,
    ord_point,
    weighted_moments,
)

__all__ = ["MomentSummary", "OrdPoint", "empirical_moments", "ord_coords", "ord_point", "weighted_moments"]
