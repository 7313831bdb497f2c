from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.config import config
from src.moments.empirical import OrdPoint

# Landmarks of the Ord plane, read from the axes of the reference diagram
LANDMARKS: Dict[str, Tuple[float, float]] = {
    "A": (0.0, 1.0),
    "G": (0.0, -1.0),
    "J": (0.5, 0.0),
    "P": (1.0, 1.0),
}


class RegionLabel(str, Enum):
    BINOMIAL_SEGMENT = "BINOMIAL_SEGMENT"
    POISSON_POINT = "POISSON_POINT"
    NEGBIN_HALFLINE = "NEGBIN_HALFLINE"
    HYPERGEOM_TRIANGLE = "HYPERGEOM_TRIANGLE"
    BETABIN_HALFPLANE = "BETABIN_HALFPLANE"
    BETAPASCAL_REGION = "BETAPASCAL_REGION"
    NONE = "NONE"


class RegionClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    labels: FrozenSet[RegionLabel]
    tol: float
    # Edges of the diagram the point lies on within tol: AG, GP, AP, PB
    boundaries: FrozenSet[str] = frozenset()


def _on_edges(i: float, s: float, tol: float) -> FrozenSet[str]:
    on_line = abs(s - (2.0 * i - 1.0)) <= tol
    edges = set()
    if abs(i) <= tol and -1.0 - tol <= s <= 1.0 + tol:
        edges.add("AG")
    if on_line and -tol <= i <= 1.0 + tol:
        edges.add("GP")
    if abs(s - 1.0) <= tol and -tol <= i <= 1.0 + tol:
        edges.add("AP")
    if on_line and i >= 1.0 - tol:
        edges.add("PB")
    return frozenset(edges)


def classify_region(point: OrdPoint, tol: Optional[float] = None) -> RegionClassification:
    """Which distribution regions of the Ord plane contain the point."""
    tol = config.theory.library_tol if tol is None else tol
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    i, s = point.i, point.s
    gp = 2.0 * i - 1.0
    on_line = abs(s - gp) <= tol

    labels = set()
    if abs(i - 1.0) <= tol and abs(s - 1.0) <= tol:
        labels.add(RegionLabel.POISSON_POINT)
    if on_line and 0.0 < i < 1.0:
        labels.add(RegionLabel.BINOMIAL_SEGMENT)
    if on_line and i > 1.0:
        labels.add(RegionLabel.NEGBIN_HALFLINE)
    if i > tol and s < 1.0 - tol and s > gp + tol:
        labels.add(RegionLabel.HYPERGEOM_TRIANGLE)
    if s < gp - tol:
        labels.add(RegionLabel.BETABIN_HALFPLANE)
    if s > 1.0 + tol and s > gp + tol:
        labels.add(RegionLabel.BETAPASCAL_REGION)
    if not labels:
        labels.add(RegionLabel.NONE)

    return RegionClassification(labels=frozenset(labels), tol=tol, boundaries=_on_edges(i, s, tol))
