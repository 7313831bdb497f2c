import math
from itertools import combinations
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import NonFiniteCoordinate, TooFewPoints

Metric = Literal["euclidean", "manhattan"]


class PointSet(BaseModel):
    """Labeled d-dimensional points (d = 1 for inventory sizes, 2 for Ord coordinates)."""
    model_config = ConfigDict(frozen=True)

    points: Tuple[Tuple[float, ...], ...]
    ids: Tuple[str, ...]

    @model_validator(mode="after")
    def _check(self):
        if len(self.points) != len(self.ids):
            raise ValueError("points and ids differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("point ids are not unique")
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise ValueError(f"points have mixed dimensions {sorted(dims)}")
        if dims == {0}:
            raise ValueError("points have dimension 0")
        for pid, p in zip(self.ids, self.points):
            if not all(math.isfinite(v) for v in p):
                raise NonFiniteCoordinate(f"point {pid} has a non-finite coordinate {p}")
        return self

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[float]]) -> "PointSet":
        points = tuple(tuple(float(v) for v in vec) for vec in mapping.values())
        # Checked before validation so the error is not wrapped by pydantic
        for pid, p in zip(mapping, points):
            if not all(math.isfinite(v) for v in p):
                raise NonFiniteCoordinate(f"point {pid} has a non-finite coordinate {p}")
        return cls(points=points, ids=tuple(mapping.keys()))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(len(self.points), -1)

    def __len__(self) -> int:
        return len(self.points)


class ClusterResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    assignment: Dict[str, int]
    centers: List[List[float]]
    objective: float
    method: Literal["kmeans", "kmedoids", "oracle"]
    variant: Optional[str] = None
    metric: Optional[str] = None
    medoids: Optional[List[str]] = None
    seed: Optional[int] = None
    restarts: Optional[int] = None
    iterations: int = 0

    @property
    def k(self) -> int:
        return len(self.centers)


def check_k(points: PointSet, k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > len(points):
        raise TooFewPoints(f"k={k} exceeds the {len(points)} available points")


def canonical_labels(labels: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Relabel clusters by order of first appearance; returns new labels and old-label order."""
    order: List[int] = []
    for lab in labels.tolist():
        if lab not in order:
            order.append(lab)
    remap = {old: new for new, old in enumerate(order)}
    return np.array([remap[l] for l in labels.tolist()], dtype=int), order


def cluster_means(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    centers = np.zeros((k, X.shape[1]))
    for j in range(k):
        members = X[labels == j]
        if len(members):
            centers[j] = members.mean(axis=0)
    return centers


def wcss(X: np.ndarray, labels: np.ndarray, k: int) -> float:
    """Within-cluster sum of squared Euclidean distances to the cluster means."""
    centers = cluster_means(X, labels, k)
    diff = X - centers[labels]
    return math.fsum((diff * diff).sum(axis=1))


def pairwise(X: np.ndarray, metric: Metric) -> np.ndarray:
    from scipy.spatial.distance import cdist

    return cdist(X, X, metric="cityblock" if metric == "manhattan" else "euclidean")


def canonical_groups(result: ClusterResult) -> List[List[str]]:
    """Clusters as sorted id lists, ordered by smallest member id: equal iff same partition."""
    groups: Dict[int, List[str]] = {}
    for pid, lab in result.assignment.items():
        groups.setdefault(lab, []).append(pid)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def rand_index(a: ClusterResult, b: ClusterResult) -> float:
    """Fraction of id pairs on which two clusterings agree (together / apart)."""
    ids = sorted(set(a.assignment) & set(b.assignment))
    pairs = list(combinations(ids, 2))
    if not pairs:
        return 1.0
    agree = sum(
        (a.assignment[x] == a.assignment[y]) == (b.assignment[x] == b.assignment[y]) for x, y in pairs
    )
    return agree / len(pairs)
