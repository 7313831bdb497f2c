from itertools import islice
from typing import Iterator, List, Literal, Optional, Tuple

import numpy as np
from loguru import logger

from src.cluster.points import ClusterResult, Metric, PointSet, check_k, cluster_means, pairwise, wcss
from src.config import config
from src.errors import TooLarge

Objective = Literal["wcss", "medoid_cost"]

_CHUNK = 65536


def restricted_growth_strings(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Every partition of range(n) into exactly k non-empty blocks, once each.

    Block labels appear in order of first use, so each partition has exactly one
    string and label 0 always belongs to point 0.
    """
    labels = [0] * n

    def extend(i: int, used: int) -> Iterator[Tuple[int, ...]]:
        if i == n:
            if used == k:
                yield tuple(labels)
            return
        if n - i < k - used:
            return
        for v in range(min(used + 1, k)):
            labels[i] = v
            yield from extend(i + 1, max(used, v + 1))

    if n == 0:
        return iter(())
    return extend(1, 1)


def _wcss_batch(L: np.ndarray, X: np.ndarray, k: int) -> np.ndarray:
    # sum over blocks of  sum ||x||^2 - ||sum x||^2 / n_b
    sq = (X * X).sum(axis=1)
    total = np.zeros(len(L))
    for b in range(k):
        M = (L == b).astype(float)
        sums = M @ X
        total += M @ sq - (sums * sums).sum(axis=1) / M.sum(axis=1)
    return total


def _medoid_batch(L: np.ndarray, D: np.ndarray, k: int) -> np.ndarray:
    total = np.zeros(len(L))
    for b in range(k):
        member = L == b
        cost = member.astype(float) @ D
        cost[~member] = np.inf
        total += cost.min(axis=1)
    return total


def partition_oracle(
    points: PointSet,
    k: int,
    objective: Objective = "wcss",
    metric: Metric = "euclidean",
    max_points: Optional[int] = None,
) -> ClusterResult:
    """Globally optimal clustering by exhaustive enumeration of set partitions."""
    check_k(points, k)
    max_points = config.cluster.oracle_max_points if max_points is None else max_points
    n = len(points)
    if n > max_points:
        raise TooLarge(f"exhaustive search is limited to {max_points} points, got {n}")
    if objective not in ("wcss", "medoid_cost"):
        raise ValueError(f"unknown objective {objective!r}; expected wcss or medoid_cost")

    X = points.array
    D = pairwise(X, metric) if objective == "medoid_cost" else None
    best_value, best_labels, seen = np.inf, None, 0
    strings = restricted_growth_strings(n, k)
    while True:
        block = list(islice(strings, _CHUNK))
        if not block:
            break
        L = np.array(block, dtype=np.int8)
        values = _wcss_batch(L, X, k) if D is None else _medoid_batch(L, D, k)
        # argmin keeps the first-enumerated partition on ties
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value, best_labels = float(values[i]), L[i].astype(int)
        seen += len(block)
    logger.debug(f"Oracle: {objective} k={k} searched {seen} partitions of {n} points")

    labels = best_labels
    assignment = {pid: int(lab) for pid, lab in zip(points.ids, labels)}
    if D is None:
        return ClusterResult(
            assignment=assignment,
            centers=cluster_means(X, labels, k).tolist(),
            objective=wcss(X, labels, k),
            method="oracle",
            variant="wcss",
            iterations=seen,
        )

    medoids: List[int] = []
    for b in range(k):
        members = np.flatnonzero(labels == b)
        within = D[np.ix_(members, members)].sum(axis=0)
        medoids.append(int(members[np.argmin(within)]))
    return ClusterResult(
        assignment=assignment,
        centers=X[medoids].tolist(),
        objective=float(sum(D[labels == b][:, m].sum() for b, m in enumerate(medoids))),
        method="oracle",
        variant="medoid_cost",
        metric=metric,
        medoids=[points.ids[m] for m in medoids],
        iterations=seen,
    )
