from typing import List, Optional

import numpy as np
from loguru import logger

from src.cluster.points import ClusterResult, Metric, PointSet, check_k, pairwise
from src.config import config


def _total_cost(D: np.ndarray, medoids: List[int]) -> float:
    return float(D[:, medoids].min(axis=1).sum())


def _build(D: np.ndarray, k: int) -> List[int]:
    """Greedy BUILD: start from the most central point, then add whichever point lowers cost most."""
    medoids = [int(np.argmin(D.sum(axis=1)))]
    nearest = D[:, medoids[0]].copy()
    while len(medoids) < k:
        best, best_cost = -1, np.inf
        for c in range(len(D)):
            if c in medoids:
                continue
            cost = np.minimum(nearest, D[:, c]).sum()
            if cost < best_cost:
                best, best_cost = c, cost
        medoids.append(best)
        nearest = np.minimum(nearest, D[:, best])
    return medoids


def _swap(D: np.ndarray, medoids: List[int], max_iter: int):
    """Apply the best improving (medoid, non-medoid) swap until none improves."""
    cost = _total_cost(D, medoids)
    for it in range(1, max_iter + 1):
        best_cost, best_swap = cost, None
        slack = 1e-12 * max(1.0, cost)
        for mi in range(len(medoids)):
            for h in range(len(D)):
                if h in medoids:
                    continue
                trial = medoids.copy()
                trial[mi] = h
                trial_cost = _total_cost(D, trial)
                if trial_cost < best_cost - slack:
                    best_cost, best_swap = trial_cost, (mi, h)
        if best_swap is None:
            return medoids, it
        mi, h = best_swap
        logger.debug(f"KMedoids: swap medoid {medoids[mi]} -> {h}, cost {cost:.6g} -> {best_cost:.6g}")
        medoids[mi] = h
        cost = best_cost
    return medoids, max_iter


def kmedoids_pam(
    points: PointSet,
    k: int,
    metric: Metric = "euclidean",
    max_iter: Optional[int] = None,
) -> ClusterResult:
    """PAM k-medoids (BUILD then SWAP). Deterministic: no seed involved."""
    check_k(points, k)
    if metric not in ("euclidean", "manhattan"):
        raise ValueError(f"unknown metric {metric!r}; expected euclidean or manhattan")
    max_iter = config.cluster.max_iter if max_iter is None else max_iter

    X = points.array
    D = pairwise(X, metric)
    medoids, iterations = _swap(D, _build(D, k), max_iter)
    # Cluster index follows medoid point order
    medoids = sorted(medoids)
    labels = np.argmin(D[:, medoids], axis=1)
    return ClusterResult(
        assignment={pid: int(lab) for pid, lab in zip(points.ids, labels)},
        centers=X[medoids].tolist(),
        objective=_total_cost(D, medoids),
        method="kmedoids",
        metric=metric,
        medoids=[points.ids[m] for m in medoids],
        iterations=iterations,
    )
