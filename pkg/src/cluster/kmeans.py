import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, NamedTuple, Optional

import numpy as np
from loguru import logger

from src.cluster.points import (
    ClusterResult,
    PointSet,
    canonical_labels,
    check_k,
    cluster_means,
    wcss,
)
from src.cluster.rng import SplitMix64
from src.config import config

Variant = Literal["lloyd", "macqueen", "hartigan_wong"]
VARIANTS = ("lloyd", "macqueen", "hartigan_wong")

# Relative slack for float comparisons of WCSS values
_REL_EPS = 1e-12


class _Run(NamedTuple):
    objective: float
    labels: np.ndarray
    iterations: int


def _sq_dists(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - centers[None, :, :]
    return (diff * diff).sum(axis=2)


def _nearest(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # argmin returns the first minimum: ties go to the lowest cluster index
    return np.argmin(_sq_dists(X, centers), axis=1)


def _repair_empty(X: np.ndarray, labels: np.ndarray, centers: np.ndarray, k: int) -> np.ndarray:
    """Reseed each empty cluster with the point farthest from its own center."""
    labels = labels.copy()
    while True:
        sizes = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(sizes == 0)
        if not empty.size:
            return labels
        j = int(empty[0])
        d = ((X - centers[labels]) ** 2).sum(axis=1)
        # only points that leave a non-empty cluster behind are eligible
        d[sizes[labels] <= 1] = -1.0
        i = int(np.argmax(d))
        logger.warning(f"KMeans: cluster {j} went empty, reseeding it with point {i}")
        old = labels[i]
        labels[i] = j
        centers[j] = X[i]
        centers[old] = X[labels == old].mean(axis=0)


def _lloyd(X: np.ndarray, centers: np.ndarray, k: int, max_iter: int):
    labels = _repair_empty(X, _nearest(X, centers), centers, k)
    previous = math.inf
    for it in range(1, max_iter + 1):
        centers = cluster_means(X, labels, k)
        objective = wcss(X, labels, k)
        if objective > previous + _REL_EPS * max(1.0, previous):
            raise RuntimeError(f"KMeans: Lloyd WCSS increased from {previous!r} to {objective!r}")
        previous = objective
        # compared after repair, otherwise duplicate points can flip between two labelings
        new = _repair_empty(X, _nearest(X, centers), centers, k)
        if np.array_equal(new, labels):
            return labels, it
        labels = new
    logger.debug(f"KMeans: Lloyd stopped at max_iter={max_iter}")
    return labels, max_iter


def _macqueen(X: np.ndarray, centers: np.ndarray, k: int, max_iter: int):
    """Online passes: each reassignment updates the two affected means at once."""
    labels = _repair_empty(X, _nearest(X, centers), centers, k)
    centers = cluster_means(X, labels, k)
    sizes = np.bincount(labels, minlength=k).astype(float)
    for it in range(1, max_iter + 1):
        moved = False
        for i in range(len(X)):
            a = labels[i]
            j = int(np.argmin(((centers - X[i]) ** 2).sum(axis=1)))
            if j == a or sizes[a] <= 1:
                continue
            centers[a] = (centers[a] * sizes[a] - X[i]) / (sizes[a] - 1)
            centers[j] = (centers[j] * sizes[j] + X[i]) / (sizes[j] + 1)
            sizes[a] -= 1
            sizes[j] += 1
            labels[i] = j
            moved = True
        if not moved:
            return labels, it
    return labels, max_iter


def _hartigan_wong(X: np.ndarray, centers: np.ndarray, k: int, max_iter: int):
    """Move a point whenever the exact WCSS change of the transfer is negative."""
    labels = _repair_empty(X, _nearest(X, centers), centers, k)
    centers = cluster_means(X, labels, k)
    sizes = np.bincount(labels, minlength=k).astype(float)
    for it in range(1, max_iter + 1):
        moved = False
        for i in range(len(X)):
            a = labels[i]
            if sizes[a] <= 1:
                continue
            d2 = ((centers - X[i]) ** 2).sum(axis=1)
            removal = sizes[a] / (sizes[a] - 1) * d2[a]
            addition = sizes / (sizes + 1) * d2
            addition[a] = math.inf
            j = int(np.argmin(addition))
            if addition[j] >= removal * (1.0 - _REL_EPS):
                continue
            centers[a] = (centers[a] * sizes[a] - X[i]) / (sizes[a] - 1)
            centers[j] = (centers[j] * sizes[j] + X[i]) / (sizes[j] + 1)
            sizes[a] -= 1
            sizes[j] += 1
            labels[i] = j
            moved = True
        if not moved:
            return labels, it
    return labels, max_iter


_VARIANT_FNS = {"lloyd": _lloyd, "macqueen": _macqueen, "hartigan_wong": _hartigan_wong}


def _seed_pool(X: np.ndarray, k: int) -> Optional[np.ndarray]:
    """Indices of the first occurrence of each distinct point, or None if fewer than k."""
    _, first = np.unique(X, axis=0, return_index=True)
    pool = np.sort(first)
    return pool if len(pool) >= k else None


def _single_run(X: np.ndarray, k: int, variant: str, rng: SplitMix64, pool: Optional[np.ndarray], max_iter: int) -> _Run:
    if pool is not None:
        seeds = pool[rng.sample(len(pool), k)]
    else:
        seeds = np.array(rng.sample(len(X), k))
    centers = X[seeds].astype(float).copy()
    labels, iterations = _VARIANT_FNS[variant](X, centers, k, max_iter)
    # Lloyd polish leaves every point at its nearest center
    labels, polish = _lloyd(X, cluster_means(X, labels, k), k, max_iter)
    return _Run(objective=wcss(X, labels, k), labels=labels, iterations=iterations + polish)


def kmeans(
    points: PointSet,
    k: int,
    variant: Variant = "hartigan_wong",
    seed: Optional[int] = None,
    restarts: Optional[int] = None,
    max_iter: Optional[int] = None,
    workers: Optional[int] = None,
) -> ClusterResult:
    """Best-of-`restarts` k-means; the same seed always yields the same result."""
    check_k(points, k)
    if variant not in _VARIANT_FNS:
        raise ValueError(f"unknown k-means variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    seed = config.cluster.seed if seed is None else seed
    restarts = config.cluster.restarts if restarts is None else restarts
    max_iter = config.cluster.max_iter if max_iter is None else max_iter
    workers = config.cluster.workers if workers is None else workers
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")

    X = points.array
    pool = _seed_pool(X, k)
    if pool is None:
        logger.warning(f"KMeans: fewer than {k} distinct points, seeding with duplicates")

    def run(r: int) -> _Run:
        return _single_run(X, k, variant, SplitMix64.stream(seed, r), pool, max_iter)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            runs: List[_Run] = list(executor.map(run, range(restarts)))
    else:
        runs = [run(r) for r in range(restarts)]

    best = min(range(restarts), key=lambda r: (runs[r].objective, r))
    labels, _ = canonical_labels(runs[best].labels)
    logger.debug(f"KMeans: {variant} k={k} best restart {best}/{restarts} wcss={runs[best].objective:.6g}")
    return ClusterResult(
        assignment={pid: int(lab) for pid, lab in zip(points.ids, labels)},
        centers=cluster_means(X, labels, k).tolist(),
        objective=wcss(X, labels, k),
        method="kmeans",
        variant=variant,
        seed=seed,
        restarts=restarts,
        iterations=runs[best].iterations,
    )
