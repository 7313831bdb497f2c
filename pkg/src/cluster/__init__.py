from src.cluster.kmeans import VARIANTS, kmeans
from src.cluster.kmedoids import kmedoids_pam
from src.cluster.oracle import partition_oracle, restricted_growth_strings
from src.cluster.points import ClusterResult, PointSet, canonical_groups, rand_index, wcss
from src.cluster.rng import SplitMix64

__all__ = [
    "ClusterResult",
    "PointSet",
    "SplitMix64",
    "VARIANTS",
    "canonical_groups",
    "kmeans",
    "kmedoids_pam",
    "partition_oracle",
    "rand_index",
    "restricted_growth_strings",
    "wcss",
]
