"""
Clustering: SplitMix64 streams, k-means variants, PAM k-medoids and the exhaustive oracle.
Run with: uv run pytest src/tests/test_cluster.py -v
"""
import numpy as np
import pytest

from src.cluster import (
    VARIANTS,
    ClusterResult,
    PointSet,
    SplitMix64,
    canonical_groups,
    kmeans,
    kmedoids_pam,
    partition_oracle,
    rand_index,
    restricted_growth_strings,
)
from src.errors import NonFiniteCoordinate, TooFewPoints, TooLarge

INVENTORY = {
    "SVK": 43, "CZE": 42, "UPS": 37, "UKR": 34, "RUS": 33, "POL": 32,
    "MAC": 31, "BUL": 30, "CRO": 30, "SRB": 30, "SLO": 25,
}


@pytest.fixture
def pairs():
    """Two well-separated pairs."""
    return PointSet.from_mapping({"a": (0, 0), "b": (0, 0.1), "c": (10, 10), "d": (10, 10.1)})


@pytest.fixture
def inventory():
    return PointSet.from_mapping({lang: (k,) for lang, k in INVENTORY.items()})


def random_points(rng, n):
    return PointSet.from_mapping({f"p{i}": tuple(rng.random(2)) for i in range(n)})


# ==============================================================================
# SECTION 1: RANDOM STREAMS
# ==============================================================================

class TestSplitMix64:
    def test_reference_sequence(self):
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ]

    def test_streams_are_reproducible_and_distinct(self):
        a = [SplitMix64.stream(7, 0).next_u64() for _ in range(3)]
        b = [SplitMix64.stream(7, 0).next_u64() for _ in range(3)]
        assert a == b
        assert SplitMix64.stream(7, 0).next_u64() != SplitMix64.stream(7, 1).next_u64()

    def test_below_stays_in_range(self):
        rng = SplitMix64(3)
        draws = [rng.below(6) for _ in range(600)]
        assert set(draws) == set(range(6))
        assert SplitMix64(3).below(1) == 0

    def test_sample(self):
        rng = SplitMix64(9)
        perm = rng.sample(10, 10)
        assert sorted(perm) == list(range(10))
        picked = rng.sample(20, 5)
        assert len(set(picked)) == 5
        assert all(0 <= p < 20 for p in picked)
        assert rng.sample(5, 0) == []

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            SplitMix64(1).below(0)
        with pytest.raises(ValueError):
            SplitMix64(1).sample(3, 4)


# ==============================================================================
# SECTION 2: POINT SETS
# ==============================================================================

class TestPointSet:
    def test_non_finite_coordinate(self):
        with pytest.raises(NonFiniteCoordinate):
            PointSet.from_mapping({"a": (0.0, float("nan"))})

    def test_mixed_dimensions(self):
        with pytest.raises(ValueError):
            PointSet.from_mapping({"a": (0.0, 1.0), "b": (2.0,)})

    def test_one_dimensional_array(self, inventory):
        assert inventory.array.shape == (11, 1)
        assert len(inventory) == 11


# ==============================================================================
# SECTION 3: K-MEANS
# ==============================================================================

class TestKMeans:
    @pytest.mark.parametrize("variant", VARIANTS)
    def test_separated_pairs(self, pairs, variant):
        result = kmeans(pairs, 2, variant=variant, seed=1, restarts=5)
        assert canonical_groups(result) == [["a", "b"], ["c", "d"]]
        assert result.objective == pytest.approx(0.01, rel=1e-9)
        assert result.method == "kmeans"
        assert result.variant == variant

    def test_labels_are_canonical(self, pairs):
        result = kmeans(pairs, 2, seed=3, restarts=4)
        assert result.assignment == {"a": 0, "b": 0, "c": 1, "d": 1}
        assert result.k == 2

    def test_same_seed_same_result(self, inventory):
        first = kmeans(inventory, 3, seed=11, restarts=10)
        assert kmeans(inventory, 3, seed=11, restarts=10) == first

    def test_thread_pool_does_not_change_result(self):
        points = random_points(np.random.default_rng(5), 30)
        for variant in VARIANTS:
            serial = kmeans(points, 4, variant=variant, seed=2, restarts=12, workers=1)
            threaded = kmeans(points, 4, variant=variant, seed=2, restarts=12, workers=4)
            assert threaded == serial

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_every_point_sits_at_its_nearest_center(self, variant):
        points = random_points(np.random.default_rng(8), 40)
        result = kmeans(points, 5, variant=variant, seed=4, restarts=3)
        X = points.array
        C = np.asarray(result.centers)
        d = ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
        labels = np.array([result.assignment[pid] for pid in points.ids])
        assert np.all(d[np.arange(len(X)), labels] <= d.min(axis=1) + 1e-12)

    def test_duplicate_points(self):
        points = PointSet.from_mapping({f"p{i}": (1.0, 2.0) for i in range(5)})
        for variant in VARIANTS:
            result = kmeans(points, 3, variant=variant, seed=0, restarts=3)
            assert result.objective == 0.0
            assert len(set(result.assignment.values())) == 3

    def test_k_out_of_range(self, pairs):
        with pytest.raises(TooFewPoints):
            kmeans(pairs, 5)
        with pytest.raises(ValueError):
            kmeans(pairs, 1)

    def test_bad_variant_and_restarts(self, pairs):
        with pytest.raises(ValueError, match="variant"):
            kmeans(pairs, 2, variant="elkan")
        with pytest.raises(ValueError, match="restarts"):
            kmeans(pairs, 2, restarts=0)


# ==============================================================================
# SECTION 4: K-MEDOIDS
# ==============================================================================

class TestKMedoids:
    def test_separated_pairs(self, pairs):
        result = kmedoids_pam(pairs, 2)
        assert canonical_groups(result) == [["a", "b"], ["c", "d"]]
        assert result.method == "kmedoids"
        assert result.metric == "euclidean"

    def test_line_manhattan(self):
        points = PointSet.from_mapping({"x0": (0,), "x1": (1,), "x10": (10,)})
        result = kmedoids_pam(points, 2, metric="manhattan")
        assert result.medoids == ["x1", "x10"]
        assert result.objective == 1.0
        assert canonical_groups(result) == [["x0", "x1"], ["x10"]]

    def test_inventory(self, inventory):
        for metric in ("euclidean", "manhattan"):
            result = kmedoids_pam(inventory, 3, metric=metric)
            assert sorted(result.medoids) == ["BUL", "SVK", "UKR"]
            assert result.objective == 13.0
            assert canonical_groups(result) == [
                ["BUL", "CRO", "MAC", "SLO", "SRB"],
                ["CZE", "SVK"],
                ["POL", "RUS", "UKR", "UPS"],
            ]

    def test_unknown_metric(self, pairs):
        with pytest.raises(ValueError):
            kmedoids_pam(pairs, 2, metric="cosine")


# ==============================================================================
# SECTION 5: EXHAUSTIVE ORACLE
# ==============================================================================

class TestOracle:
    @pytest.mark.parametrize("n,k,stirling", [(4, 2, 7), (5, 3, 25), (6, 2, 31), (11, 3, 28501)])
    def test_partition_count(self, n, k, stirling):
        strings = list(restricted_growth_strings(n, k))
        assert len(strings) == stirling
        assert len(set(strings)) == stirling
        assert all(s[0] == 0 and len(set(s)) == k for s in strings)

    def test_separated_pairs(self, pairs):
        result = partition_oracle(pairs, 2)
        assert canonical_groups(result) == [["a", "b"], ["c", "d"]]
        assert result.objective == pytest.approx(0.01, rel=1e-9)
        assert result.iterations == 7

    def test_inventory_optimum(self, inventory):
        result = partition_oracle(inventory, 3)
        assert canonical_groups(result) == [
            ["BUL", "CRO", "MAC", "POL", "RUS", "SRB", "UKR"],
            ["CZE", "SVK", "UPS"],
            ["SLO"],
        ]
        assert result.objective == pytest.approx(36.38095238095238, rel=1e-12)

    def test_medoid_cost(self):
        points = PointSet.from_mapping({"x0": (0,), "x1": (1,), "x10": (10,)})
        result = partition_oracle(points, 2, objective="medoid_cost", metric="manhattan")
        assert result.objective == 1.0
        assert result.variant == "medoid_cost"
        assert canonical_groups(result) == [["x0", "x1"], ["x10"]]
        assert result.medoids[1] == "x10"

    def test_size_guard(self):
        points = PointSet.from_mapping({f"p{i}": (float(i),) for i in range(13)})
        with pytest.raises(TooLarge):
            partition_oracle(points, 2)

    def test_kmeans_never_beats_the_oracle(self):
        rng = np.random.default_rng(2024)
        equal = 0
        for trial in range(100):
            points = random_points(rng, int(rng.integers(4, 11)))
            k = int(rng.integers(2, 4))
            best = partition_oracle(points, k).objective
            found = kmeans(points, k, seed=trial, restarts=50).objective
            assert found >= best - 1e-9
            equal += abs(found - best) <= 1e-9
        assert equal >= 95


# ==============================================================================
# SECTION 6: COMPARING CLUSTERINGS
# ==============================================================================

def labelled(assignment):
    return ClusterResult(assignment=assignment, centers=[[0.0]] * len(set(assignment.values())), objective=0.0, method="oracle")


class TestRandIndex:
    def test_identical(self, pairs):
        result = kmeans(pairs, 2, seed=1, restarts=2)
        assert rand_index(result, result) == 1.0

    def test_label_names_do_not_matter(self):
        a = labelled({"x": 0, "y": 0, "z": 1})
        assert rand_index(a, labelled({"x": 1, "y": 1, "z": 0})) == 1.0

    def test_partial_agreement(self):
        a = labelled({"x": 0, "y": 0, "z": 1})
        b = labelled({"x": 0, "y": 1, "z": 1})
        assert rand_index(a, b) == pytest.approx(1 / 3)
