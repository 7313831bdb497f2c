"""
Empirical rank moments and original Ord coordinates.
Run with: uv run pytest src/tests/test_moments.py -v
"""
import numpy as np
import pytest

from src.errors import DegenerateDistribution, EmptyInput
from src.freqdata import CategoryTable, RankedTable, bundled_slavic, rank_frequencies
from src.moments import empirical_moments, ord_coords, ord_point, weighted_moments


def ranked(*counts):
    return rank_frequencies(CategoryTable.from_counts(counts))


def naive_moments(counts):
    """Expand every rank r into f_r copies and take plain population moments."""
    values = np.repeat(np.arange(1, len(counts) + 1, dtype=float), counts)
    mean = values.mean()
    return mean, ((values - mean) ** 2).mean(), ((values - mean) ** 3).mean()


class TestEmpiricalMoments:
    def test_two_point_symmetric(self):
        m = empirical_moments(ranked(1, 1))
        assert (m.mean, m.mu2, m.mu3) == (1.5, 0.25, 0.0)

    def test_single_rank(self):
        m = empirical_moments(ranked(4))
        assert (m.mean, m.mu2, m.mu3) == (1.0, 0.0, 0.0)

    def test_two_one_one(self):
        m = empirical_moments(ranked(2, 1, 1))
        assert m.mean == pytest.approx(1.75, abs=1e-15)
        assert m.mu2 == pytest.approx(0.6875, abs=1e-15)
        assert m.mu3 == pytest.approx(0.28125, abs=1e-15)

    def test_zero_total_is_empty(self):
        with pytest.raises(EmptyInput):
            empirical_moments(RankedTable(counts=(0, 0), labels=("a", "b")))

    def test_weighted_moments_normalizes(self):
        a = weighted_moments([1, 2, 3], [2, 1, 1])
        b = weighted_moments([1, 2, 3], [0.5, 0.25, 0.25])
        assert a == b


class TestOrdCoordinates:
    def test_two_point(self):
        p = ord_point(CategoryTable.from_counts([1, 1]))
        assert p.i == pytest.approx(1 / 6, rel=1e-15)
        assert p.s == 0.0

    def test_zero_variance(self):
        with pytest.raises(DegenerateDistribution):
            ord_coords(empirical_moments(ranked(4)))

    def test_russian_golden(self):
        p = ord_point(bundled_slavic()["RUS"])
        assert p.i == pytest.approx(5.4492784596835975, rel=1e-10)
        assert p.s == pytest.approx(6.1939852100732287, rel=1e-10)

    def test_slovene_golden(self):
        p = ord_point(bundled_slavic()["SLO"])
        assert p.i == pytest.approx(4.3644295377165641, rel=1e-10)
        assert p.s == pytest.approx(4.5886800807684578, rel=1e-10)


class TestProperties:
    @pytest.fixture
    def rng(self):
        return np.random.default_rng(11)

    def test_matches_expanded_list(self, rng):
        for _ in range(1000):
            counts = sorted(rng.integers(0, 20, size=int(rng.integers(1, 9))).tolist(), reverse=True)
            counts[0] += 1
            m = empirical_moments(RankedTable(counts=tuple(counts), labels=tuple(map(str, range(len(counts))))))
            mean, mu2, mu3 = naive_moments(counts)
            assert m.mean == pytest.approx(mean, abs=1e-9)
            assert m.mu2 == pytest.approx(mu2, abs=1e-9)
            assert m.mu3 == pytest.approx(mu3, abs=1e-9)

    def test_symmetric_profiles_have_no_skew(self, rng):
        for _ in range(200):
            half = rng.integers(1, 30, size=int(rng.integers(1, 6))).tolist()
            profile = half + half[::-1]
            m = weighted_moments(np.arange(1, len(profile) + 1), profile)
            assert abs(m.mu3) <= 1e-9

    def test_reflection_negates_skew(self, rng):
        for _ in range(200):
            counts = rng.integers(0, 30, size=int(rng.integers(2, 10))).tolist()
            counts[0] += 1
            counts[-1] += 1
            ranks = np.arange(1, len(counts) + 1)
            forward = weighted_moments(ranks, counts)
            reverse = weighted_moments(ranks, counts[::-1])
            assert reverse.mu2 == pytest.approx(forward.mu2, rel=1e-12, abs=1e-12)
            assert reverse.mu3 == pytest.approx(-forward.mu3, rel=1e-9, abs=1e-9)

    def test_scale_free_in_n(self, rng):
        for _ in range(200):
            counts = sorted(rng.integers(1, 40, size=int(rng.integers(2, 10))).tolist(), reverse=True)
            factor = int(rng.integers(2, 50))
            a = ord_point(CategoryTable.from_counts(counts))
            b = ord_point(CategoryTable.from_counts([c * factor for c in counts]))
            assert b.i == pytest.approx(a.i, rel=1e-12)
            assert b.s == pytest.approx(a.s, rel=1e-12, abs=1e-12)
