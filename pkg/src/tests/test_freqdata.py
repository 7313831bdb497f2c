"""
Frequency-table ingestion: TSV loaders, the bundled Slavic table, grapheme counting, ranking.
Run with: uv run pytest src/tests/test_freqdata.py -v
"""
import io
import warnings

import numpy as np
import pytest

from src.errors import DuplicateError, EmptyInput, NegativeCountError, NoMatchWarning, ParseError
from src.freqdata import (
    BUNDLED_SLAVIC,
    Alphabet,
    CategoryTable,
    bundled_slavic,
    count_graphemes,
    load_alphabet,
    load_tables,
    rank_frequencies,
    save_tables,
    tokenize,
)

INVENTORY = {
    "SVK": 43, "CZE": 42, "UPS": 37, "UKR": 34, "RUS": 33, "POL": 32,
    "MAC": 31, "BUL": 30, "CRO": 30, "SRB": 30, "SLO": 25,
}


@pytest.fixture(scope="module")
def slavic():
    return bundled_slavic()


# ==============================================================================
# SECTION 1: LOADERS
# ==============================================================================

class TestLongFormat:
    def test_simple_parse(self):
        tables = load_tables(b"language\tgrapheme\tcount\nx\ta\t3\nx\tb\t1\n", "long")
        x = tables["x"]
        assert x.labels == ("a", "b")
        assert x.counts == (3, 1)
        assert (x.N, x.K) == (4, 2)

    def test_languages_keep_input_order(self):
        data = b"language\tgrapheme\tcount\nz\ta\t1\nz\tb\t1\nm\ta\t2\nm\tb\t0\n"
        tables = load_tables(data, "long")
        assert list(tables) == ["z", "m"]
        # zero-count rows stay categories
        assert tables["m"].K == 2

    def test_accepts_stream_and_crlf(self):
        data = io.BytesIO(b"language\tgrapheme\tcount\r\nx\ta\t3\r\nx\tb\t1\r\n")
        assert load_tables(data, "long")["x"].counts == (3, 1)

    def test_bad_header(self):
        with pytest.raises(ParseError) as exc:
            load_tables(b"lang\tg\tc\nx\ta\t1\n", "long")
        assert exc.value.line == 1

    def test_non_integer_count_reports_line(self):
        with pytest.raises(ParseError) as exc:
            load_tables(b"language\tgrapheme\tcount\nx\ta\t3\nx\tb\tlots\n", "long")
        assert exc.value.line == 3
        assert "line 3" in str(exc.value)

    def test_wrong_field_count(self):
        with pytest.raises(ParseError):
            load_tables(b"language\tgrapheme\tcount\nx\ta\n", "long")

    def test_negative_count_is_value_error(self):
        with pytest.raises(NegativeCountError):
            load_tables(b"language\tgrapheme\tcount\nx\ta\t-1\nx\tb\t2\n", "long")
        with pytest.raises(ValueError):
            load_tables(b"language\tgrapheme\tcount\nx\ta\t-1\nx\tb\t2\n", "long")

    def test_duplicate_row(self):
        with pytest.raises(DuplicateError):
            load_tables(b"language\tgrapheme\tcount\nx\ta\t1\nx\ta\t2\n", "long")

    def test_header_only_is_empty(self):
        with pytest.raises(EmptyInput):
            load_tables(b"language\tgrapheme\tcount\n", "long")

    def test_all_zero_language_is_empty(self):
        with pytest.raises(EmptyInput) as exc:
            load_tables(b"language\tgrapheme\tcount\nx\ta\t0\nx\tb\t0\n", "long")
        assert "language x" in str(exc.value)

    def test_invalid_utf8(self):
        with pytest.raises(ParseError):
            load_tables(b"language\tgrapheme\tcount\nx\t\xff\t1\n", "long")


class TestMatrixFormat:
    def test_blank_is_absent_zero_is_category(self):
        data = b"rank\tA\tB\n1\t5\t4\n2\t3\t0\n3\t1\t\n"
        tables = load_tables(data, "matrix")
        assert tables["A"].counts == (5, 3, 1)
        assert tables["B"].counts == (4, 0)
        assert tables["B"].labels == ("1", "2")

    def test_duplicate_language_column(self):
        with pytest.raises(DuplicateError):
            load_tables(b"rank\tA\tA\n1\t1\t1\n", "matrix")

    def test_too_many_fields(self):
        with pytest.raises(ParseError) as exc:
            load_tables(b"rank\tA\n1\t1\t2\n", "matrix")
        assert exc.value.line == 2


class TestRoundTrip:
    @pytest.mark.parametrize("fmt", ["long", "matrix"])
    def test_save_then_load_is_identity(self, fmt):
        tables = {
            "x": CategoryTable.from_counts([7, 0, 2], labels=["a", "b", "c"], name="x"),
            "y": CategoryTable.from_counts([1, 4], labels=["a", "d"], name="y"),
        }
        loaded = load_tables(save_tables(tables, fmt), fmt)
        assert list(loaded) == ["x", "y"]
        for name, t in tables.items():
            assert loaded[name].as_dict() == t.as_dict()

    def test_matrix_keeps_mapping_not_label_order(self):
        tables = {
            "x": CategoryTable.from_counts([7, 2], labels=["a", "b"], name="x"),
            "y": CategoryTable.from_counts([4, 2], labels=["b", "a"], name="y"),
        }
        y = load_tables(save_tables(tables, "matrix"), "matrix")["y"]
        assert y.labels == ("a", "b")
        assert y.counts == (2, 4)
        assert y.as_dict() == {"b": 4, "a": 2}

    def test_long_keeps_label_order(self):
        tables = {"y": CategoryTable.from_counts([4, 2], labels=["b", "a"], name="y")}
        y = load_tables(save_tables(tables, "long"), "long")["y"]
        assert (y.labels, y.counts) == (("b", "a"), (4, 2))

    def test_bundled_table_round_trips(self, slavic):
        loaded = load_tables(save_tables(slavic, "matrix"), "matrix")
        assert {k: v.counts for k, v in loaded.items()} == {k: v.counts for k, v in slavic.items()}


# ==============================================================================
# SECTION 2: BUNDLED SLAVIC TABLE
# ==============================================================================

class TestBundledTable:
    def test_asset_name(self):
        assert BUNDLED_SLAVIC.name == "table1_slavic.tsv"
        assert BUNDLED_SLAVIC.parent.name == "data"
        assert BUNDLED_SLAVIC.is_file()

    def test_inventory_sizes(self, slavic):
        assert {name: t.K for name, t in slavic.items()} == INVENTORY

    def test_slovene_column(self, slavic):
        slo = slavic["SLO"]
        assert slo.K == 25
        assert slo.counts[:2] == (30849, 29708)
        assert slo.N == 288871

    def test_russian_keeps_trailing_zero(self, slavic):
        rus = slavic["RUS"]
        assert rus.K == 33
        assert rus.counts[-1] == 0

    def test_columns_are_already_ranked(self, slavic):
        for t in slavic.values():
            assert rank_frequencies(t).counts == t.counts


# ==============================================================================
# SECTION 3: GRAPHEME COUNTING
# ==============================================================================

class TestGraphemes:
    def test_simple_count(self):
        t = count_graphemes("baba", Alphabet(graphemes=("a", "b")))
        assert t.as_dict() == {"a": 2, "b": 2}

    def test_longest_match_multigraph(self):
        alphabet = Alphabet(graphemes=("a", "c", "h", "ch"))
        t = count_graphemes("chcha", alphabet)
        assert t.as_dict() == {"a": 1, "c": 0, "h": 0, "ch": 2}
        assert t.K == 4

    def test_fold_case_skips_other_characters(self):
        t = count_graphemes("B a!", Alphabet(graphemes=("a", "b"), fold_case=True))
        assert t.as_dict() == {"a": 1, "b": 1}

    def test_case_sensitive_by_default(self):
        t = count_graphemes("Bab", Alphabet(graphemes=("a", "b")))
        assert t.as_dict() == {"a": 1, "b": 1}

    def test_nfc_matches_decomposed_text(self):
        alphabet = Alphabet(graphemes=("\u00e9", "e"))
        t = count_graphemes("e\u0301e", alphabet)
        assert t.as_dict() == {"\u00e9": 1, "e": 1}

    def test_n_equals_consumed_units(self):
        alphabet = Alphabet(graphemes=("d", "z", "ž", "dž", "dz", "a"))
        text = "džadzazž d!"
        t = count_graphemes(text, alphabet)
        assert t.N == len(tokenize(text, alphabet))
        assert tokenize(text, alphabet) == ["dž", "a", "dz", "a", "z", "ž", "d"]

    def test_no_match_warns_then_rejects(self):
        with pytest.warns(NoMatchWarning):
            with pytest.raises(EmptyInput):
                count_graphemes("xyz", Alphabet(graphemes=("a", "b")))

    def test_empty_text(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            with pytest.raises(EmptyInput):
                count_graphemes("", Alphabet(graphemes=("a",)))

    def test_alphabet_rejects_case_collisions(self):
        with pytest.raises(ValueError):
            Alphabet(graphemes=("a", "A"), fold_case=True)
        assert Alphabet(graphemes=("a", "A")).units() == ["a", "A"]

    def test_load_alphabet_file(self, tmp_path):
        path = tmp_path / "alphabet.txt"
        path.write_text("# Czech digraph\nch\n\na\nc\n", encoding="utf-8")
        alphabet = load_alphabet(path)
        assert alphabet.graphemes == ("ch", "a", "c")


# ==============================================================================
# SECTION 4: RANKING
# ==============================================================================

class TestRanking:
    def test_sorts_non_increasing(self):
        ranked = rank_frequencies(CategoryTable.from_counts([1, 5, 3], labels=["a", "b", "c"]))
        assert ranked.counts == (5, 3, 1)
        assert ranked.labels == ("b", "c", "a")

    def test_ties_follow_label(self):
        ranked = rank_frequencies(CategoryTable.from_counts([2, 2], labels=["b", "a"]))
        assert ranked.counts == (2, 2)
        assert ranked.labels == ("a", "b")

    def test_random_tables_keep_multiset(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            counts = rng.integers(0, 50, size=rng.integers(2, 12)).tolist()
            counts[0] += 1
            ranked = rank_frequencies(CategoryTable.from_counts(counts))
            assert sorted(ranked.counts) == sorted(counts)
            assert all(a >= b for a, b in zip(ranked.counts, ranked.counts[1:]))

    def test_single_category_is_allowed(self):
        t = CategoryTable.from_counts([4])
        assert (t.N, t.K) == (4, 1)
