from src.freqdata.tables import Alphabet, CategoryTable, RankedTable, rank_frequencies
from src.freqdata.loader import BUNDLED_SLAVIC, bundled_slavic, load_tables, save_tables
from src.freqdata.graphemes import count_graphemes, load_alphabet, tokenize

__all__ = [
    "Alphabet",
    "CategoryTable",
    "RankedTable",
    "rank_frequencies",
    "BUNDLED_SLAVIC",
    "bundled_slavic",
    "load_tables",
    "save_tables",
    "count_graphemes",
    "load_alphabet",
    "tokenize",
]
