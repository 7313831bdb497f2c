import re
import warnings
from collections import Counter
from pathlib import Path
from typing import List, Union

from loguru import logger

from src.errors import EmptyInput, NoMatchWarning
from src.freqdata.tables import Alphabet, CategoryTable


def load_alphabet(source: Union[str, Path], fold_case: bool = False, nfc: bool = True) -> Alphabet:
    """Read an alphabet file: one grapheme per line, '#' comment lines and blank lines ignored."""
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    units = []
    for line in text.splitlines():
        unit = line.strip()
        if not unit or unit.startswith("#"):
            continue
        units.append(unit)
    logger.debug(f"Alphabet: {len(units)} units from {path}")
    return Alphabet(graphemes=tuple(units), fold_case=fold_case, nfc=nfc)


def _unit_pattern(alphabet: Alphabet) -> re.Pattern:
    # Longer units first: the regex alternation then takes the longest match at each position
    units = sorted(set(alphabet.units()), key=lambda u: (-len(u), u))
    return re.compile("|".join(re.escape(u) for u in units))


def tokenize(text: str, alphabet: Alphabet) -> List[str]:
    """Greedy longest-match tokenization; characters starting no unit are skipped."""
    return _unit_pattern(alphabet).findall(alphabet.normalize(text))


def count_graphemes(text: str, alphabet: Alphabet, name: str = "") -> CategoryTable:
    """Count alphabet units in text. Every unit is a category, so K == len(alphabet)."""
    if not text:
        raise EmptyInput("text is empty")

    found = Counter(tokenize(text, alphabet))
    if not found:
        warnings.warn(f"no alphabet unit matched in {len(text)} characters of text", NoMatchWarning)
        logger.warning(f"Graphemes: no unit of a {len(alphabet.graphemes)}-unit alphabet matched the text")
        raise EmptyInput("no alphabet unit occurs in the text")

    # Labels keep the alphabet's own spelling; counts are keyed by the normalized unit
    counts = [found.get(unit, 0) for unit in alphabet.units()]
    logger.debug(f"Graphemes: {sum(counts)} units counted over {len(counts)} categories")
    return CategoryTable(labels=tuple(alphabet.graphemes), counts=tuple(counts), name=name)
