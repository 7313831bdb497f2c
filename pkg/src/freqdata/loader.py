import io
import re
from pathlib import Path
from typing import BinaryIO, Dict, List, Literal, Union

import pandas as pd
from loguru import logger

from src.errors import DuplicateError, EmptyInput, NegativeCountError, ParseError, QvordError
from src.freqdata.tables import CategoryTable

TableFormat = Literal["long", "matrix"]

LONG_HEADER = ["language", "grapheme", "count"]
BUNDLED_SLAVIC = Path(__file__).resolve().parents[1] / "data" / "table1_slavic.tsv"

_INT = re.compile(r"-?\d+")


def _read_lines(stream: Union[BinaryIO, bytes, str, Path]) -> List[str]:
    if isinstance(stream, (str, Path)):
        raw = Path(stream).read_bytes()
    elif isinstance(stream, bytes):
        raw = stream
    else:
        raw = stream.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8 ({e.reason} at byte {e.start})")
    lines = text.split("\n")
    # A single trailing newline does not open a new row
    if lines and lines[-1] == "":
        lines.pop()
    return [l[:-1] if l.endswith("\r") else l for l in lines]


def _parse_count(cell: str, line: int) -> int:
    if not _INT.fullmatch(cell):
        raise ParseError(f"count {cell!r} is not an integer", line)
    value = int(cell)
    if value < 0:
        raise NegativeCountError(f"line {line}: negative count {value}")
    return value


def _load_long(lines: List[str]) -> Dict[str, CategoryTable]:
    if not lines or lines[0].split("\t") != LONG_HEADER:
        raise ParseError(f"expected header {'<TAB>'.join(LONG_HEADER)}", 1)

    rows = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, found {len(fields)}", lineno)
        language, grapheme, cell = fields
        if not language or not grapheme:
            raise ParseError("empty language or grapheme", lineno)
        if (language, grapheme) in seen:
            raise DuplicateError(f"line {lineno}: duplicate row ({language}, {grapheme})")
        seen.add((language, grapheme))
        rows.append((language, grapheme, _parse_count(cell, lineno)))

    if not rows:
        raise EmptyInput("long-format table has no data rows")

    df = pd.DataFrame(rows, columns=LONG_HEADER)
    tables = {}
    for language, group in df.groupby("language", sort=False):
        tables[language] = _build(language, group["grapheme"], group["count"])
    return tables


def _load_matrix(lines: List[str]) -> Dict[str, CategoryTable]:
    if not lines:
        raise EmptyInput("matrix-format table is empty")
    header = lines[0].split("\t")
    if len(header) < 2 or header[0] != "rank":
        raise ParseError("expected header rank<TAB><lang1>...", 1)
    languages = header[1:]
    if len(set(languages)) != len(languages) or any(not l for l in languages):
        dup = next((l for l in languages if languages.count(l) > 1), "")
        raise DuplicateError(f"line 1: duplicate or empty language column {dup!r}")

    rows = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) > len(header):
            raise ParseError(f"expected at most {len(header)} fields, found {len(fields)}", lineno)
        fields += [""] * (len(header) - len(fields))
        label = fields[0]
        if not label:
            raise ParseError("empty rank label", lineno)
        if label in seen:
            raise DuplicateError(f"line {lineno}: duplicate rank label {label!r}")
        seen.add(label)
        # Blank cell: category absent in that language; explicit 0 is a zero-count category
        rows.append([label] + [None if c == "" else _parse_count(c, lineno) for c in fields[1:]])

    if not rows:
        raise EmptyInput("matrix-format table has no data rows")

    df = pd.DataFrame(rows, columns=header).set_index("rank")
    tables = {}
    for language in languages:
        column = df[language].dropna()
        if column.empty:
            raise EmptyInput(f"language {language}: no categories")
        tables[language] = _build(language, column.index, column.astype(int))
    return tables


def _build(language: str, labels, counts) -> CategoryTable:
    try:
        return CategoryTable(
            labels=tuple(str(l) for l in labels),
            counts=tuple(int(c) for c in counts),
            name=language,
        )
    except QvordError as e:
        raise e.add_context(f"language {language}")


def load_tables(stream: Union[BinaryIO, bytes, str, Path], fmt: TableFormat = "long") -> Dict[str, CategoryTable]:
    """Parse a long or matrix TSV into one CategoryTable per language, in input order."""
    lines = _read_lines(stream)
    if fmt == "long":
        tables = _load_long(lines)
    elif fmt == "matrix":
        tables = _load_matrix(lines)
    else:
        raise ValueError(f"unknown table format {fmt!r}")
    logger.debug(f"Loader: parsed {len(tables)} {fmt} tables: {', '.join(tables)}")
    return tables


def save_tables(tables: Dict[str, CategoryTable], fmt: TableFormat = "long") -> bytes:
    """Inverse of load_tables. Cells are written raw (no quoting) so labels round-trip verbatim.

    Long format keeps each language's label order. Matrix format shares one row per label across
    all languages, so a language comes back with the same label-to-count mapping but its labels
    in first-seen order over the whole dict.
    """
    if fmt == "long":
        rows = [LONG_HEADER] + [
            [lang, label, str(count)] for lang, t in tables.items() for label, count in zip(t.labels, t.counts)
        ]
    elif fmt == "matrix":
        labels: List[str] = []
        known = set()
        for t in tables.values():
            for l in t.labels:
                if l not in known:
                    known.add(l)
                    labels.append(l)
        lookups = {lang: t.as_dict() for lang, t in tables.items()}
        rows = [["rank"] + list(tables)]
        for label in labels:
            rows.append([label] + [str(lookups[lang][label]) if label in lookups[lang] else "" for lang in tables])
    else:
        raise ValueError(f"unknown table format {fmt!r}")

    buf = io.StringIO()
    for row in rows:
        buf.write("\t".join(row) + "\n")
    return buf.getvalue().encode("utf-8")


def bundled_slavic() -> Dict[str, CategoryTable]:
    """The shipped grapheme rank-frequency table of eleven Slavic languages."""
    return load_tables(BUNDLED_SLAVIC, "matrix")
