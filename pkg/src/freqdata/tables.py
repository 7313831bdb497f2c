import unicodedata
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import EmptyInput, NegativeCountError


class CategoryTable(BaseModel):
    """Labeled non-negative counts over K categories. Zero-count categories count toward K."""
    model_config = ConfigDict(frozen=True)

    labels: Tuple[str, ...]
    counts: Tuple[int, ...]
    name: str = ""

    @model_validator(mode="after")
    def _check_invariants(self):
        if len(self.labels) != len(self.counts):
            raise ValueError(f"labels ({len(self.labels)}) and counts ({len(self.counts)}) differ in length")
        if not self.labels:
            raise EmptyInput(f"table '{self.name}' has no categories")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"table '{self.name}' has duplicate labels")
        negative = [l for l, c in zip(self.labels, self.counts) if c < 0]
        if negative:
            raise NegativeCountError(f"table '{self.name}': negative count for {negative[0]!r}")
        if sum(self.counts) < 1:
            raise EmptyInput(f"table '{self.name}' has total count 0")
        return self

    @classmethod
    def from_counts(cls, counts, labels=None, name: str = "") -> "CategoryTable":
        counts = tuple(int(c) for c in counts)
        if labels is None:
            labels = tuple(f"c{i + 1}" for i in range(len(counts)))
        return cls(labels=tuple(str(l) for l in labels), counts=counts, name=name)

    @property
    def N(self) -> int:
        return sum(self.counts)

    @property
    def K(self) -> int:
        return len(self.counts)

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.counts))


class RankedTable(BaseModel):
    """Counts in rank order; rank r is position r (1-based), rank 1 = most frequent."""
    model_config = ConfigDict(frozen=True)

    counts: Tuple[int, ...]
    labels: Tuple[str, ...]
    source: str = ""

    @model_validator(mode="after")
    def _check_order(self):
        if len(self.labels) != len(self.counts):
            raise ValueError("labels and counts differ in length")
        if any(a < b for a, b in zip(self.counts, self.counts[1:])):
            raise ValueError(f"ranked table '{self.source}' is not non-increasing")
        return self

    @property
    def N(self) -> int:
        return sum(self.counts)

    @property
    def K(self) -> int:
        return len(self.counts)

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, self.K + 1, dtype=float)


class Alphabet(BaseModel):
    """Grapheme inventory. Units may be multigraphs such as 'ch' or 'dž'."""
    model_config = ConfigDict(frozen=True)

    graphemes: Tuple[str, ...]
    fold_case: bool = False
    nfc: bool = True

    @model_validator(mode="after")
    def _check_units(self):
        if not self.graphemes:
            raise EmptyInput("alphabet is empty")
        if any(g == "" for g in self.graphemes):
            raise ValueError("alphabet contains an empty unit")
        units = self.units()
        if len(set(units)) != len(units):
            raise ValueError("alphabet units are not unique after case folding")
        return self

    def normalize(self, text: str) -> str:
        if self.nfc:
            text = unicodedata.normalize("NFC", text)
        if self.fold_case:
            text = text.casefold()
        return text

    def units(self) -> List[str]:
        return [self.normalize(g) for g in self.graphemes]


def rank_frequencies(table: CategoryTable) -> RankedTable:
    """Sort counts non-increasing; ties go to the ascending label."""
    pairs = sorted(zip(table.counts, table.labels), key=lambda cl: (-cl[0], cl[1]))
    return RankedTable(
        counts=tuple(c for c, _ in pairs),
        labels=tuple(l for _, l in pairs),
        source=table.name,
    )
