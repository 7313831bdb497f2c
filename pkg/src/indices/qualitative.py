import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import entr

from src.errors import DegenerateCategories, DegenerateDistribution
from src.freqdata.tables import CategoryTable


class IndexSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    va: float
    sda: float
    re: float
    rr_norm: float


class ModifiedPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    i_m: float
    s_m: float
    source: IndexSummary


def _require_categories(table: CategoryTable) -> None:
    if table.K < 2:
        raise DegenerateCategories(f"table '{table.name}' has K={table.K}; indices need K >= 2")


def _sorted_counts(table: CategoryTable) -> np.ndarray:
    # Ascending order makes every floating sum independent of category order
    return np.sort(np.asarray(table.counts, dtype=np.int64))


def _clip_unit(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def dispersion_ratio(table: CategoryTable) -> float:
    """Sum (f_i - N/K)^2 / (N^2 (K-1)/K), evaluated as an exact integer fraction."""
    _require_categories(table)
    f = _sorted_counts(table)
    n, k = int(f.sum()), table.K
    sum_sq = sum(int(c) * int(c) for c in f)
    # Sum (f - N/K)^2 = Sum f^2 - N^2/K, so the ratio is (K Sum f^2 - N^2) / (N^2 (K-1))
    return _clip_unit((k * sum_sq - n * n) / (n * n * (k - 1)))


def va(table: CategoryTable) -> float:
    """Variance analogue: 0 when one category holds everything, 1 for the uniform table."""
    return _clip_unit(1.0 - dispersion_ratio(table))


def sda(table: CategoryTable) -> float:
    """Standard deviation analogue, 1 - sqrt(1 - VA).

    Evaluated as VA / (1 + sqrt(1 - VA)) from the rounded VA, so SDA and I_m stay tied to VA
    near the uniform table and near the one-category table.
    """
    v = va(table)
    return _clip_unit(v / (1.0 + math.sqrt(1.0 - v)))


def re(table: CategoryTable) -> float:
    """Relativized entropy, natural logarithm, with 0 ln 0 = 0."""
    _require_categories(table)
    p = _sorted_counts(table) / table.N
    return _clip_unit(math.fsum(entr(p)) / math.log(table.K))


def rr_norm(table: CategoryTable) -> float:
    """Normalized repeat rate K/(K-1) (1 - Sum f^2 / N^2)."""
    _require_categories(table)
    f = _sorted_counts(table)
    n, k = int(f.sum()), table.K
    sum_sq = sum(int(c) * int(c) for c in f)
    return _clip_unit((k * (n * n - sum_sq)) / ((k - 1) * n * n))


def summarize(table: CategoryTable) -> IndexSummary:
    return IndexSummary(va=va(table), sda=sda(table), re=re(table), rr_norm=rr_norm(table))


def modified_coords(table: CategoryTable) -> ModifiedPoint:
    """I_m = SDA / VA and S_m = RE / SDA."""
    summary = summarize(table)
    if summary.va == 0.0 or summary.sda == 0.0:
        raise DegenerateDistribution(
            f"table '{table.name}' is concentrated in a single category; modified coordinates are undefined"
        )
    return ModifiedPoint(i_m=summary.sda / summary.va, s_m=summary.re / summary.sda, source=summary)


def im_closed_form_quoted(table: CategoryTable) -> float:
    """1 + sqrt(ratio): the simplified I_m form as usually quoted.

    It is the reciprocal of SDA/VA, which equals 1 / (1 + sqrt(ratio)). Reported next to
    I_m for comparison only.
    """
    return 1.0 + math.sqrt(dispersion_ratio(table))
