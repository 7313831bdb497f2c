from src.indices.qualitative import (
    IndexSummary,
    ModifiedPoint,
    dispersion_ratio,
    im_closed_form_quoted,
    modified_coords,
    re,
    rr_norm,
    sda,
    summarize,
    va,
)

__all__ = [
    "IndexSummary",
    "ModifiedPoint",
    "dispersion_ratio",
    "im_closed_form_quoted",
    "modified_coords",
    "re",
    "rr_norm",
    "sda",
    "summarize",
    "va",
]
