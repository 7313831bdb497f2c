from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.cluster.points import ClusterResult
from src.config import config
from src.errors import ParseError
from src.indices.qualitative import IndexSummary, ModifiedPoint
from src.moments.empirical import MomentSummary, OrdPoint

CoordMode = Literal["original", "modified", "inventory"]
Method = Literal["kmeans", "kmedoids", "oracle"]


class RunConfig(BaseModel):
    """One pipeline run: input, coordinates, clustering and outputs."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    # None means the bundled Slavic table asset
    input_path: Optional[str] = None
    fmt: Literal["long", "matrix"] = "long"
    coords: CoordMode = "modified"
    method: Method = "kmeans"
    variant: Literal["lloyd", "macqueen", "hartigan_wong"] = "hartigan_wong"
    metric: Literal["euclidean", "manhattan"] = "euclidean"
    k: int = Field(default=3, ge=2)
    seed: int = Field(default_factory=lambda: config.cluster.seed)
    restarts: int = Field(default_factory=lambda: config.cluster.restarts, ge=1)
    output_json: Optional[str] = None
    output_csv: Optional[str] = None
    output_svg: Optional[str] = None
    overlay: bool = False

    @field_validator("coords", mode="before")
    @classmethod
    def _coords_alias(cls, v):
        return "inventory" if v == "inventory_size" else v

    @field_validator("variant", mode="before")
    @classmethod
    def _variant_alias(cls, v):
        return v.replace("-", "_") if isinstance(v, str) else v

    @model_validator(mode="after")
    def _check_outputs(self):
        if self.coords == "inventory" and self.output_svg:
            raise ValueError("inventory sizes are one-dimensional; no scatter plot can be drawn")
        return self

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ParseError(f"invalid YAML: {e}").add_context(str(path))
        if not isinstance(data, dict):
            raise ParseError("run configuration must be a mapping").add_context(str(path))
        return cls.model_validate(data)


class LanguageRecord(BaseModel):
    """Everything computed for one language. Optional parts are None when undefined."""
    model_config = ConfigDict(frozen=True)

    language: str
    N: int
    K: int
    indices: Optional[IndexSummary] = None
    moments: Optional[MomentSummary] = None
    ord_point: Optional[OrdPoint] = None
    modified_point: Optional[ModifiedPoint] = None
    im_closed_form_quoted: Optional[float] = None
    # The vector that was clustered
    coordinates: List[float]


class Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: str
    run_config: RunConfig
    languages: List[LanguageRecord]
    clusters: ClusterResult

    @model_validator(mode="after")
    def _one_record_per_language(self):
        names = [r.language for r in self.languages]
        if len(set(names)) != len(names):
            raise ValueError("a language appears more than once in the report")
        if set(names) != set(self.clusters.assignment):
            raise ValueError("cluster assignment does not cover exactly the reported languages")
        return self

    def record(self, language: str) -> LanguageRecord:
        for r in self.languages:
            if r.language == language:
                return r
        raise KeyError(language)


class CombinationOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    coords: CoordMode
    method: Method
    variant: Optional[str] = None
    metric: Optional[str] = None
    groups: List[List[str]]
    result: ClusterResult


class ReproductionReport(BaseModel):
    """The full Slavic-languages experiment on the bundled table."""
    model_config = ConfigDict(frozen=True)

    version: str
    seed: int
    restarts: int
    inventory_sizes: Dict[str, int]
    # coordinate mode -> language -> clustered vector
    coordinates: Dict[str, Dict[str, List[float]]]
    outcomes: List[CombinationOutcome]
    modified_consistent: bool
    original_matches_inventory: bool
    ups_migrates_under_kmedoids: bool

    def outcome(self, coords: str, method: str, variant: Optional[str] = None, metric: Optional[str] = None) -> CombinationOutcome:
        for o in self.outcomes:
            if (o.coords, o.method, o.variant, o.metric) == (coords, method, variant, metric):
                return o
        raise KeyError((coords, method, variant, metric))
