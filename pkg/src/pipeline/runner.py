import io
import json
from pathlib import Path
from typing import Callable, Dict, List, Optional, TypeVar, Union

import pandas as pd
from loguru import logger
from pydantic import ValidationError

from src import __version__
from src.cluster import (
    VARIANTS,
    ClusterResult,
    PointSet,
    canonical_groups,
    kmeans,
    kmedoids_pam,
    partition_oracle,
)
from src.config import config
from src.errors import DataError, NumericError, ParseError, QvordError
from src.freqdata import CategoryTable, bundled_slavic, load_tables
from src.indices import im_closed_form_quoted, modified_coords, summarize
from src.moments import empirical_moments, ord_coords
from src.freqdata.tables import rank_frequencies
from src.pipeline.models import (
    CombinationOutcome,
    CoordMode,
    LanguageRecord,
    Report,
    ReproductionReport,
    RunConfig,
)
from src.pipeline.storage import ReportStorage
from src.pipeline.svg import render_scatter

T = TypeVar("T")

AXIS_LABELS = {"original": ("I", "S"), "modified": ("I_m", "S_m")}


def _optional(what: str, fn: Callable[[CategoryTable], T], table: CategoryTable, required: bool) -> Optional[T]:
    try:
        return fn(table)
    except NumericError as e:
        if required:
            raise
        logger.warning(f"Pipeline: {what} undefined for {table.name}: {e.message}")
        return None


def build_record(table: CategoryTable, coords: CoordMode) -> LanguageRecord:
    """Indices, moments and coordinates of one language; the chosen coordinates must exist."""
    indices = _optional("indices", summarize, table, coords == "modified")
    modified = _optional("modified coordinates", modified_coords, table, coords == "modified")
    moments = empirical_moments(rank_frequencies(table))
    ord_pt = _optional("Ord coordinates", lambda _: ord_coords(moments), table, coords == "original")
    quoted = _optional("quoted I_m form", im_closed_form_quoted, table, False)

    if coords == "modified":
        vector = [modified.i_m, modified.s_m]
    elif coords == "original":
        vector = [ord_pt.i, ord_pt.s]
    else:
        vector = [float(table.K)]
    return LanguageRecord(
        language=table.name,
        N=table.N,
        K=table.K,
        indices=indices,
        moments=moments,
        ord_point=ord_pt,
        modified_point=modified,
        im_closed_form_quoted=quoted,
        coordinates=vector,
    )


def build_records(tables: Dict[str, CategoryTable], coords: CoordMode) -> List[LanguageRecord]:
    records = []
    for language, table in tables.items():
        try:
            records.append(build_record(table, coords))
        except QvordError as e:
            raise e.add_context(f"language {language}")
    return records


def points_of(records: List[LanguageRecord]) -> PointSet:
    return PointSet.from_mapping({r.language: r.coordinates for r in records})


def cluster_points(points: PointSet, cfg: RunConfig) -> ClusterResult:
    if cfg.method == "kmeans":
        return kmeans(points, cfg.k, variant=cfg.variant, seed=cfg.seed, restarts=cfg.restarts)
    if cfg.method == "kmedoids":
        return kmedoids_pam(points, cfg.k, metric=cfg.metric)
    return partition_oracle(points, cfg.k)


def _load_input(cfg: RunConfig) -> Dict[str, CategoryTable]:
    if cfg.input_path is None:
        return bundled_slavic()
    try:
        return load_tables(Path(cfg.input_path), cfg.fmt)
    except QvordError as e:
        raise e.add_context(cfg.input_path)
    except OSError as e:
        raise DataError(f"cannot read input: {e.strerror}").add_context(cfg.input_path)


def run(cfg: RunConfig) -> Report:
    """Load, compute coordinates, cluster. Nothing is written here."""
    tables = _load_input(cfg)
    logger.info(f"Pipeline: {len(tables)} languages from {cfg.input_path or 'bundled Slavic table'}, coords={cfg.coords}")
    records = build_records(tables, cfg.coords)
    clusters = cluster_points(points_of(records), cfg)
    logger.info(f"Pipeline: {cfg.method} k={cfg.k} objective={clusters.objective:.6g}")
    return Report(version=__version__, run_config=cfg, languages=records, clusters=clusters)


def report_json(report: Report) -> str:
    return ReportStorage.dumps(report.model_dump(mode="json"))


def report_csv(report: Report) -> str:
    rows = []
    for r in report.languages:
        row = {"language": r.language, "N": r.N, "K": r.K}
        if r.indices is not None:
            row.update(r.indices.model_dump())
        if r.moments is not None:
            row.update(r.moments.model_dump())
        if r.ord_point is not None:
            row.update(i=r.ord_point.i, s=r.ord_point.s)
        if r.modified_point is not None:
            row.update(i_m=r.modified_point.i_m, s_m=r.modified_point.s_m)
        row["cluster"] = report.clusters.assignment[r.language]
        rows.append(row)
    buf = io.StringIO()
    pd.DataFrame(rows).to_csv(buf, index=False, lineterminator="\n")
    return buf.getvalue()


def report_svg(report: Report, overlay: Optional[bool] = None) -> str:
    cfg = report.run_config
    if cfg.coords == "inventory":
        raise ValueError("inventory sizes are one-dimensional; no scatter plot can be drawn")
    return render_scatter(
        points_of(report.languages),
        report.clusters,
        overlay=cfg.overlay if overlay is None else overlay,
        axis_labels=AXIS_LABELS[cfg.coords],
    )


def write_outputs(report: Report) -> List[Path]:
    """Write every output the run configuration names. All documents are built before any file is touched."""
    cfg = report.run_config
    pending = []
    if cfg.output_json:
        pending.append((Path(cfg.output_json), report_json(report)))
    if cfg.output_csv:
        pending.append((Path(cfg.output_csv), report_csv(report)))
    if cfg.output_svg:
        pending.append((Path(cfg.output_svg), report_svg(report)))
    for path, content in pending:
        ReportStorage.atomic_write(path, content)
        logger.info(f"Pipeline: wrote {path}")
    return [p for p, _ in pending]


def load_report(path: Union[str, Path]) -> Report:
    try:
        payload = ReportStorage.read_json(path)
        return Report.model_validate(payload)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno).add_context(str(path))
    except ValidationError as e:
        raise ParseError(f"not a qvord report ({e.error_count()} validation errors)").add_context(str(path))
    except OSError as e:
        raise DataError(f"cannot read report: {e.strerror}").add_context(str(path))


def recluster(report: Report) -> ClusterResult:
    """Cluster the stored coordinates again with the stored configuration."""
    return cluster_points(points_of(report.languages), report.run_config)


def _combinations():
    for variant in VARIANTS:
        yield "kmeans", variant, None
    for metric in ("euclidean", "manhattan"):
        yield "kmedoids", None, metric
    yield "oracle", "wcss", None


def _same_cluster(groups: List[List[str]], *ids: str) -> bool:
    return any(all(i in g for i in ids) for g in groups)


def reproduce(seed: Optional[int] = None, restarts: Optional[int] = None, k: int = 3) -> ReproductionReport:
    """Run every clustering combination on the bundled table in all three coordinate modes."""
    seed = config.cluster.seed if seed is None else seed
    restarts = config.cluster.restarts if restarts is None else restarts
    tables = bundled_slavic()

    coordinates: Dict[str, Dict[str, List[float]]] = {}
    outcomes: List[CombinationOutcome] = []
    for coords in ("modified", "original", "inventory"):
        records = build_records(tables, coords)
        points = points_of(records)
        coordinates[coords] = {r.language: r.coordinates for r in records}
        for method, variant, metric in _combinations():
            cfg = RunConfig(
                coords=coords,
                method=method,
                variant=variant if method == "kmeans" else "hartigan_wong",
                metric=metric or "euclidean",
                k=k,
                seed=seed,
                restarts=restarts,
            )
            result = cluster_points(points, cfg)
            groups = canonical_groups(result)
            logger.info(f"Reproduce: {coords} {method} {variant or metric}: {groups}")
            outcomes.append(CombinationOutcome(
                coords=coords, method=method, variant=variant, metric=metric, groups=groups, result=result,
            ))

    def groups(coords, method, variant=None, metric=None):
        for o in outcomes:
            if (o.coords, o.method, o.variant, o.metric) == (coords, method, variant, metric):
                return o.groups
        raise KeyError((coords, method, variant, metric))

    modified = [o.groups for o in outcomes if o.coords == "modified" and o.method != "oracle"]
    pam = [groups("inventory", "kmedoids", metric=m) for m in ("euclidean", "manhattan")]
    return ReproductionReport(
        version=__version__,
        seed=seed,
        restarts=restarts,
        inventory_sizes={name: t.K for name, t in tables.items()},
        coordinates=coordinates,
        outcomes=outcomes,
        modified_consistent=all(g == modified[0] for g in modified),
        original_matches_inventory=groups("original", "kmeans", "hartigan_wong") == groups("inventory", "oracle", "wcss"),
        ups_migrates_under_kmedoids=all(_same_cluster(g, "UPS", "CZE", "SVK") for g in pam),
    )


def write_reproduction(rep: ReproductionReport, out_dir: Union[str, Path]) -> List[Path]:
    """reproduce.json plus one scatter per graph, coloured by the default k-means run."""
    out_dir = Path(out_dir)
    documents = [(out_dir / "reproduce.json", ReportStorage.dumps(rep.model_dump(mode="json")))]
    for coords in ("modified", "original"):
        clusters = rep.outcome(coords, "kmeans", "hartigan_wong").result
        svg = render_scatter(
            rep.coordinates[coords],
            clusters,
            overlay=coords == "original",
            axis_labels=AXIS_LABELS[coords],
        )
        documents.append((out_dir / f"{coords}.svg", svg))
    for path, content in documents:
        ReportStorage.atomic_write(path, content)
        logger.info(f"Reproduce: wrote {path}")
    return [p for p, _ in documents]
