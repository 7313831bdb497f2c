from src.pipeline.models import CombinationOutcome, LanguageRecord, Report, ReproductionReport, RunConfig
from src.pipeline.runner import (
    build_records,
    cluster_points,
    load_report,
    points_of,
    recluster,
    report_csv,
    report_json,
    report_svg,
    reproduce,
    run,
    write_outputs,
    write_reproduction,
)
from src.pipeline.storage import ReportStorage
from src.pipeline.svg import render_scatter

__all__ = [
    "CombinationOutcome",
    "LanguageRecord",
    "Report",
    "ReproductionReport",
    "RunConfig",
    "ReportStorage",
    "build_records",
    "cluster_points",
    "load_report",
    "points_of",
    "recluster",
    "render_scatter",
    "report_csv",
    "report_json",
    "report_svg",
    "reproduce",
    "run",
    "write_outputs",
    "write_reproduction",
]
