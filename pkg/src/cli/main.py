import json
import sys
from functools import wraps
from pathlib import Path
from typing import Dict, Optional

import typer
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from src import __version__
from src.cluster import ClusterResult, canonical_groups
from src.config import config
from src.errors import EXIT_DATA, EXIT_OK, EXIT_USAGE, ParseError, QvordError
from src.freqdata import CategoryTable, bundled_slavic, count_graphemes, load_alphabet, load_tables, save_tables
from src.indices import modified_coords, summarize
from src.moments import ord_point
from src.pipeline import (
    Report,
    ReportStorage,
    RunConfig,
    render_scatter,
    reproduce as run_reproduction,
    run as run_pipeline,
    write_outputs,
    write_reproduction,
)
from src.pipeline.runner import AXIS_LABELS
from src.theory import classify_region, dist_point, parse_dist_spec

app = typer.Typer(
    help="qvord: qualitative variation indices, Ord plots and clustering of rank-frequency tables.",
    add_completion=False,
    pretty_exceptions_show_locals=False,
)
console = Console()
err_console = Console(stderr=True)

# typer raises the exceptions of the click it was built on (its own vendored copy in newer
# releases); BadParameter subclasses that click's UsageError
UsageError = next(c for c in typer.BadParameter.__mro__ if c.__name__ == "UsageError")


def _configure_logging(debug: bool):
    logger.remove()
    level = "DEBUG" if debug else config.app.log_level.upper()
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> {message}")


def guarded(fn):
    """Turn library errors into a message on stderr and the matching exit code."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except QvordError as e:
            err_console.print(f"[bold red]error:[/bold red] {e}", highlight=False)
            raise typer.Exit(code=e.exit_code)
        except (ValidationError, ValueError) as e:
            err_console.print(f"[bold red]invalid argument:[/bold red] {e}", highlight=False)
            raise typer.Exit(code=EXIT_USAGE)
        except OSError as e:
            err_console.print(f"[bold red]error:[/bold red] {e.filename}: {e.strerror}", highlight=False)
            raise typer.Exit(code=EXIT_DATA)
    return wrapper


def _load(input_path: Optional[Path], fmt: str) -> Dict[str, CategoryTable]:
    if input_path is None:
        return bundled_slavic()
    try:
        return load_tables(input_path, fmt)
    except QvordError as e:
        raise e.add_context(str(input_path))


def _fmt(v: Optional[float]) -> str:
    return "-" if v is None else f"{v:.6f}"


def _print_groups(title: str, result: ClusterResult):
    table = Table(title=title)
    table.add_column("cluster", justify="right")
    table.add_column("members")
    for c, group in enumerate(canonical_groups(result)):
        table.add_row(str(c), ", ".join(group))
    console.print(table)


INPUT = typer.Option(None, "--input", "-i", help="Frequency table (TSV). Defaults to the bundled Slavic table.")
FORMAT = typer.Option("long", "--format", "-f", help="long | matrix")


@app.command()
@guarded
def indices(
    input_path: Optional[Path] = INPUT,
    fmt: str = FORMAT,
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the indices as JSON"),
):
    """VA, SDA, RE and RR_norm for every language."""
    tables = _load(input_path, fmt)
    results = {}
    for name, t in tables.items():
        try:
            results[name] = summarize(t)
        except QvordError as e:
            raise e.add_context(f"language {name}")

    table = Table(title="Indices of qualitative variation")
    for col in ("language", "N", "K", "VA", "SDA", "RE", "RR_norm"):
        table.add_column(col, justify="left" if col == "language" else "right")
    for name, s in results.items():
        t = tables[name]
        table.add_row(name, str(t.N), str(t.K), _fmt(s.va), _fmt(s.sda), _fmt(s.re), _fmt(s.rr_norm))
    console.print(table)
    if output:
        ReportStorage.write_json(output, {name: s.model_dump() for name, s in results.items()})


@app.command("ord")
@guarded
def ord_coordinates(
    input_path: Optional[Path] = INPUT,
    fmt: str = FORMAT,
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the coordinates as JSON"),
):
    """Original (I, S) and modified (I_m, S_m) Ord coordinates."""
    tables = _load(input_path, fmt)
    rows = {}
    for name, t in tables.items():
        try:
            original = ord_point(t)
        except QvordError as e:
            raise e.add_context(f"language {name}")
        try:
            modified = modified_coords(t)
        except QvordError as e:
            logger.warning(f"CLI: modified coordinates undefined for {name}: {e.message}")
            modified = None
        rows[name] = (original, modified)

    table = Table(title="Ord coordinates")
    for col in ("language", "I", "S", "I_m", "S_m"):
        table.add_column(col, justify="left" if col == "language" else "right")
    for name, (o, m) in rows.items():
        table.add_row(name, _fmt(o.i), _fmt(o.s), _fmt(m.i_m if m else None), _fmt(m.s_m if m else None))
    console.print(table)
    if output:
        ReportStorage.write_json(output, {
            name: {"ord": o.model_dump(), "modified": None if m is None else {"i_m": m.i_m, "s_m": m.s_m}}
            for name, (o, m) in rows.items()
        })


@app.command()
@guarded
def cluster(
    input_path: Optional[Path] = INPUT,
    fmt: str = FORMAT,
    coords: str = typer.Option("modified", "--coords", help="original | modified | inventory"),
    k: int = typer.Option(3, "--k", help="Number of clusters"),
    method: str = typer.Option("kmeans", "--method", help="kmeans | kmedoids | oracle"),
    variant: str = typer.Option("hartigan-wong", "--variant", help="lloyd | macqueen | hartigan-wong"),
    metric: str = typer.Option("euclidean", "--metric", help="euclidean | manhattan"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for k-means initialisation"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="Number of k-means restarts"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report as JSON"),
    csv: Optional[Path] = typer.Option(None, "--csv", help="Write one CSV row per language"),
):
    """Cluster languages by Ord coordinates or by inventory size."""
    options = dict(
        input_path=str(input_path) if input_path else None,
        fmt=fmt, coords=coords, method=method, variant=variant, metric=metric, k=k,
        output_json=str(output) if output else None,
        output_csv=str(csv) if csv else None,
    )
    if seed is not None:
        options["seed"] = seed
    if restarts is not None:
        options["restarts"] = restarts
    cfg = RunConfig(**options)
    report = run_pipeline(cfg)
    _print_groups(f"{cfg.method} k={cfg.k} on {cfg.coords} (objective {report.clusters.objective:.6g})", report.clusters)
    write_outputs(report)


def _clusters_from(path: Path) -> ClusterResult:
    try:
        payload = ReportStorage.read_json(path)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno).add_context(str(path))
    if isinstance(payload, dict) and "clusters" in payload and "languages" in payload:
        return Report.model_validate(payload).clusters
    return ClusterResult.model_validate(payload)


@app.command()
@guarded
def plot(
    input_path: Optional[Path] = INPUT,
    fmt: str = FORMAT,
    coords: str = typer.Option("modified", "--coords", help="original | modified"),
    clusters: Optional[Path] = typer.Option(None, "--clusters", help="Report or ClusterResult JSON"),
    overlay: bool = typer.Option(False, "--overlay", help="Draw the reference lines and landmarks"),
    output: Path = typer.Option(..., "--output", "-o", help="SVG file to write"),
):
    """Scatter plot of the Ord coordinates as a standalone SVG."""
    if coords not in AXIS_LABELS:
        raise ValueError(f"--coords must be original or modified, got {coords!r}")
    tables = _load(input_path, fmt)
    points = {}
    for name, t in tables.items():
        try:
            if coords == "modified":
                m = modified_coords(t)
                points[name] = (m.i_m, m.s_m)
            else:
                o = ord_point(t)
                points[name] = (o.i, o.s)
        except QvordError as e:
            raise e.add_context(f"language {name}")
    result = _clusters_from(clusters) if clusters else None
    svg = render_scatter(points, result, overlay=overlay, axis_labels=AXIS_LABELS[coords])
    ReportStorage.atomic_write(output, svg)
    console.print(f"wrote {output}")


@app.command()
@guarded
def theory(
    dist: str = typer.Option(..., "--dist", help="binomial | poisson | negbinomial | hypergeometric | betabinomial"),
    params: str = typer.Option(..., "--params", help="Comma-separated parameters, e.g. 10,0.5"),
    classify: bool = typer.Option(False, "--classify", help="Report the Ord-plane region of the point"),
):
    """Ord coordinates of a theoretical distribution."""
    spec = parse_dist_spec(dist, params.split(","))
    point = dist_point(spec)
    console.print(f"{spec.family}: I = {point.i!r}, S = {point.s!r}", highlight=False)
    if classify:
        region = classify_region(point, tol=config.theory.cli_tol)
        console.print(f"regions: {', '.join(sorted(l.value for l in region.labels))}", highlight=False)
        if region.boundaries:
            console.print(f"on edges: {', '.join(sorted(region.boundaries))}", highlight=False)


@app.command()
@guarded
def count(
    text: Path = typer.Option(..., "--text", help="UTF-8 text to count"),
    alphabet: Path = typer.Option(..., "--alphabet", help="One grapheme per line"),
    fold_case: bool = typer.Option(False, "--fold-case", help="Case-fold text and alphabet"),
    language: Optional[str] = typer.Option(None, "--language", help="Language column value (default: text file stem)"),
    output: Path = typer.Option(..., "--output", "-o", help="Long-format TSV to write"),
):
    """Count grapheme occurrences of a text into a long-format table."""
    units = load_alphabet(alphabet, fold_case=fold_case)
    name = language or text.stem
    table = count_graphemes(text.read_text(encoding="utf-8"), units, name=name)
    ReportStorage.atomic_write(output, save_tables({name: table}, "long"), mode="wb")
    console.print(f"{name}: N={table.N} over K={table.K} graphemes -> {output}", highlight=False)


@app.command()
@guarded
def reproduce(
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for k-means initialisation"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="Number of k-means restarts"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="Where reproduce.json and the SVGs go"),
):
    """Run the Slavic-languages experiment on the bundled table and print both clusterings."""
    rep = run_reproduction(seed=seed, restarts=restarts)
    for coords, title in (("modified", "Modified graph (I_m, S_m)"), ("original", "Original graph (I, S)"), ("inventory", "Inventory sizes")):
        _print_groups(f"{title}: k-means (Hartigan-Wong)", rep.outcome(coords, "kmeans", "hartigan_wong").result)
    _print_groups("Inventory sizes: exhaustive optimum", rep.outcome("inventory", "oracle", "wcss").result)
    console.print(f"modified graph identical across methods: {rep.modified_consistent}")
    console.print(f"original graph equals inventory clustering: {rep.original_matches_inventory}")
    console.print(f"k-medoids puts UPS with CZE and SVK: {rep.ups_migrates_under_kmedoids}")
    for path in write_reproduction(rep, output_dir or Path(config.app.output_dir)):
        console.print(f"wrote {path}")


@app.command("run")
@guarded
def run_config(config_path: Path = typer.Option(..., "--config", "-c", help="YAML run configuration")):
    """Execute a pipeline run described by a YAML file."""
    cfg = RunConfig.from_yaml(config_path)
    report = run_pipeline(cfg)
    _print_groups(f"{cfg.method} k={cfg.k} on {cfg.coords}", report.clusters)
    for path in write_outputs(report):
        console.print(f"wrote {path}")


def _version(value: bool):
    if value:
        console.print(f"qvord {__version__}")
        raise typer.Exit()


@app.callback()
def cli_callback(
    debug: bool = typer.Option(False, "--debug", help="Enable verbose debug logging"),
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True, help="Show the version"),
):
    _configure_logging(debug)


def run():
    """Console entry point: usage errors exit with 1 instead of 2."""
    try:
        code = app(standalone_mode=False)
    except UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except typer.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    run()
