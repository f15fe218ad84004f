"""Main CLI interface for ldpc-minweight."""

import logging
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional

import typer
from pydantic import ValidationError
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn
from rich.table import Table

from .. import __version__
from ..codes.alist import load_alist, write_alist
from ..codes.library import random_regular_code
from ..core.bp import calibrate as run_calibration
from ..core.gf2 import ParityCheckMatrix
from ..core.oracle import exhaustive_min_weight
from ..core.search import run_search
from ..errors import MinWeightError
from ..export.exporter import Exporter, ExportFormat
from ..models.entities import BpConfig, ChannelConfig, RunManifest, SearchConfig, TrialRecord
from ..utils.config import PRESETS, get_config
from ..utils.logging import setup_logging, stderr_console

app = typer.Typer(
    name="minweight",
    help="Find minimum-weight codewords of LDPC codes with BP-guided reprocessing",
    no_args_is_help=True,
)
console = stderr_console
logger = logging.getLogger(__name__)

EXIT_MISSING_FILE = 2
EXIT_INVALID_FLAGS = 4


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """Turn library failures into a diagnostic on stderr and the matching exit code."""
    try:
        yield
    except MinWeightError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(e.exit_code)
    except ValidationError as e:
        console.print(f"[red]Invalid options:[/red] {e}")
        raise typer.Exit(EXIT_INVALID_FLAGS)
    except UnicodeDecodeError as e:
        console.print(f"[red]Error:[/red] alist file is not ASCII text ({e})")
        raise typer.Exit(3)


def _load_code(alist: Path) -> tuple[Path, ParityCheckMatrix]:
    path = get_config().resolve_code(str(alist))
    if not path.is_file():
        console.print(f"[red]Error:[/red] alist file not found: {alist}")
        raise typer.Exit(EXIT_MISSING_FILE)
    with _exit_on_error():
        H = load_alist(path)
    logger.info("Loaded %s: %d checks x %d bits, %d edges", path, H.rows, H.cols, H.n_edges)
    return path, H


def _emit(manifest: RunManifest, format: ExportFormat, output: Optional[Path]) -> None:
    with _exit_on_error():
        document = Exporter().export_manifest(manifest, format, output)
    typer.echo(document, nl=False)
    if output:
        console.print(f"[green]Report written to: {output}[/green]")


def _finish(manifest: RunManifest) -> RunManifest:
    return manifest.model_copy(update={"finished_at": datetime.now(timezone.utc)})


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO level"),
):
    """ldpc-minweight command line."""
    with _exit_on_error():
        cfg = get_config()
    setup_logging("INFO" if verbose else cfg.log_level)


@app.command()
def search(
    alist: Path = typer.Option(..., "--alist", help="Parity-check matrix in alist format"),
    sigma: Optional[float] = typer.Option(None, "--sigma", help="AWGN noise standard deviation"),
    iters: Optional[int] = typer.Option(None, "--iters", help="BP iterations I_m"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Transmitted codewords L_c"),
    order: int = typer.Option(2, "--order", "-p", help="Reprocessing order p"),
    alpha: float = typer.Option(1.0, "--alpha", help="Weighting factor for earlier iterations"),
    seed: int = typer.Option(0, "--seed", help="RNG seed"),
    keep_top: Optional[int] = typer.Option(None, "--keep-top", help="Max stored codewords"),
    all_pairs_top: Optional[int] = typer.Option(
        None, "--all-pairs-top", help="Also XOR all pairs among the lightest T patterns"
    ),
    format: ExportFormat = typer.Option(ExportFormat.JSON, "--format", "-f", help="Output format"),
    progress_every: int = typer.Option(0, "--progress-every", help="Log a line every N trials"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Also write to this file"),
):
    """Search for minimum-weight codewords and print the report on stdout."""
    cfg = get_config()
    path, H = _load_code(alist)
    preset = cfg.preset_for(path)
    if sigma is None and preset is None:
        console.print(f"[red]Error:[/red] no preset for {path.name}; pass --sigma")
        raise typer.Exit(EXIT_INVALID_FLAGS)

    default_l_c, default_iters = (preset.l_c, preset.max_iterations) if preset else (100, 5)
    with _exit_on_error():
        search_cfg = SearchConfig(
            order_p=order,
            l_c=trials if trials is not None else default_l_c,
            channel=ChannelConfig(sigma=sigma if sigma is not None else preset.sigma, seed=seed),
            bp=BpConfig(
                max_iterations=iters if iters is not None else default_iters,
                llr_clip=cfg.llr_clip,
            ),
            alpha=alpha,
            keep_top=keep_top if keep_top is not None else cfg.keep_top,
            report_every=progress_every,
            all_pairs_top=all_pairs_top,
            threads=threads if threads is not None else cfg.threads,
            pattern_check=cfg.pattern_check,
            pattern_sample_rate=cfg.pattern_sample_rate,
        )

    started = datetime.now(timezone.utc)
    with Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TextColumn("best={task.fields[best]}"),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task(f"Searching {path.name}", total=search_cfg.l_c, best="-")

        def on_trial(record: TrialRecord) -> None:
            best = "-"
            if record.best_weight is not None:
                best = f"{record.best_weight}x{record.multiplicity}"
            progress.update(task, advance=1, best=best)

        with _exit_on_error():
            report = run_search(H, search_cfg, on_trial=on_trial)

    manifest = RunManifest(
        command="search",
        code_path=str(path),
        tool_version=__version__,
        config=search_cfg,
        started_at=started,
        result=report,
    )
    console.print(
        f"[bold]best_weight={report.best_weight} multiplicity={report.multiplicity}[/bold] "
        f"[dim]({report.wall_seconds:.2f}s)[/dim]"
    )
    _emit(_finish(manifest), format, output)


@app.command()
def calibrate(
    alist: Path = typer.Option(..., "--alist", help="Parity-check matrix in alist format"),
    sigma: Optional[float] = typer.Option(None, "--sigma", help="AWGN noise standard deviation"),
    trials: int = typer.Option(..., "--trials", help="Number of calibration transmissions"),
    iters: int = typer.Option(50, "--iters", help="BP iterations per transmission"),
    seed: int = typer.Option(0, "--seed", help="RNG seed"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Also write to this file"),
):
    """Recommend I_m from the iteration at which posterior LLRs saturate."""
    if trials < 1:
        console.print(f"[red]Invalid options:[/red] --trials must be at least 1, got {trials}")
        raise typer.Exit(EXIT_INVALID_FLAGS)
    cfg = get_config()
    path, H = _load_code(alist)
    preset = cfg.preset_for(path)
    if sigma is None:
        if preset is None:
            console.print(f"[red]Error:[/red] no preset for {path.name}; pass --sigma")
            raise typer.Exit(EXIT_INVALID_FLAGS)
        sigma = preset.sigma

    started = datetime.now(timezone.utc)
    with _exit_on_error():
        bp_cfg = BpConfig(max_iterations=iters, llr_clip=cfg.llr_clip)
        with console.status(f"Calibrating on {path.name}..."):
            report = run_calibration(H, sigma, bp_cfg, trials, seed)

    table = Table(title="Saturation iteration histogram")
    table.add_column("Iteration", justify="right")
    table.add_column("Trials", justify="right")
    for row in report.histogram:
        table.add_row(str(row.iteration), str(row.count))
    console.print(table)
    style = "yellow" if report.low_confidence or report.warning else "green"
    console.print(Panel(f"Recommended I_m = {report.recommended_iterations}", style=style))
    if report.warning:
        console.print(f"[yellow]Warning:[/yellow] {report.warning}")

    manifest = RunManifest(
        command="calibrate",
        code_path=str(path),
        tool_version=__version__,
        started_at=started,
        result=report,
    )
    _emit(_finish(manifest), ExportFormat.JSON, output)


@app.command()
def oracle(
    alist: Path = typer.Option(..., "--alist", help="Parity-check matrix in alist format"),
    max_dim: Optional[int] = typer.Option(
        None, "--max-dim", help="Largest dimension K to enumerate exhaustively"
    ),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Also write to this file"),
):
    """Exact minimum distance and multiplicity by exhaustive enumeration."""
    cfg = get_config()
    path, H = _load_code(alist)
    started = datetime.now(timezone.utc)
    with _exit_on_error():
        spectrum = exhaustive_min_weight(
            H, max_dim=max_dim if max_dim is not None else cfg.max_dim, witness_cap=cfg.witness_cap
        )

    console.print(
        f"[bold]d_min={spectrum.d_min} multiplicity={spectrum.multiplicity}[/bold] "
        f"[dim](K={spectrum.dimension})[/dim]"
    )
    manifest = RunManifest(
        command="oracle",
        code_path=str(path),
        tool_version=__version__,
        started_at=started,
        result=spectrum,
    )
    _emit(_finish(manifest), ExportFormat.JSON, output)


@app.command()
def generate(
    n: int = typer.Argument(..., help="Code length (number of columns)"),
    col_degree: int = typer.Option(3, "--col-degree", help="Ones per column"),
    row_degree: int = typer.Option(6, "--row-degree", help="Ones per row"),
    seed: int = typer.Option(0, "--seed", help="RNG seed"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write alist to this file"),
):
    """Generate a random regular LDPC code and print it in alist format."""
    with _exit_on_error():
        H = random_regular_code(n, col_degree=col_degree, row_degree=row_degree, seed=seed)
    text = write_alist(H)
    if output:
        output.write_text(text, encoding="ascii")
        console.print(f"[green]{H.rows}x{H.cols} code written to: {output}[/green]")
    else:
        typer.echo(text, nl=False)


@app.command()
def config():
    """Show current configuration and the built-in code presets."""
    cfg = get_config()

    console.print()
    console.print(Panel("[bold]ldpc-minweight Configuration[/bold]", style="blue"))
    console.print()

    settings = Table(show_header=False, box=None)
    settings.add_column("Setting", style="cyan")
    settings.add_column("Value")
    settings.add_row("LLR clip", str(cfg.llr_clip))
    settings.add_row("Keep top", str(cfg.keep_top))
    settings.add_row("Threads", str(cfg.threads))
    settings.add_row("Pattern check", f"{cfg.pattern_check} (rate {cfg.pattern_sample_rate})")
    settings.add_row("Oracle max dimension", str(cfg.max_dim))
    settings.add_row("Witness cap", str(cfg.witness_cap))
    codes_dir = str(cfg.codes_dir) if cfg.codes_dir else "[dim]not set[/dim]"
    settings.add_row("Codes directory", codes_dir)
    settings.add_row("Log level", cfg.log_level)
    console.print(settings)
    console.print()

    presets = Table(title="Presets")
    presets.add_column("Code", style="cyan")
    presets.add_column("sigma", justify="right")
    presets.add_column("I_m", justify="right")
    presets.add_column("L_c", justify="right")
    for stem, preset in PRESETS.items():
        presets.add_row(stem, f"{preset.sigma:.2f}", str(preset.max_iterations), str(preset.l_c))
    console.print(presets)
    console.print()
    console.print("[dim]Override with MINWEIGHT_* environment variables or a .env file[/dim]")


if __name__ == "__main__":
    app()
