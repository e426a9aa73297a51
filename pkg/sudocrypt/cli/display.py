"""
Rich console rendering for command results.
"""

import math
from typing import Iterable, Optional, Tuple

import pandas as pd
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from sudocrypt.analysis.models import AudioMetricsReport, ImageMetricsReport, SensitivityReport
from sudocrypt.ciphers.models import StageTrace
from sudocrypt.keys.sudoku import SudokuGrid, render_grid

console = Console()


def _fmt(value: float, digits: int = 4) -> str:
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return f"{value:.{digits}f}"


def display_step(step: str, details: str = ""):
    if details:
        console.print(f"[bold yellow]► {escape(step)}[/bold yellow]: {escape(details)}")
    else:
        console.print(f"[bold yellow]► {escape(step)}[/bold yellow]")


def display_error(message: str):
    console.print(f"[red]{escape(message)}[/red]")


def display_grid(grid: SudokuGrid, title: str, alphabet: Optional[str] = None):
    console.print(
        Panel(
            render_grid(grid, alphabet),
            title=f"[bold green]{escape(title)}[/bold green]",
            border_style="green",
            expand=False,
        )
    )


def display_stage_timings(trace: StageTrace):
    table = Table(title="Stage timings")
    table.add_column("Stage", style="cyan")
    table.add_column("ms", justify="right")
    for stage, ms in trace.durations_ms.items():
        table.add_row(stage, _fmt(ms, 3))
    table.add_row("[bold]total[/bold]", f"[bold]{_fmt(trace.total_ms, 3)}[/bold]")
    console.print(table)


def display_image_reports(reports: Iterable[Tuple[str, ImageMetricsReport]]):
    table = Table(title="Image metrics")
    for column in ("Image", "NPCR %", "UACI %", "Entropy (orig)", "Entropy (enc)", "Means (orig)", "Means (enc)"):
        table.add_column(column, justify="left" if column.startswith(("Image", "Means")) else "right")
    for name, report in reports:
        table.add_row(
            escape(name) + (" (cropped)" if report.cropped else ""),
            _fmt(report.npcr),
            _fmt(report.uaci),
            _fmt(report.entropy_original),
            _fmt(report.entropy_encrypted),
            ", ".join(_fmt(m, 2) for m in report.channel_means_original),
            ", ".join(_fmt(m, 2) for m in report.channel_means_encrypted),
        )
    console.print(table)


def display_audio_report(name: str, report: AudioMetricsReport):
    table = Table(title=f"Audio metrics: {escape(name)}")
    table.add_column("Metric", style="cyan")
    table.add_column("Original", justify="right")
    table.add_column("Encrypted", justify="right")
    table.add_row("SNR (dB)", "", _fmt(report.snr))
    table.add_row("PSNR (dB)", "", _fmt(report.psnr))
    table.add_row("MSE", "", _fmt(report.mse, 6))
    table.add_row("Changed samples %", "", _fmt(report.sample_change_rate, 2))
    table.add_row("ZCR", _fmt(report.zcr_original), _fmt(report.zcr_encrypted))
    table.add_row("RMS", _fmt(report.rms_original), _fmt(report.rms_encrypted))
    console.print(table)


def display_sensitivity(report: SensitivityReport):
    x, y, c = report.position
    console.print(
        f"[bold]Plaintext sensitivity[/bold] at ({x}, {y}) channel {c}: "
        f"NPCR {_fmt(report.npcr)}%, UACI {_fmt(report.uaci)}%"
    )


def display_frame(frame: pd.DataFrame, title: str):
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for row in frame.itertuples(index=False):
        table.add_row(*(_fmt(v) if isinstance(v, float) else escape(str(v)) for v in row))
    console.print(table)
