"""Human-readable tables on stderr; stdout stays reserved for JSON."""

from __future__ import annotations

from typing import Iterable, Mapping

import pandas as pd
from rich.console import Console
from rich.table import Table

console = Console(stderr=True)


def format_signs(values: Iterable[str], width: int = 8) -> str:
    """Join sign strings, eliding past ``width`` entries."""
    values = list(values)
    shown = ", ".join(values[:width])
    return shown if len(values) <= width else f"{shown}, ... ({len(values)} total)"


def print_adjacency(adjacency: Mapping[int, int], title: str = "Adjacent mutations") -> None:
    table = Table(title=title)
    table.add_column("element", justify="right")
    table.add_column("mutations", justify="right")
    for e, count in sorted(adjacency.items()):
        table.add_row(str(e), str(count))
    console.print(table)


def print_frame(frame: pd.DataFrame, title: str) -> None:
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column))
    for row in frame.itertuples(index=False):
        table.add_row(*("" if v is None or (isinstance(v, float) and pd.isna(v)) else str(v) for v in row))
    console.print(table)


def print_suite_results(results: Iterable) -> None:
    table = Table(title="Acceptance")
    for column in ("suite", "status", "checks", "failures", "seconds"):
        table.add_column(column)
    for result in results:
        status = "[green]pass[/green]" if result.passed else ("[yellow]budget[/yellow]" if result.budget_exhausted else "[red]fail[/red]")
        table.add_row(result.suite, status, str(sum(result.counts.values())), str(len(result.failures)), f"{result.elapsed:.2f}")
    console.print(table)
