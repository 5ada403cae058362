"""
Logging module built on Rich.
Centralizes the style and format of every log line the engine prints.
Everything goes to stderr so stdout carries only the JSON reports.
"""
from typing import Iterable, List, Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

console = Console(stderr=True)


class LogManager:
    """Centralized log manager with rich formatting."""

    def __init__(self):
        self.quiet = False
        self.verbose = False

    def set_quiet(self, quiet: bool = True):
        self.quiet = quiet

    def set_verbose(self, verbose: bool = True):
        self.verbose = verbose

    def log_section(self, title: str, subtitle: Optional[str] = None, style: str = "bold cyan"):
        """Shows a main section panel."""
        if self.quiet:
            return
        content = f"[bold]{title}[/bold]"
        if subtitle:
            content += f"\n[dim]{subtitle}[/dim]"
        console.print(Panel(content, border_style=style, expand=False))

    def log_phase(self, phase: str, message: str, color: str = "blue"):
        """Logs a process phase (e.g. REDUCE, SOLVE)."""
        if self.quiet:
            return
        console.print(f"[{color} bold]➤ [{phase}][/] {message}")

    def log_success(self, message: str):
        if self.quiet:
            return
        console.print(f"   ✅ [green]{message}[/]")

    def log_warning(self, message: str):
        if self.quiet:
            return
        console.print(f"   ⚠️  [yellow]{message}[/]")

    def log_error(self, message: str):
        # errors are shown even in quiet mode
        console.print(f"   ❌ [bold red]{message}[/]")

    def log_info(self, message: str):
        if self.quiet:
            return
        console.print(f"   ℹ️  {message}")

    def log_debug(self, message: str):
        if self.quiet or not self.verbose:
            return
        console.print(f"   [dim]{message}[/]")

    def display_cases(self, rows: Iterable[Sequence[str]]):
        """Shows the case descriptors of a reduction with their row counts and status."""
        if self.quiet:
            return
        table = Table(show_header=True, header_style="bold magenta", box=None, title="Cases")
        table.add_column("#", style="dim", width=5)
        table.add_column("Case", style="cyan")
        table.add_column("Rows", justify="right")
        table.add_column("Status")
        for row in rows:
            table.add_row(*row)
        console.print(table)

    def display_selftest(self, results: List[Sequence[str]]):
        """Shows the self-test pass/fail table."""
        if self.quiet:
            return
        table = Table(title="Self-test", show_header=True, header_style="bold green")
        table.add_column("Check", style="bold")
        table.add_column("Result", justify="center")
        table.add_column("Details", style="dim")
        for name, passed, detail in results:
            mark = "[green]PASS[/]" if passed == "pass" else "[red]FAIL[/]"
            table.add_row(name, mark, detail)
        console.print(table)

    def display_bench_summary(self, summary: dict):
        """Shows aggregated bench figures."""
        if self.quiet:
            return
        table = Table(title="Bench summary", show_header=True, header_style="bold green")
        table.add_column("Metric", style="bold")
        table.add_column("Value", justify="right")
        for key, value in summary.items():
            table.add_row(str(key), str(value))
        console.print(table)


# Global instance
logger = LogManager()
