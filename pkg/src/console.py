from datetime import datetime
from typing import Any, Dict, List, Optional

from rich.box import DOUBLE, HEAVY, ROUNDED
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn
from rich.rule import Rule
from rich.table import Table

from src.schema import Phase

console = Console()


class DecoderVisualizer:
    """Terminal rendering for the command line"""

    def show_section_header(self, title: str, emoji: str = "📊"):
        """Show section headers"""
        console.print()
        console.print(Rule(f"{emoji} {title}", style="bold blue"))
        console.print()

    def show_params_table(self, title: str, rows: Dict[str, Any]):
        """Code parameters and decoding radii as a two-column table"""
        table = Table(title=title, box=ROUNDED, show_header=True, header_style="bold cyan")
        table.add_column("Parameter", style="bold")
        table.add_column("Value", justify="right")
        for key, value in rows.items():
            table.add_row(key, str(value))
        console.print(table)

    def show_word(self, title: str, word: List[int], style: str = "cyan"):
        console.print(
            Panel(" ".join(str(v) for v in word), title=title, title_align="left",
                  border_style=style, box=ROUNDED)
        )

    def show_decode_result(self, report, sent: Optional[Any] = None, errors: Optional[List[int]] = None):
        """Decoding outcome with candidates, counters and phase timings"""
        ok = report.success
        lines = [f"decoder: {report.decoder}", f"status: {report.status.value}"]
        if report.failure_reason:
            lines.append(f"failure reason: {report.failure_reason}")
        if errors is not None:
            lines.append(f"errors added: {len(errors)} at {errors}")
        for i, cand in enumerate(report.candidates):
            mark = " (sent)" if sent is not None and cand.message == sent else ""
            lines.append(f"candidate {i}{mark}: {cand.message}")
        for key, value in sorted(report.counters.items()):
            lines.append(f"{key}: {value}")
        console.print(
            Panel("\n".join(lines), title="✅ Decoded" if ok else "❌ Decoding failure",
                  title_align="left", border_style="green" if ok else "red", box=ROUNDED,
                  padding=(1, 2))
        )
        self.show_timings(report.timings)

    def show_timings(self, timings: Dict[str, float], title: str = "Phase timings (s)"):
        table = Table(title=title, box=ROUNDED)
        table.add_column("Phase", style="bold")
        table.add_column("Seconds", justify="right")
        for phase in Phase:
            table.add_row(phase.label, f"{timings.get(phase.value, 0.0):.4f}")
        table.add_row("Total", f"{sum(timings.values()):.4f}", style="bold")
        console.print(table)

    def show_sim_summary(self, report):
        """One line per error weight"""
        cfg = report.config
        table = Table(
            title=f"q={cfg.q}, m={cfg.m}, {cfg.decoder.value} (s={cfg.s}, l={cfg.l}), seed={cfg.seed}",
            box=ROUNDED,
        )
        for col in ("weight", "trials", "successes", "rate"):
            table.add_column(col, justify="right")
        if cfg.companion is not None:
            table.add_column(f"{cfg.companion.value} successes", justify="right")
        for row in report.rows:
            cells = [str(row.weight), str(row.trials), str(row.successes), f"{row.rate:.1%}"]
            if cfg.companion is not None:
                cells.append(str(row.companion_successes))
            table.add_row(*cells)
        console.print(table)

    def show_bench_table(self, report):
        """Median phase timings, one column per error weight"""
        table = Table(title=f"Median decode time (s), {report.config.decoder.value}", box=ROUNDED)
        table.add_column("Phase", style="bold")
        for row in report.rows:
            table.add_column(f"weight {row.weight}", justify="right")
        for phase in Phase:
            table.add_row(phase.label, *[f"{row.median_timings.get(phase.value, 0.0):.4f}" for row in report.rows])
        table.add_row("Total", *[f"{row.total:.4f}" for row in report.rows], style="bold")
        table.add_row("Runs / attempts", *[f"{row.runs}/{row.attempts}" for row in report.rows])
        console.print(table)

    def show_reports(self, reports: List[Dict[str, Any]]):
        """Saved reports, most recent first"""
        table = Table(title="Reports", box=ROUNDED)
        table.add_column("Type", style="bold")
        table.add_column("File")
        table.add_column("Modified", justify="right")
        for report in reports:
            modified = datetime.fromtimestamp(report["modified"]).strftime("%Y-%m-%d %H:%M:%S")
            table.add_row(report["type"], report["filename"], modified)
        if not reports:
            table.add_row("-", "no reports yet", "-")
        console.print(table)

    def show_saved(self, paths: List[Any]):
        for path in paths:
            console.print(f"💾 saved {path}")

    def show_error(self, error_msg: str, context: str = ""):
        """Display errors in a formatted way"""
        content = f"❌ {error_msg}"
        if context:
            content += f"\n🔍 {context}"
        console.print(
            Panel(content, title="⚠️ Error", title_align="left", border_style="red",
                  box=HEAVY, padding=(1, 2))
        )

    def show_completion(self, total_time: float):
        console.print(
            Panel(f"⏱️ {total_time:.2f} s", title="✅ Done", title_align="center",
                  border_style="green", box=DOUBLE)
        )

    def progress(self) -> Progress:
        return Progress(
            TextColumn("[bold blue]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=console,
        )


visualizer = DecoderVisualizer()
