#!/usr/bin/env python3
"""
Display Management Module for the Scarf Hypersphere Verifier
Banner, emoji status lines and report tables on stderr; artifacts on
stdout stay free of any status text

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import sys
from typing import Any, Iterable, Optional, Sequence

from constants import DEVELOPER, RICH_THEMES, STATUS_ICONS, TABLE_STYLES, VERSION

# Try to import Rich for enhanced display
try:
    from rich import box
    from rich.align import Align
    from rich.console import Console
    from rich.panel import Panel
    from rich.table import Table
    from rich.text import Text
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False


class RichDisplayManager:
    """Rich console on stderr with a plain-print fallback"""

    def __init__(self, config):
        settings = config.get("display_settings", {})
        self.debug_mode = settings.get("debug_mode", False)
        self.quiet = settings.get("quiet", False)
        self.use_rich = RICH_AVAILABLE and settings.get("use_rich_ui", True)
        self.theme = RICH_THEMES.get(settings.get("color_scheme", "default"), RICH_THEMES["default"])
        self.table_box = TABLE_STYLES.get(settings.get("table_style", "rounded"), "ROUNDED")
        self.console = Console(stderr=True, highlight=False) if self.use_rich else None

    # Low-level output
    def _plain(self, text: str):
        print(text, file=sys.stderr)

    def _styled(self, text: str, style_name: str):
        if self.use_rich:
            self.console.print(text, style=self.theme.get(style_name, ""), markup=False)
        else:
            self._plain(text)

    # Status lines
    def success(self, message: str):
        if not self.quiet:
            self._styled(f"{STATUS_ICONS['ok']} {message}", "success")

    def failure(self, message: str):
        # failures are shown even in quiet mode
        self._styled(f"{STATUS_ICONS['fail']} {message}", "danger")

    def warning(self, message: str):
        if not self.quiet:
            self._styled(f"{STATUS_ICONS['warn']} {message}", "warning")

    def info(self, message: str):
        if not self.quiet:
            self._styled(f"{STATUS_ICONS['info']} {message}", "info")

    def progress(self, message: str):
        if not self.quiet:
            self._styled(f"{STATUS_ICONS['run']} {message}", "muted")

    def debug(self, message: str):
        if self.debug_mode:
            self._styled(f"{STATUS_ICONS['debug']} {message}", "muted")

    # Panels and tables
    def create_header_panel(self, subtitle: str):
        header_text = Text()
        header_text.append("∿ SCARF HYPERSPHERE VERIFIER\n", style=self.theme["header"])
        header_text.append(f"{subtitle}\n", style="bright_white")
        header_text.append(f"v{VERSION} by {DEVELOPER}", style="italic dim")
        return Panel(Align.center(header_text), box=box.DOUBLE_EDGE, style="blue", padding=(0, 2))

    def print_banner(self, subtitle: str):
        if self.quiet:
            return
        if self.use_rich:
            self.console.print(self.create_header_panel(subtitle))
        else:
            self._plain(f"=== SCARF HYPERSPHERE VERIFIER v{VERSION} by {DEVELOPER} ===")
            self._plain(f"    {subtitle}")

    def print_table(self, title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]],
                    verdict_column: Optional[int] = None):
        """Report table; a boolean in verdict_column renders as a status icon"""
        if self.quiet:
            return
        rendered = []
        for row in rows:
            cells = []
            for index, value in enumerate(row):
                if index == verdict_column and isinstance(value, bool):
                    value = STATUS_ICONS["ok"] if value else STATUS_ICONS["fail"]
                cells.append(str(value))
            rendered.append(cells)

        if not self.use_rich:
            self._plain(f"\n{title}")
            self._plain("  " + " | ".join(columns))
            for cells in rendered:
                self._plain("  " + " | ".join(cells))
            return

        table = Table(
            title=title,
            box=getattr(box, self.table_box, box.ROUNDED),
            show_header=True,
            header_style="bold magenta",
            title_style=self.theme["header"],
            border_style="blue",
        )
        for index, column in enumerate(columns):
            table.add_column(column, justify="center" if index == verdict_column else "right")
        for cells in rendered:
            table.add_row(*cells)
        self.console.print(table)

    def print_verdict(self, passed: bool, message: str):
        if passed:
            self.success(message)
        else:
            self.failure(message)
