"""Machine-readable key-value reports with deterministic field order.

A report is a sequence of ``key<TAB>value`` lines — one per field, in the
order the fields were added — optionally followed by named human-readable
blocks (tables) separated by blank lines.  Every subcommand of the CLI
emits a fixed key set in a fixed order, so reports are diffable and safe
to parse with line-oriented tools.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

__all__ = ["ReportDocument", "format_value"]


def format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


class ReportDocument:
    """Ordered fields plus optional preformatted text blocks."""

    def __init__(self, command: str):
        self._fields: List[Tuple[str, object]] = [("command", command)]
        self._blocks: List[Tuple[str, List[str]]] = []

    def add(self, key: str, value: object) -> "ReportDocument":
        if any(k == key for k, _ in self._fields):
            raise ValueError(f"duplicate report key {key!r}")
        self._fields.append((key, value))
        return self

    def add_block(self, title: str, lines: Iterable[str]) -> "ReportDocument":
        self._blocks.append((title, list(lines)))
        return self

    def get(self, key: str) -> Optional[object]:
        for k, v in self._fields:
            if k == key:
                return v
        return None

    def keys(self) -> List[str]:
        return [k for k, _ in self._fields]

    def lines(self) -> List[str]:
        return [f"{k}\t{format_value(v)}" for k, v in self._fields]

    def render(self) -> str:
        parts = ["\n".join(self.lines())]
        for title, lines in self._blocks:
            parts.append(f"## {title}\n" + "\n".join(lines))
        return "\n\n".join(parts) + "\n"
