"""Report assembly: one nested key/value tree, rendered as indented text or
as JSON (--machine).  Construction order is preserved; floats are emitted via
repr.  Reports built from the same inputs, seeds and flags are byte-identical.
"""

from __future__ import annotations

import json


class Report:
    """Ordered tree of (key, value) pairs; values may be nested Reports."""

    def __init__(self, title: str):
        self.title = title
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value) -> "Report":
        self.items.append((key, value))
        return self

    def section(self, key: str) -> "Report":
        sub = Report(key)
        self.items.append((key, sub))
        return sub

    # -- rendering ----------------------------------------------------------

    def _format_value(self, value) -> str:
        if isinstance(value, float):
            return repr(value)
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(self._format_value(v) for v in value) + "]"
        return str(value)

    def render_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.title}:"] if indent else [f"{self.title}", "=" * len(self.title)]
        for key, value in self.items:
            if isinstance(value, Report):
                lines.append(value.render_text(indent + 1))
            else:
                lines.append(f"{'  ' * (indent + 1)}{key}: {self._format_value(value)}")
        return "\n".join(lines)

    def _to_obj(self):
        def convert(value):
            if isinstance(value, Report):
                return value._to_obj()
            if isinstance(value, tuple):
                return [convert(v) for v in value]
            if isinstance(value, list):
                return [convert(v) for v in value]
            return value
        return {key: convert(value) for key, value in self.items}

    def render_machine(self) -> str:
        return json.dumps({self.title: self._to_obj()}, indent=2)

    def render(self, machine: bool = False) -> str:
        return self.render_machine() if machine else self.render_text()
