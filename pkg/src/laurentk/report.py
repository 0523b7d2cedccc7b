"""Deterministic text/JSON reports.

A report is an ordered list of ``(key, value)`` results where values are
JSON scalars, lists, dicts or lists of dicts (tables).  The text form is a
pure function of the JSON form, so both always carry the same content.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.results[key] = value

    def warn(self, message: str) -> None:
        if message not in self.warnings:
            self.warnings.append(message)

    def to_dict(self) -> dict:
        return {"command": self.command, "results": self.results, "warnings": self.warnings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        return render_text(self.to_dict())


def _scalar(v) -> str:
    if v is True:
        return "TRUE"
    if v is False:
        return "FALSE"
    if v is None:
        return "-"
    return str(v)


def _render(key: str, value, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        out.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(k, v, indent + 1, out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        out.append(f"{pad}{key}:")
        for row in value:
            out.append(f"{pad}  " + "  ".join(f"{k}={_scalar(v)}" for k, v in row.items()))
    elif isinstance(value, list):
        out.append(f"{pad}{key}: [" + ", ".join(_scalar(v) for v in value) + "]")
    else:
        out.append(f"{pad}{key}: {_scalar(value)}")


def render_text(data: dict) -> str:
    out = [f"command: {data['command']}"]
    for k, v in data["results"].items():
        _render(k, v, 0, out)
    for w in data["warnings"]:
        out.append(f"warning: {w}")
    return "\n".join(out) + "\n"
