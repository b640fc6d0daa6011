"""Reports written by the command-line interface."""

__all__ = ["Report", "read_document", "render_table"]

import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from tensorhn.errors import InputError


def read_document(path: str) -> Tuple[bytes, Any]:
    """Read a JSON document from ``path`` (``-`` for standard input).

    Returns the raw bytes together with the decoded document.

    Raises
    ------
    InputError
        If the file cannot be read or is not valid JSON.
    """
    try:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as f:
                raw = f.read()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror}.") from e
    try:
        document = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"Input {path} is not a JSON document: {e}.") from e
    return raw, document


@dataclass
class Report:
    """Result of one command."""

    command: str
    """Name of the command that produced the report.
    """

    inputs_digest: str
    """SHA-256 of the raw input bytes, empty if the command reads no input.
    """

    options: Dict[str, Any]

    result: Dict[str, Any]
    """JSON-ready payload; rationals and polynomials are strings.
    """

    warnings: List[str] = field(default_factory=list)

    @staticmethod
    def digest(raw: bytes) -> str:
        return hashlib.sha256(raw).hexdigest()

    def asjson(self) -> str:
        """Convert the report into JSON with sorted keys."""
        return json.dumps(asdict(self), indent=4, sort_keys=True)

    def astable(self) -> str:
        """Human-readable rendering: scalar fields, then one table per
        list of records.
        """
        lines = [f"command: {self.command}"]
        tables = []
        for key in sorted(self.result):
            value = self.result[key]
            if isinstance(value, list) and value and all(
                isinstance(row, dict) for row in value
            ):
                tables.append((key, value))
            elif isinstance(value, dict):
                flat = _flatten(value)
                lines.extend(f"{key}.{k}: {v}" for k, v in flat.items())
            else:
                lines.append(f"{key}: {_cell(value)}")
        for key, rows in tables:
            lines.append("")
            lines.append(f"{key}:")
            lines.append(render_table([_flatten(row) for row in rows]))
        for message in self.warnings:
            lines.append(f"warning: {message}")
        return "\n".join(lines)

    def render(self, output_format: str) -> str:
        if output_format == "table":
            return self.astable()
        return self.asjson()


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "[" + ", ".join(_cell(v) for v in value) + "]"
    return str(value)


def _flatten(record: Dict[str, Any], prefix: str = "") -> Dict[str, str]:
    flat: Dict[str, str] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = _cell(value)
    return flat


def render_table(rows: Sequence[Dict[str, str]]) -> str:
    """Align ``rows`` in columns ordered by first appearance."""
    columns: List[str] = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    widths = [
        max([len(column)] + [len(row.get(column, "")) for row in rows])
        for column in columns
    ]
    header = "  ".join(c.ljust(w) for c, w in zip(columns, widths))
    rule = "  ".join("-" * w for w in widths)
    body = [
        "  ".join(row.get(c, "").ljust(w) for c, w in zip(columns, widths))
        for row in rows
    ]
    return "\n".join(line.rstrip() for line in [header, rule] + body)
