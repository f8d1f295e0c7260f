"""
Deterministic CSV/JSON tables and run manifests.

Floats are written with ``repr`` (shortest round-trip form), so reading a
file back reproduces every value bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

OUTPUT_DIR_ENV = "SMSTAB_OUTPUT_DIR"


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v + 0.0)
    return str(v)


def _json_value(v):
    if isinstance(v, float):
        return v + 0.0 if math.isfinite(v) else repr(v)
    return v


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [{c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows]

    def to_json(self, extra: dict | None = None) -> str:
        doc = {"columns": list(self.columns), "rows": self.to_records()}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def read_csv(path_or_text) -> Table:
    """Parse a table written by :meth:`Table.to_csv`; numeric fields become int or float."""
    text = Path(path_or_text).read_text() if isinstance(path_or_text, Path) else path_or_text
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    rows = [[_parse(v) for v in row] for row in reader]
    return Table(columns, rows)


def _parse(v: str):
    if v == "":
        return None
    try:
        return int(v)
    except ValueError:
        pass
    try:
        return float(v)
    except ValueError:
        return v


def output_dir(cli_value: str | None) -> Path | None:
    value = cli_value or os.environ.get(OUTPUT_DIR_ENV)
    return Path(value) if value else None


@dataclass
class RunManifest:
    command: str
    parameters: dict
    outputs: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "timestamp": self.timestamp,
            "outputs": self.outputs,
            "summary": self.summary,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_outputs(
    directory: Path,
    stem: str,
    manifest: RunManifest,
    tables: dict[str, Table],
    fmt: str,
    records: dict[str, dict] | None = None,
) -> list[Path]:
    """
    Write ``<stem>.<name>.<fmt>`` per table, ``<stem>.<name>.json`` per record,
    and ``<stem>.manifest.json`` listing them.
    """
    directory.mkdir(parents=True, exist_ok=True)
    manifest_name = f"{stem}.manifest.json"
    written = []
    for name, table in tables.items():
        path = directory / f"{stem}.{name}.{fmt}"
        if fmt == "csv":
            path.write_text(table.to_csv())
        else:
            path.write_text(table.to_json({"manifest": manifest_name}))
        written.append(path)
    for name, record in (records or {}).items():
        path = directory / f"{stem}.{name}.json"
        path.write_text(json.dumps({**record, "manifest": manifest_name}, indent=2, sort_keys=True) + "\n")
        written.append(path)
    manifest.outputs = [p.name for p in written]
    (directory / manifest_name).write_text(manifest.to_json())
    return written + [directory / manifest_name]
