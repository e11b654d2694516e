"""
Deterministic CSV and JSON writers.

Floats are written with 17 significant digits, JSON keys are sorted, lines end
with LF, and nothing time-dependent is recorded, so identical inputs give
byte-identical files.
"""

import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


@dataclass
class Table:
    """Column names plus rows of plain values (no complex numbers)."""
    columns: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"Row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> List[Any]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


def format_value(value: Any) -> str:
    """CSV cell text: floats with 17 significant digits, everything else via str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Replace non-finite floats and tuples so json.dumps emits valid, stable JSON."""
    if isinstance(value, float):
        if math.isfinite(value):
            return float(format(value, ".17g"))
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    return value


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def render_json(document: dict) -> str:
    return json.dumps(to_jsonable(document), indent=2, sort_keys=True) + "\n"


def table_document(table: Table, command: str, metadata: Optional[dict] = None) -> dict:
    document = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
    }
    if metadata:
        document.update(metadata)
    return document


def write_text(text: str, path: Optional[str]) -> None:
    """Write UTF-8 text with LF line endings to `path`, or stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"Wrote {target}")


def write_table(table: Table, fmt: str, path: Optional[str], command: str,
                metadata: Optional[dict] = None) -> None:
    if fmt == "csv":
        write_text(render_csv(table), path)
    elif fmt == "json":
        write_text(render_json(table_document(table, command, metadata)), path)
    else:
        raise ValueError(f"Unknown output format {fmt!r}")
