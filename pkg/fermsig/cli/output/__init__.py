"""Deterministic table and report writers."""

from .writers import (
    SCHEMA_VERSION,
    Table,
    format_value,
    render_csv,
    render_json,
    table_document,
    to_jsonable,
    write_table,
    write_text,
)

__all__ = [
    "SCHEMA_VERSION",
    "Table",
    "format_value",
    "to_jsonable",
    "render_csv",
    "render_json",
    "table_document",
    "write_table",
    "write_text",
]
