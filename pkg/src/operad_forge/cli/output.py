"""Rendering of tables, elements and reports (csv | json | plain)."""

import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from operad_forge.models.enums import OutputFormat
from operad_forge.models.report_schemas import SCHEMA_VERSION, SuiteReport

# Fixed CSV column order per table
SCHROEDER_COLUMNS = ("n", "s", "from_dims", "enumerated")
DIMENSION_COLUMNS = ("operad", "n", "degree", "profile", "dim", "closed_form")
CHECK_COLUMNS = ("check", "arity", "status", "expected", "actual", "witness", "detail")
TERM_COLUMNS = ("key", "coeff")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return str(value)


def to_json(payload: Any) -> str:
    """Sorted keys, two-space indent, trailing newline."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def to_csv(columns: Sequence[str], rows: Sequence[dict[str, Any]]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return output.getvalue()


def to_plain(columns: Sequence[str], rows: Sequence[dict[str, Any]]) -> str:
    """Space-aligned table; empty cells are shown as '-'."""
    cells = [[_cell(row.get(c)) or "-" for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_table(
    fmt: OutputFormat, table: str, columns: Sequence[str], rows: Sequence[BaseModel]
) -> str:
    dumped = [row.model_dump(mode="json") for row in rows]
    if fmt == OutputFormat.JSON:
        return to_json({"schema": SCHEMA_VERSION, "table": table, "rows": dumped})
    if fmt == OutputFormat.PLAIN:
        return to_plain(columns, dumped)
    return to_csv(columns, dumped)


def render_element(fmt: OutputFormat, payload: BaseModel, text: str, **context: Any) -> str:
    """An element as canonical text (plain), key/coeff rows (csv) or a payload (json)."""
    if fmt == OutputFormat.JSON:
        element = payload.model_dump(mode="json")
        body = {"schema": SCHEMA_VERSION, "element": element, "text": text}
        body.update(context)
        return to_json(body)
    if fmt == OutputFormat.CSV:
        return to_csv(TERM_COLUMNS, payload.model_dump(mode="json")["terms"])
    return text + "\n"


def render_value(fmt: OutputFormat, name: str, value: Any, **context: Any) -> str:
    """A single scalar result."""
    if fmt == OutputFormat.JSON:
        return to_json({"schema": SCHEMA_VERSION, name: value, **context})
    if fmt == OutputFormat.CSV:
        columns = tuple(context) + (name,)
        return to_csv(columns, [{**context, name: value}])
    return f"{value}\n"


def render_report(fmt: OutputFormat, report: SuiteReport) -> str:
    if fmt == OutputFormat.JSON:
        return to_json(report)
    rows = [c.model_dump(mode="json") for c in report.checks]
    if fmt == OutputFormat.CSV:
        return to_csv(CHECK_COLUMNS, rows)
    lines = []
    for check in report.checks:
        arity = "" if check.arity is None else f" n={check.arity}"
        line = f"{check.status.value.upper():8} {check.check}{arity}"
        if check.witness:
            line += f"  witness: {check.witness}"
        elif check.detail and check.status.value == "skipped":
            line += f"  ({check.detail})"
        lines.append(line)
    verdict = "ok" if report.ok else f"{len(report.failed)} failed"
    lines.append(f"{report.suite}: {len(report.checks)} checks, {verdict}")
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None) -> None:
    """Write to --out (UTF-8, '\\n' newlines) or stdout."""
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        print(text, end="")
