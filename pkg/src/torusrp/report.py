"""Rendering of run reports as JSON, CSV and Markdown.

Every renderer takes the plain-dict form of a report:
``{"scenario", "analyses": [{"name", "status", "result", "tables", "verdicts", "error"}],
"verdicts", "version", "timing"}``. One-off CLI commands build the same shape.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import InvalidInputError

FORMATS = ("json", "csv", "md")
MD_MAX_ROWS = 24


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _scalars(result: dict) -> list[tuple[str, object]]:
    return [(k, v) for k, v in result.items()
            if v is None or isinstance(v, (str, int, float, bool))]


def render_csv(doc: dict) -> str:
    """Concatenated numeric tables, each starting with its own header row.

    Tables are separated by a blank line. When no analysis produced a table
    the scalar results are flattened to ``analysis,key,value`` rows.
    """
    blocks = []
    for a in doc["analyses"]:
        for table in a.get("tables", {}).values():
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(table["columns"])
            w.writerows([[_cell(x) for x in row] for row in table["rows"]])
            blocks.append(buf.getvalue())
    if not blocks:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["analysis", "key", "value"])
        for a in doc["analyses"]:
            w.writerow([a["name"], "status", a["status"]])
            for k, v in _scalars(a.get("result", {})):
                w.writerow([a["name"], k, _cell(v)])
        blocks.append(buf.getvalue())
    return "\n".join(blocks)


def _md(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x).replace("|", "\\|")


def _md_table(columns, rows) -> list[str]:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for row in rows[:MD_MAX_ROWS]:
        lines.append("| " + " | ".join(_md(x) for x in row) + " |")
    if len(rows) > MD_MAX_ROWS:
        lines.append(f"\n({len(rows) - MD_MAX_ROWS} more rows in the CSV and JSON output)")
    return lines


def render_md(doc: dict) -> str:
    sc = doc.get("scenario") or {}
    title = sc.get("name") or doc.get("title", "report")
    out = [f"# {title}", ""]
    if sc.get("description"):
        out += [sc["description"], ""]
    if sc:
        out.append(f"framing `{sc.get('framing')}`, degree N = {sc.get('degree')}, "
                   f"seed {sc.get('seed')}")
        if sc.get("tags"):
            out.append(f"tags: {', '.join(sc['tags'])}")
        out.append("")
    out += ["## Verdicts", ""]
    out += [f"- {v}" for v in doc["verdicts"]] or ["- none (no analysis completed)"]
    out += ["", "## Analyses", ""]
    for a in doc["analyses"]:
        out += [f"### {a['name']} ({a['status']})", ""]
        if a["status"] != "ok":
            out += [f"error: {a.get('error')}", ""]
            continue
        pairs = _scalars(a.get("result", {}))
        if pairs:
            out += _md_table(["key", "value"], pairs) + [""]
        for name, table in a.get("tables", {}).items():
            out += [f"{name}:", ""] + _md_table(table["columns"], table["rows"]) + [""]
    out.append(f"version {doc.get('version')}")
    timing = doc.get("timing")
    if timing:
        out.append(f"started {timing.get('started')}, "
                   f"{timing.get('total_seconds', 0.0):.3f} s total")
    return "\n".join(out) + "\n"


_RENDERERS = {"json": render_json, "csv": render_csv, "md": render_md}


def render(doc: dict, fmt: str) -> str:
    if fmt not in _RENDERERS:
        raise InvalidInputError(f"format must be one of {FORMATS}")
    return _RENDERERS[fmt](doc)


def emit_report(report, fmt: str = "json", path=None) -> str:
    """Render a RunReport (or report dict) and write it to path when given.

    Returns the rendered text. File-system errors propagate as OSError.
    """
    doc = report if isinstance(report, dict) else report.to_dict()
    text = render(doc, fmt)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_report(path):
    from .scenarios import RunReport

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    return RunReport.from_dict(data)
