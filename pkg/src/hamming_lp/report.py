"""Rendering of result records as tables, CSV and JSON lines."""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Context
from fractions import Fraction

SIG_DIGITS = 12
_CTX = Context(prec=SIG_DIGITS, rounding=ROUND_HALF_EVEN)


def format_float(x: float) -> str:
    """12 significant digits, round-half-even on the exact binary value."""
    if x != x or x in (float("inf"), float("-inf")):
        return str(x)
    d = _CTX.create_decimal(x)
    if d == 0:
        return "0"
    s = format(d, "f") if -7 < d.adjusted() < SIG_DIGITS else format(d, "E")
    if "." in s and "E" not in s:
        s = s.rstrip("0").rstrip(".")
    return s


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(format_value(x) for x in v)
    return str(v)


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return format_value(v)
    if isinstance(v, float):
        return float(format_float(v))
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


def render_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        return ""
    columns = columns or list(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def render_table(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        return ""
    columns = columns or list(rows[0])
    cells = [[format_value(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def render_keyvalue(record: dict) -> str:
    width = max(len(k) for k in record)
    out = []
    for k, v in record.items():
        if isinstance(v, dict):
            v = json.dumps(jsonable(v), sort_keys=False)
        else:
            v = format_value(v)
        out.append(f"{k.ljust(width)}  {v}")
    return "\n".join(out) + "\n"


def render_json_lines(rows: list[dict]) -> str:
    return "".join(json.dumps(jsonable(r)) + "\n" for r in rows)


def render(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    if fmt == "csv":
        return render_csv(rows, columns)
    if fmt == "json":
        return render_json_lines(rows)
    if len(rows) == 1 and columns is None:
        return render_keyvalue(rows[0])
    return render_table(rows, columns)
