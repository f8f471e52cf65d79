# Result Writers
# ==============
# Every CSV and JSON file the command line produces goes through here, so
# formatting is identical everywhere: mandatory headers, floats with 17
# significant digits, booleans as true/false.

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, TextIO, Union

import numpy as np

from config import config
from qudit_state import DomainError

Row = Dict[str, Any]


def format_value(value: Any, digits: Optional[int] = None) -> str:
    digits = config.output.float_digits if digits is None else digits
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(float(value), f".{digits}g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else format_value(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_csv(rows: Iterable[Row], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buffer.getvalue()


def render_json(payload: Any) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=False) + "\n"


def write_output(text: str, out: Union[str, Path, None] = None, stream: Optional[TextIO] = None) -> None:
    """Write to a file, or to stdout when no path is given."""
    if out is None or str(out) == "-":
        (stream or sys.stdout).write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_records(
    rows: Sequence[Row],
    columns: Sequence[str],
    out: Union[str, Path, None] = None,
    fmt: str = "csv",
    stream: Optional[TextIO] = None,
) -> None:
    match fmt:
        case "csv":
            write_output(render_csv(rows, columns), out, stream)
        case "json":
            write_output(render_json([{c: row[c] for c in columns} for row in rows]), out, stream)
        case _:
            raise DomainError(f"unsupported output format: {fmt}")
