"""Tabular output records rendered as CSV or JSON.

Numbers are written with round-trip-exact digits: 17 significant digits
for doubles and the full working precision for extended values. Both
renderings of one record use the same digit strings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _precision as P

SCHEMA_VERSION = "1.0"


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if P.is_extended(x):
        return P.ext.nstr(x, P.EXTENDED_DPS, min_fixed=-4, max_fixed=8)
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x}")
    return format(x, ".17g")


def _is_number(x) -> bool:
    return (
        isinstance(x, (int, float, np.integer, np.floating, bool, np.bool_)) or P.is_extended(x)
    )


def _to_json(obj: Any, indent: int, level: int = 0) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if _is_number(obj):
        return format_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_to_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(_is_number(v) or isinstance(v, str) for v in obj):
            return "[" + ", ".join(_to_json(v, indent) for v in obj) + "]"
        items = [pad + _to_json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    columns: list[str]
    rows: list[tuple]
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row {row!r} does not match columns {self.columns!r}")

    def to_dict(self) -> dict:
        meta = {"schema_version": self.schema_version, "command": self.command, "parameters": self.parameters}
        meta.update(self.metadata)
        return {"metadata": meta, "rows": [dict(zip(self.columns, r)) for r in self.rows]}

    def to_json(self) -> str:
        return _to_json(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([v if isinstance(v, str) else format_number(v) for v in r])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")
