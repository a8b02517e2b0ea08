"""Deterministic CSV/JSON writers for CLI artifacts.

CSV: header row, '.' decimal separator, 17 significant digits, no locale
dependence.  JSON: UTF-8, fixed key order.  Identical inputs produce
byte-identical files, suitable for golden-file testing.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

_FMT = "%.17g"


def format_float(x: float) -> str:
    return _FMT % float(x)


def write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    if len(columns) != len(header):
        raise ValueError("one column per header field required")
    n = len(columns[0])
    if any(len(c) != n for c in columns):
        raise ValueError("ragged columns")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(format_float(c[i]) for c in columns))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: Path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def read_json(path: Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
