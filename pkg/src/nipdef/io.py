"""Reading and writing set systems.

Two formats are supported.  The text format is a header line ``R C``
followed by ``R`` lines of ``C`` characters from ``{0,1}``::

    3 2
    00
    01
    11

The structured format is JSON: ``{"columns": [...], "rows": [[0, 1], ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .setsystem import SetSystem


class FormatError(ValueError):
    pass


def parse_text(text: str) -> SetSystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty input")
    try:
        R, C = (int(v) for v in lines[0].split())
    except ValueError:
        raise FormatError(f"bad header line {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != R:
        raise FormatError(f"header announces {R} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        if len(ln) != C or set(ln) - {"0", "1"}:
            raise FormatError(f"row {i} is not {C} characters of 0/1: {ln!r}")
        rows.append(tuple(int(ch) for ch in ln))
    try:
        return SetSystem(tuple(str(j) for j in range(C)), tuple(rows))
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_text(S: SetSystem) -> str:
    return str(S) + "\n"


def parse_json(text: str) -> SetSystem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(str(e)) from None
    if not isinstance(obj, dict) or "rows" not in obj:
        raise FormatError('expected an object with "rows"')
    rows = obj["rows"]
    cols = obj.get("columns")
    if cols is None:
        cols = [str(j) for j in range(len(rows[0]) if rows else 0)]
    try:
        return SetSystem(tuple(cols), tuple(tuple(r) for r in rows))
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_json(S: SetSystem) -> str:
    return json.dumps({"columns": list(S.columns), "rows": [list(r) for r in S.rows]})


def load(path: str | Path) -> SetSystem:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_json(text)
    try:
        return parse_text(text)
    except ValueError as e:
        raise FormatError(str(e)) from None


def save(S: SetSystem, path: str | Path) -> None:
    path = Path(path)
    path.write_text(format_json(S) if path.suffix == ".json" else format_text(S))
