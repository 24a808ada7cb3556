"""Deterministic CSV/JSON writers and the matching reader."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    return str(v)


def parse(s: str):
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(row[h]) for h in header])
    return path


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return [{k: parse(v) for k, v in row.items()} for row in csv.DictReader(fh)]


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def write_json(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = [{h: _jsonable(row[h]) for h in header} for row in rows]
    path.write_text(json.dumps(data, indent=1, sort_keys=False) + "\n")
    return path


def read_json(path) -> list[dict]:
    data = json.loads(Path(path).read_text())
    return [{k: (float(v) if v in ("inf", "-inf") else v) for k, v in row.items()} for row in data]


def write_table(path, header, rows, fmt_: str = "csv") -> Path:
    path = Path(path)
    if fmt_ == "json":
        return write_json(path.with_suffix(".json"), header, rows)
    return write_csv(path.with_suffix(".csv"), header, rows)


def read_table(path):
    path = Path(path)
    return read_json(path) if path.suffix == ".json" else read_csv(path)
