"""CSV and JSON report writers."""

from __future__ import annotations

import csv
import json
import math
from typing import Iterable, TextIO

from .checks import ReportRow

CSV_HEADER = ("scenario", "check", "algebra", "params", "p", "t", "d", "lhs", "rhs", "ratio", "slack", "status", "ms")


def _num(v):
    if v is None:
        return None
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def row_dict(row: ReportRow) -> dict:
    return {
        "scenario": row.scenario,
        "check": row.check,
        "algebra": row.algebra,
        "params": row.params,
        "p": row.p,
        "t": row.t,
        "d": row.d,
        "lhs": _num(row.lhs),
        "rhs": _num(row.rhs),
        "ratio": _num(row.ratio),
        "slack": _num(row.slack),
        "status": row.status,
        "ms": round(row.ms, 3),
    }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(rows: Iterable[ReportRow], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_HEADER)
    for row in rows:
        rec = row_dict(row)
        rec["params"] = json.dumps(rec["params"], sort_keys=True, separators=(",", ":"))
        writer.writerow([_cell(rec[k]) for k in CSV_HEADER])


def write_json(rows: Iterable[ReportRow], fh: TextIO) -> None:
    json.dump([row_dict(r) for r in rows], fh, indent=1, sort_keys=False)
    fh.write("\n")


def summarize(rows: list[ReportRow]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "error": 0, "estimate": 0}
    for r in rows:
        out[r.status] = out.get(r.status, 0) + 1
    return out
