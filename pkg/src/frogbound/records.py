"""Flat CSV / JSON-lines serialisation shared by every CLI subcommand.

Numbers are written with 12 significant digits (correctly rounded, so ties
go to even), independent of locale.  The JSON value of a field is the float
parsed from exactly the string written to CSV, so both formats carry equal
values.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Mapping

from .bounds import BoundsRow

SCHEMA_VERSION = "1"
BOUNDS_COLUMNS = ("d", "ub_original", "ub_fmrt", "pbar", "vbar", "residual_Q", "residual_R")


def format_number(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return format(x, ".12g")
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, bool) or isinstance(x, int) or not isinstance(x, float):
        return x
    return float(format_number(x))


def bounds_payload(row: BoundsRow) -> dict[str, Any]:
    out: dict[str, Any] = {k: getattr(row, k) for k in BOUNDS_COLUMNS}
    for n, value in row.pbar_n_samples:
        out[f"pbar_n_{n}"] = value
    return out


def render(kind: str, payloads: Iterable[Mapping[str, Any]], fmt: str) -> str:
    """Serialise records of one kind; CSV gets a header from the first payload."""
    payloads = list(payloads)
    if fmt == "json":
        lines = [
            json.dumps(
                {
                    "kind": kind,
                    "schema_version": SCHEMA_VERSION,
                    "payload": {k: _json_value(v) for k, v in p.items()},
                }
            )
            for p in payloads
        ]
        return "".join(line + "\n" for line in lines)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if payloads:
            header = list(payloads[0])
            writer.writerow(header + ["schema_version"])
            for p in payloads:
                writer.writerow([format_number(p[k]) for k in header] + [SCHEMA_VERSION])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
