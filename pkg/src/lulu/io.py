"""Input/output formats.

json-pl ("plfunction/v1") is the exact interchange format — it round-trips
jumps and isolated point values losslessly.  csv-xy holds (x, y) pairs and
imports as the continuous interpolant (CSV cannot express one-sided limits);
csv-seq holds one sample per line and loads as a Signal.
"""

from __future__ import annotations

import csv
import io as _io
import json

import numpy as np

from .discrete import Signal
from .plf import PLFunction

PL_SCHEMA = "plfunction/v1"


class FormatError(ValueError):
    """Input bytes do not parse as the declared format."""


def plfunction_to_dict(f: PLFunction) -> dict:
    return {
        "schema": PL_SCHEMA,
        "domain": [float(f.a), float(f.b)],
        "breakpoints": [float(x) for x in f.xs],
        "point_values": [float(v) for v in f.values],
        "right_limits": [float(v) for v in f.right_limits],
        "left_limits": [float(v) for v in f.left_limits],
    }


def plfunction_from_dict(d: dict) -> PLFunction:
    try:
        if d.get("schema") != PL_SCHEMA:
            raise FormatError(f"expected schema {PL_SCHEMA!r}, got {d.get('schema')!r}")
        f = PLFunction(d["breakpoints"], d["point_values"],
                       d["right_limits"], d["left_limits"])
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed plfunction payload: {exc}") from exc
    dom = d.get("domain")
    if dom is not None and (float(dom[0]) != f.a or float(dom[1]) != f.b):
        raise FormatError("domain field disagrees with breakpoints")
    return f


def dump_plfunction(f: PLFunction) -> str:
    return json.dumps(plfunction_to_dict(f), indent=2, sort_keys=True) + "\n"


def load_plfunction(text: str) -> PLFunction:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise FormatError("top-level JSON value must be an object")
    return plfunction_from_dict(d)


def load_csv_xy(text: str) -> PLFunction:
    """(x, y) rows -> continuous interpolant; rows need not be sorted."""
    xs, ys = [], []
    for row in csv.reader(_io.StringIO(text)):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if len(row) < 2:
            raise FormatError(f"csv-xy row needs two fields, got {row!r}")
        try:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
        except ValueError as exc:
            raise FormatError(f"non-numeric csv-xy row {row!r}") from exc
    if len(xs) < 2:
        raise FormatError("csv-xy needs at least two points")
    order = np.argsort(xs)
    xs = np.asarray(xs)[order]
    ys = np.asarray(ys)[order]
    if not np.all(np.diff(xs) > 0):
        raise FormatError("csv-xy x values must be distinct")
    return PLFunction.from_points(xs, ys)


def dump_csv_xy(f: PLFunction) -> str:
    """Breakpoint (x, value) pairs; lossy for jumps (documented)."""
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    for x, v in zip(f.xs, f.values):
        w.writerow([repr(float(x)), repr(float(v))])
    return out.getvalue()


def load_csv_seq(text: str, spacing: float = 1.0) -> Signal:
    vals = []
    for row in csv.reader(_io.StringIO(text)):
        if not row or row[0].lstrip().startswith("#"):
            continue
        try:
            vals.append(float(row[0]))
        except ValueError as exc:
            raise FormatError(f"non-numeric csv-seq row {row!r}") from exc
    if not vals:
        raise FormatError("csv-seq input is empty")
    return Signal(vals, spacing)


def dump_csv_seq(s: Signal) -> str:
    return "\n".join(repr(float(v)) for v in s.samples) + "\n"
