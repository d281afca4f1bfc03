"""Delimited-text and JSON formats for chambers, societies, reports and series.

File layouts (comma separated, header row first, UTF-8):

* chamber: ``id,x1,...,xm,group`` -- an empty group or ``IND`` marks an
  independent member;
* society: ``name,weight,x1,...,xm``;
* series:  ``l,n,p_euc,p_man,p_cheb``;
* report (JSON): ``{"center": [...], "n", "dim", "values": {...},
  "modified": {...}}``.

Row numbers in :class:`ParseError` are 1-based file lines (the header is 1).
Chambers and societies are written at full precision; reports and series at
6 decimals.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Sequence

from .core import COORD_TOL, METRICS, WEIGHT_TOL, Metric, PolarizationReport, Society, prepare
from .errors import DimensionError, ParameterError, ParseError
from .experiments import SeriesRow
from .grouping import Chamber, Individual

INDEPENDENT_SENTINELS = ("", "IND")
DIGITS = 6
SERIES_HEADER = ("l", "n", "p_euc", "p_man", "p_cheb")

_COORD = re.compile(r"^x(\d+)$")


@dataclass(frozen=True)
class DatasetSchema:
    """Column roles for a chamber or society file.

    ``columns`` maps ``id``/``group`` (chamber) or ``name``/``weight``
    (society) to header names; ``coords`` lists the coordinate columns.
    """

    kind: str
    dim: int
    columns: dict[str, str] = field(default_factory=dict)
    coords: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("chamber", "society"):
            raise ParameterError(f"unknown dataset kind {self.kind!r}")
        coords = tuple(self.coords) or tuple(f"x{j + 1}" for j in range(self.dim))
        if len(coords) != self.dim:
            raise DimensionError(f"{len(coords)} coordinate columns for dimension {self.dim}")
        defaults = {"chamber": {"id": "id", "group": "group"},
                    "society": {"name": "name", "weight": "weight"}}[self.kind]
        object.__setattr__(self, "columns", {**defaults, **self.columns})
        object.__setattr__(self, "coords", coords)

    @classmethod
    def infer(cls, header: Sequence[str], kind: str) -> "DatasetSchema":
        coords = sorted((h for h in header if _COORD.match(h)), key=lambda h: int(_COORD.match(h).group(1)))
        if not coords:
            raise ParseError("header has no coordinate columns x1..xm", row=1)
        return cls(kind, len(coords), coords=tuple(coords))


def _text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            return fh.read()
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _rows(source, kind: str, schema: DatasetSchema | None):
    reader = csv.reader(io.StringIO(_text(source)))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty input", row=1) from None
    schema = schema or DatasetSchema.infer(header, kind)
    needed = list(schema.columns.values()) + list(schema.coords)
    missing = [c for c in needed if c not in header]
    if missing:
        raise ParseError(f"missing columns {missing}", row=1)
    index = {h: i for i, h in enumerate(header)}
    out = []
    for line, raw in enumerate(reader, start=2):
        if not raw or all(not c.strip() for c in raw):
            continue
        if len(raw) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(raw)}", row=line)
        out.append((line, {h: raw[index[h]].strip() for h in header}))
    return schema, out


def _float(value: str, what: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"{what} {value!r} is not a number", row=line) from None


def read_chamber(source, schema: DatasetSchema | None = None) -> Chamber:
    schema, rows = _rows(source, "chamber", schema)
    if not rows:
        raise ParseError("no data rows", row=2)
    members, seen = [], set()
    id_col, group_col = schema.columns["id"], schema.columns["group"]
    for line, rec in rows:
        mid = rec[id_col]
        if not mid:
            raise ParseError("empty id", row=line)
        if mid in seen:
            raise ParseError(f"duplicate id {mid!r}", row=line)
        seen.add(mid)
        pos = tuple(_float(rec[c], c, line) for c in schema.coords)
        group = rec[group_col]
        members.append(Individual(mid, pos, None if group in INDEPENDENT_SENTINELS else group))
    return Chamber(schema.dim, tuple(members))


def read_society(source, schema: DatasetSchema | None = None, *, weight_tol: float = WEIGHT_TOL,
                 coord_tol: float = COORD_TOL, rescale: bool = False) -> Society:
    """Parse a society file; weights within ``weight_tol`` of 1 are renormalized.

    With ``rescale`` each axis is min-max normalized onto [0, 1] first.
    Raises :class:`ValidationError` listing every violated rule.
    """
    schema, rows = _rows(source, "society", schema)
    if not rows:
        raise ParseError("no data rows", row=2)
    name_col, weight_col = schema.columns["name"], schema.columns["weight"]
    labels, weights, positions = [], [], []
    for line, rec in rows:
        labels.append(rec[name_col] or f"g{len(labels) + 1}")
        weights.append(_float(rec[weight_col], "weight", line))
        positions.append([_float(rec[c], c, line) for c in schema.coords])
    society = Society(schema.dim, weights, positions, labels)
    if rescale:
        society = society.rescaled()
    return prepare(society, weight_tol, coord_tol)


def _csv(header: Iterable, rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def fmt(x: float, digits: int = DIGITS) -> str:
    """Round to ``digits`` decimals and print the shortest repr (``1.0``, ``0.758714``)."""
    return repr(round(float(x), digits) + 0.0)


def write_society(society: Society) -> str:
    header = ["name", "weight"] + [f"x{j + 1}" for j in range(society.dim)]
    return _csv(header, ([g.label, repr(g.weight), *map(repr, g.position)] for g in society))


def write_chamber(chamber: Chamber) -> str:
    header = ["id"] + [f"x{j + 1}" for j in range(chamber.dim)] + ["group"]
    return _csv(header, ([m.id, *map(repr, m.position), m.affiliation or ""] for m in chamber))


def write_series(rows: Sequence[SeriesRow], digits: int = DIGITS) -> str:
    return _csv(SERIES_HEADER, ([r.l, r.n, fmt(r.p_euc, digits), fmt(r.p_man, digits),
                                 fmt(r.p_cheb, digits)] for r in rows))


def read_series(source) -> list[SeriesRow]:
    reader = csv.DictReader(io.StringIO(_text(source)))
    out = []
    for line, rec in enumerate(reader, start=2):
        try:
            out.append(SeriesRow(int(rec["l"]), int(rec["n"]), float(rec["p_euc"]),
                                 float(rec["p_man"]), float(rec["p_cheb"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad series row ({exc})", row=line) from None
    return out


def report_dict(report: PolarizationReport, metrics: Sequence[Metric] = METRICS,
                modified: bool = True, digits: int = DIGITS) -> dict:
    out = {"center": [round(c, digits) + 0.0 for c in report.center],
           "n": report.n, "dim": report.dim,
           "values": {m.value: round(report.values[m], digits) + 0.0 for m in metrics}}
    if modified:
        out["modified"] = {m.value: round(report.modified_values[m], digits) + 0.0 for m in metrics}
    return out


def write_report(report: PolarizationReport, format: str = "json", *,
                 metrics: Sequence[Metric] = METRICS, modified: bool = True,
                 digits: int = DIGITS, extra: dict | None = None) -> str:
    """Render a report as JSON or as a one-row CSV with a header.

    ``extra`` adds flat name/value pairs (used for the 1-D comparison indices).
    """
    metrics = [Metric.parse(m) for m in metrics]
    if format == "json":
        data = report_dict(report, metrics, modified, digits)
        if extra:
            data["comparative"] = {k: round(v, digits) + 0.0 for k, v in extra.items()}
        return json.dumps(data, indent=2) + "\n"
    if format == "csv":
        header = [f"c{j + 1}" for j in range(report.dim)] + ["n", "dim"]
        row = [fmt(c, digits) for c in report.center] + [report.n, report.dim]
        header += [m.value for m in metrics]
        row += [fmt(report.values[m], digits) for m in metrics]
        if modified:
            header += [f"modified_{m.value}" for m in metrics]
            row += [fmt(report.modified_values[m], digits) for m in metrics]
        if extra:
            header += list(extra)
            row += [fmt(v, digits) for v in extra.values()]
        return _csv(header, [row])
    raise ParameterError(f"unknown report format {format!r}")


def read_report(source) -> PolarizationReport:
    """Inverse of the JSON form of :func:`write_report`."""
    try:
        data = json.loads(_text(source))
        values = {Metric.parse(k): float(v) for k, v in data["values"].items()}
        modified = {Metric.parse(k): float(v) for k, v in data.get("modified", {}).items()}
        return PolarizationReport(tuple(float(c) for c in data["center"]), int(data["n"]),
                                  int(data["dim"]), values, modified)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad report ({exc})") from None


@dataclass(frozen=True)
class Table1Row:
    year: int
    center: tuple[float, float]
    p_euc: float
    p_man: float
    p_cheb: float


def _data_file(name: str) -> IO[str]:
    return resources.files("polarindex.data").joinpath(name).open("r", encoding="utf-8")


def load_reference_table() -> list[Table1Row]:
    """Published per-year State Duma values (1994-2003), 2-D groups-points model."""
    with _data_file("table1.csv") as fh:
        return [Table1Row(int(r["year"]), (float(r["c1"]), float(r["c2"])),
                          float(r["p_euc"]), float(r["p_man"]), float(r["p_cheb"]))
                for r in csv.DictReader(fh)]


def load_demo_chamber() -> Chamber:
    """Small synthetic chamber with six unions and five independents."""
    with _data_file("chamber_demo.csv") as fh:
        return read_chamber(fh)


def demo_path(name: str) -> str:
    """Filesystem path of a bundled data file (``chamber_demo.csv``, ...)."""
    return str(resources.files("polarindex.data").joinpath(name))
