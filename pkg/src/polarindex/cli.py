"""Command-line front end.

Exit codes: 0 success, 1 domain or validation error, 2 I/O or parse error,
3 usage error.  Inputs default to standard input and outputs to standard
output, so ``attach | aggregate | compute`` can be chained with pipes.
Set ``POLARINDEX_COLOR=1`` to colour the ``table1`` check line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass, field

from . import dataio
from .comparative import DiscreteDistribution1D, ERParams, esteban_ray, reynal_querol
from .core import METRICS, Metric, Society, polarization_report, validate_society
from .errors import ParseError, PolarIndexError
from .experiments import (DEFAULT_SEED, MAX_GROUPS, continuum_limit_estimate, convergence_series,
                          extremal_search_chebyshev)
from .grouping import AttachmentConfig, aggregate, attach_independents

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3
SUBCOMMANDS = ("compute", "attach", "aggregate", "grid", "limit", "search", "validate", "table1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandSpec:
    subcommand: str
    options: dict = field(default_factory=dict)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polarindex", description="Multidimensional polarization index tools.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def io_flags(p, output=True):
        p.add_argument("--input", default="-", help="input file (default: stdin)")
        if output:
            p.add_argument("--output", default="-", help="output file (default: stdout)")

    p = sub.add_parser("compute", help="polarization report for a society CSV")
    io_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--metric", choices=[m.value for m in METRICS] + ["all"], default="all")
    p.add_argument("--modified", action="store_true", help="include the modified (2/n) family")
    p.add_argument("--strict-bounds", action="store_true", help="fail when an index exceeds 1")
    p.add_argument("--rescale", action="store_true", help="min-max normalize each axis first")
    p.add_argument("--comparative", action="store_true",
                   help="add Esteban-Ray and Reynal-Querol values (1-D societies only)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--k", type=float, default=1.0)

    p = sub.add_parser("attach", help="attach independents by nearest-neighbour vote")
    io_flags(p)
    p.add_argument("--neighbors", type=int, default=3)
    p.add_argument("--quorum", type=int, default=2)
    p.add_argument("--radius", type=float, default=float("inf"))
    p.add_argument("--metric", choices=[m.value for m in METRICS], default="euclidean")

    p = sub.add_parser("aggregate", help="collapse a chamber into a society CSV")
    io_flags(p)
    p.add_argument("--residual-cluster", action="store_true",
                   help="keep remaining independents as one extra group")

    p = sub.add_parser("grid", help="index values on uniform grids (CSV series)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--l-min", type=int, default=2)
    p.add_argument("--l-max", type=int, required=True)
    p.add_argument("--max-groups", type=int, default=MAX_GROUPS)
    p.add_argument("--output", default="-")

    p = sub.add_parser("limit", help="Monte Carlo continuum limit of the index")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--metric", choices=[m.value for m in METRICS] + ["all"], default="all")
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", default="-")

    p = sub.add_parser("search", help="hill-climb for large Chebyshev index values")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", default="-")

    p = sub.add_parser("validate", help="check a society CSV against the domain rules")
    p.add_argument("--input", default="-")
    p.add_argument("--weight-tol", type=float, default=1e-9)
    p.add_argument("--coord-tol", type=float, default=1e-9)

    p = sub.add_parser("table1", help="print the bundled 1994-2003 reference table")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def parse_args(argv) -> CommandSpec:
    ns = _build_parser().parse_args(list(argv))
    opts = vars(ns)
    return CommandSpec(opts.pop("subcommand"), opts)


def _open_in(path):
    return sys.stdin if path == "-" else open(path, encoding="utf-8", newline="")


def _emit(text: str, path: str = "-") -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _read(path, reader, **kw):
    src = _open_in(path)
    try:
        return reader(src, **kw)
    finally:
        if src is not sys.stdin:
            src.close()


def _metrics(choice):
    return METRICS if choice == "all" else (Metric.parse(choice),)


def _compute(o):
    society = _read(o["input"], dataio.read_society, rescale=o["rescale"])
    report = polarization_report(society, strict=o["strict_bounds"])
    extra = None
    if o["comparative"]:
        if society.dim != 1:
            raise UsageError("--comparative needs a one-dimensional society")
        dist = DiscreteDistribution1D(tuple(society.weights), tuple(society.positions[:, 0]))
        params = ERParams(o["alpha"], o["k"])
        extra = {"esteban_ray": esteban_ray(dist, params),
                 "gini_er": esteban_ray(dist, ERParams(0.0, 1.0)),
                 "reynal_querol": reynal_querol(dist.shares)}
    _emit(dataio.write_report(report, o["format"], metrics=_metrics(o["metric"]),
                              modified=o["modified"], extra=extra), o["output"])


def _attach(o):
    chamber = _read(o["input"], dataio.read_chamber)
    config = AttachmentConfig(o["neighbors"], o["quorum"], o["radius"], Metric.parse(o["metric"]))
    _emit(dataio.write_chamber(attach_independents(chamber, config)), o["output"])


def _aggregate(o):
    chamber = _read(o["input"], dataio.read_chamber)
    _emit(dataio.write_society(aggregate(chamber, o["residual_cluster"])), o["output"])


def _grid(o):
    rows = convergence_series(o["dim"], o["l_min"], o["l_max"], o["max_groups"])
    _emit(dataio.write_series(rows), o["output"])


def _limit(o):
    rows = []
    for metric in _metrics(o["metric"]):
        est = continuum_limit_estimate(o["dim"], metric, o["samples"], o["seed"])
        rows.append([metric.value, dataio.fmt(est.value), dataio.fmt(est.std_error), est.samples, est.seed])
    _emit(dataio._csv(["metric", "value", "std_error", "samples", "seed"], rows), o["output"])


def _search(o):
    society, value = extremal_search_chebyshev(o["dim"], o["iterations"], o["seed"], restarts=o["restarts"])
    data = {"dim": society.dim, "value": round(value, 12), "seed": o["seed"],
            "groups": [{"name": g.label, "weight": g.weight, "position": list(g.position)}
                       for g in society]}
    _emit(json.dumps(data, indent=2) + "\n", o["output"])


def _validate(o):
    society = _read(o["input"], _raw_society)
    violations = validate_society(society, o["weight_tol"], o["coord_tol"])
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_DOMAIN
    zero = [g.label for g in society if g.weight == 0]
    msg = "valid"
    if zero:
        msg += f" (zero-weight groups: {', '.join(zero)})"
    _emit(msg + "\n")
    return EXIT_OK


def _raw_society(source):
    """Society exactly as written, without renormalization or checks."""
    schema, rows = dataio._rows(source, "society", None)
    weight, name = schema.columns["weight"], schema.columns["name"]
    return Society(schema.dim, [dataio._float(r[weight], "weight", ln) for ln, r in rows],
                   [[dataio._float(r[c], c, ln) for c in schema.coords] for ln, r in rows],
                   [r[name] for _, r in rows])


def _table1(o):
    rows = dataio.load_reference_table()
    ok = all(r.p_cheb > r.p_euc > r.p_man and all(0 <= c <= 1 for c in r.center) for r in rows)
    if o["format"] == "json":
        _emit(json.dumps([{"year": r.year, "center": list(r.center), "p_euc": r.p_euc,
                           "p_man": r.p_man, "p_cheb": r.p_cheb} for r in rows], indent=2) + "\n")
    else:
        _emit(dataio._csv(["year", "c1", "c2", "p_euc", "p_man", "p_cheb"],
                          ([r.year, *r.center, r.p_euc, r.p_man, r.p_cheb] for r in rows)))
        status = "PASS" if ok else "FAIL"
        if os.environ.get("POLARINDEX_COLOR") == "1":
            status = f"\033[{32 if ok else 31}m{status}\033[0m"
        _emit(f"# ordering check p_cheb > p_euc > p_man: {status}\n")
    return EXIT_OK if ok else EXIT_DOMAIN


_HANDLERS = {"compute": _compute, "attach": _attach, "aggregate": _aggregate, "grid": _grid,
             "limit": _limit, "search": _search, "validate": _validate, "table1": _table1}


def run(spec: CommandSpec) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = _HANDLERS[spec.subcommand](spec.options)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PolarIndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv=None) -> int:
    try:
        spec = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
