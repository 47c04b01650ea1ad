"""Command-line front end.

Every subcommand writes one JSON document (keys sorted) to stdout, or CSV
with ``--format csv``.  Exit codes: 0 success, 1 usage error, 2 validation
error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bounds
from .constructions import FAMILIES, construct
from .counting import DistanceSequence, count_chains, count_chains_brute, count_walks
from .experiments import bounds_row, growth_experiment, rich_report, table_to_csv
from .geometry import TolerancePolicy, ValidationError, load_point_set

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0 or x == float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return x


def _nonneg_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return x


def _csv_of(item_type):
    def parse(text: str):
        parts = [p for p in text.split(",")]
        if not parts or any(not p.strip() for p in parts):
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}")
        return [item_type(p.strip()) for p in parts]
    return parse


def _tol(text: str) -> float:
    x = _positive_float(text)
    if not x < 1e-3:
        raise argparse.ArgumentTypeError("tolerance must be below 1e-3")
    return x


def _rational(text: str):
    try:
        return bounds.parse_rational(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kchain", description="Count and bound k-chains of distances.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="count chains in a point set")
    c.add_argument("--points", required=True, type=Path)
    c.add_argument("--deltas", required=True, type=_csv_of(_positive_float))
    c.add_argument("--method", choices=("dfs", "brute", "walk"), default="dfs")
    c.add_argument("--tol", type=_tol, default=1e-9)
    c.add_argument("--threads", type=_positive_int, default=1)
    c.add_argument("--format", choices=("json", "csv"), default="json")

    b = sub.add_parser("construct", help="generate an extremal configuration")
    b.add_argument("--family", required=True, choices=FAMILIES)
    b.add_argument("--n", required=True, type=_positive_int)
    b.add_argument("--k", type=_nonneg_int)
    b.add_argument("--delta1", required=True, type=_positive_float)
    b.add_argument("--delta2", type=_positive_float)
    b.add_argument("--tol", type=_tol, default=1e-9)
    b.add_argument("--out", type=Path)

    t = sub.add_parser("bounds", help="tabulate exponent bounds")
    t.add_argument("--k", required=True, type=_nonneg_int)
    t.add_argument("--kmax", type=_nonneg_int)
    t.add_argument("--dim", required=True, type=int, choices=(2, 3))
    t.add_argument("--u-exp", dest="u_exp", type=_rational, default=bounds.UNIT_DISTANCE_R2)
    t.add_argument("--format", choices=("json", "csv"), default="json")

    e = sub.add_parser("experiment", help="run experiments")
    esub = e.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    g = esub.add_parser("growth", help="fit chain-count growth of a construction family")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--k", type=_nonneg_int)
    g.add_argument("--sizes", required=True, type=_csv_of(_positive_int))
    g.add_argument("--delta1", required=True, type=_positive_float)
    g.add_argument("--delta2", type=_positive_float)
    g.add_argument("--tol", type=_tol, default=1e-9)
    g.add_argument("--threads", type=_positive_int, default=1)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--out", type=Path)

    r = sub.add_parser("rich", help="r-rich point statistics")
    r.add_argument("--points", required=True, type=Path)
    r.add_argument("--delta", required=True, type=_positive_float)
    r.add_argument("--r", required=True, type=_csv_of(int))
    r.add_argument("--tol", type=_tol, default=1e-9)
    r.add_argument("--format", choices=("json", "csv"), default="json")
    return p


@dataclass
class CommandSpec:
    subcommand: str
    args: argparse.Namespace

    @property
    def k(self) -> int | None:
        deltas = getattr(self.args, "deltas", None)
        return None if deltas is None else len(deltas)


def parse_args(argv: list[str]) -> CommandSpec:
    """Parse ``argv``; raises :class:`UsageError` on anything malformed."""
    ns = build_parser().parse_args(argv)
    return CommandSpec(ns.subcommand, ns)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def _count(a) -> str:
    tol = TolerancePolicy(a.tol)
    ps = load_point_set(a.points, tol)
    ds = DistanceSequence(a.deltas)
    if a.method == "brute":
        value = count_chains_brute(ps, ds, tol)
    elif a.method == "walk":
        value = count_walks(ps, ds, tol)
    else:
        value = count_chains(ps, ds, tol, workers=a.threads)
    doc = {"count": str(value), "method": a.method, "k": ds.k, "deltas": list(ds.deltas),
           "n": ps.n, "dim": ps.dim, "tol": tol.rel_tol}
    if a.format == "csv":
        return table_to_csv([{"count": doc["count"], "method": a.method, "k": ds.k, "n": ps.n,
                              "dim": ps.dim, "tol": tol.rel_tol}])
    return _dump(doc)


def _construct(a) -> str:
    tol = TolerancePolicy(a.tol)
    out = construct(a.family, a.n, a.k, a.delta1, a.delta2, tol)
    doc = out.to_json_dict()
    doc["tol"] = tol.rel_tol
    if a.out is not None:
        a.out.write_text(_dump(doc))
        summary = {k: doc[k] for k in ("family", "dim", "deltas", "predicted_lb", "predicted_exponent", "tol")}
        summary.update(n=out.point_set.n, out=str(a.out))
        return _dump(summary)
    return _dump(doc)


def _bounds(a) -> str:
    kmax = a.k if a.kmax is None else a.kmax
    if kmax < a.k:
        raise UsageError("bounds: --kmax must be >= --k")
    rows = [bounds_row(k, a.dim, a.u_exp) for k in range(a.k, kmax + 1)]
    if a.format == "csv":
        return table_to_csv(rows)
    return _dump({"dim": a.dim, "u_exp": bounds.format_rational(a.u_exp), "rows": rows})


def _growth(a) -> str:
    tol = TolerancePolicy(a.tol)
    rep = growth_experiment(a.family, a.k, a.sizes, a.delta1, a.delta2, tol, workers=a.threads)
    text = rep.to_csv() if a.format == "csv" else rep.to_json()
    if a.out is not None:
        a.out.write_text(text)
    return text


def _rich(a) -> str:
    tol = TolerancePolicy(a.tol)
    ps = load_point_set(a.points, tol)
    rows = rich_report(ps, a.delta, a.r, tol)
    if a.format == "csv":
        return table_to_csv(rows)
    return _dump({"delta": a.delta, "dim": ps.dim, "n": ps.n, "tol": tol.rel_tol, "rows": rows})


_DISPATCH = {"count": _count, "construct": _construct, "bounds": _bounds, "rich": _rich}


def run(spec: CommandSpec, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    a = spec.args
    try:
        if spec.subcommand == "experiment":
            text = _growth(a)
        else:
            text = _DISPATCH[spec.subcommand](a)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except (ValidationError, OSError) as exc:
        print(f"kchain: {exc}", file=stderr)
        return EXIT_VALIDATION
    stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
