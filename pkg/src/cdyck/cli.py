"""Command-line front end.

Index conventions follow the count tables: ``--n 2 --level 1`` for usteps
means U_{2,1}, the up steps ending at height 2 summed over paths of length
2(n+1); peaks likewise. Points and udu use paths of length 2n.

Exit codes: 0 success, 1 identity failure, 2 usage error, 3 oracle cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from . import formulas as fm
from . import paths
from . import riordan as rd
from . import series as sr
from . import verify as vf
from .exact import as_count

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

TRIANGLE_STATS = ("points", "usteps", "peaks", "udu", "dd")
STAT_HELP = """statistics (table indexing):
  count   S_n^(r): r-colored Dyck paths of length 2n with no equal-colored dd
  points  P_{n,l}: points at height l, over those paths of length 2n
  usteps  U_{n,l}: up steps ending at height l+1, over paths of length 2(n+1)
  peaks   p_{n,l}: peaks with apex at height l+1, over paths of length 2(n+1)
  udu     T_{n,l}: paths of length 2n with exactly l udu windows
  dd      A_{n,l}: all r-colored paths of length 2n with exactly l equal-colored dd pairs
"""


class UsageError(Exception):
    pass


# -- triangle sources ------------------------------------------------------------


def _formula_cell(stat: str, n: int, ell: int, r: int) -> int:
    if stat == "dd":
        return fm.colored_dd_count(n, ell, r)
    return fm.evaluate(stat, n, ell, r).value


def _row_width(stat: str, n: int) -> int:
    if stat == "udu":
        return max(n, 1)
    return n + 1


def build_triangle(stat: str, r: int, n_max: int, route: str = "formula", cap=None, workers: int = 1) -> list[list[int]]:
    if route == "formula":
        return [[_formula_cell(stat, n, ell, r) for ell in range(_row_width(stat, n))] for n in range(n_max + 1)]
    if route == "riordan":
        return rd.riordan_table(stat, r, n_max)
    if route == "recurrence":
        return vf.recurrence_table(stat, r, n_max)
    if route == "series":
        if stat == "udu":
            tri = vf.udu_series_table(r, n_max)
        elif stat == "dd":
            tri = [[as_count(c) for c in row] for row in sr.y_triangle(lambda y: sr.series_A(r, y, n_max), n_max)]
        else:
            raise UsageError(f"no series route for {stat}; use riordan")
        return [row[: _row_width(stat, n)] for n, row in enumerate(tri)]
    if route == "oracle":
        kind = vf._ORACLE_KIND.get(stat) or (lambda ell: paths.SameColorDDCount(exactly=ell))
        return [
            [paths.oracle_total(kind(ell), n, r, cap=cap, workers=workers) for ell in range(_row_width(stat, n))]
            for n in range(n_max + 1)
        ]
    raise UsageError(f"unknown route {route!r}")


# -- rendering -------------------------------------------------------------------


def _cells(stat: str, rows: list[list[int]], width: int) -> list[list[str]]:
    out = []
    for n, row in enumerate(rows):
        cells = [str(v) for v in row]
        if stat == "udu" and n > 0:
            # T_{n,l} is only tabulated for l < n
            cells = cells[:n]
        out.append(cells + [""] * (width - len(cells)))
    return out


def render_triangle(stat: str, r: int, rows: list[list[int]], fmt: str) -> str:
    n_max = len(rows) - 1
    width = max(1, n_max) if stat == "udu" else n_max + 1
    body = _cells(stat, rows, width)
    header = [str(k) for k in range(width)]
    if fmt == "json":
        return json.dumps(
            {"stat": stat, "r": r, "n_max": n_max, "rows": [[c for c in row if c != ""] for row in body]},
            indent=2,
        )
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n/l"] + header)
        for n, row in enumerate(body):
            w.writerow([n] + row)
        return buf.getvalue().rstrip("\n")
    lines = ["| n/l | " + " | ".join(header) + " |", "|" + "---:|" * (width + 1)]
    for n, row in enumerate(body):
        lines.append(f"| {n} | " + " | ".join(row) + " |")
    return "\n".join(lines)


def render_count(r: int, values: list[int], fmt: str) -> str:
    cells = [str(v) for v in values]
    if fmt == "json":
        return json.dumps({"stat": "count", "r": r, "n_max": len(values) - 1, "values": cells}, indent=2)
    header = [str(n) for n in range(len(values))]
    if fmt == "csv":
        return "r/n," + ",".join(header) + f"\n{r}," + ",".join(cells)
    return "\n".join(
        [
            "| r/n | " + " | ".join(header) + " |",
            "|" + "---:|" * (len(values) + 1),
            f"| {r} | " + " | ".join(cells) + " |",
        ]
    )


# -- subcommands -------------------------------------------------------------------


def cmd_table(args) -> int:
    _need(args, "stat", "r", "n_max")
    fmt = _format(args.format)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    if args.stat == "count":
        values = [as_count(c) for c in sr.series_Sr(args.r, args.n_max).coeffs]
        if args.route == "formula":
            values = [fm.schroder_r(n, args.r) for n in range(args.n_max + 1)]
        print(render_count(args.r, values, fmt))
        return EXIT_OK
    if args.stat not in TRIANGLE_STATS:
        raise UsageError(f"unknown --stat {args.stat!r}")
    if args.r < 2 and args.stat != "dd":
        raise UsageError("--r must be >= 2")
    rows = build_triangle(args.stat, args.r, args.n_max, args.route, args.cap, args.workers)
    print(render_triangle(args.stat, args.r, rows, fmt))
    return EXIT_OK


def _verify_kwargs(args) -> dict:
    kw = {}
    if args.n_max is not None:
        kw["n_max"] = args.n_max
    if args.r:
        kw["r_range"] = tuple(args.r)
    if (args.a is None) != (args.b is None):
        raise UsageError("--a and --b must be given together")
    if args.a is not None:
        kw["grid"] = ((Fraction(args.a), Fraction(args.b)),)
    if args.m_max is not None:
        kw["m_max"] = args.m_max
    if args.m:
        kw["m_grid"] = tuple(Fraction(m) for m in args.m)
    if args.order is not None:
        kw["order"] = args.order
    return kw


def cmd_verify(args) -> int:
    check_id = args.id or "all"
    kw = _verify_kwargs(args)
    if check_id == "all":
        ids = sorted(vf.CHECKS)
    elif check_id in vf.CHECKS:
        ids = [check_id]
    else:
        raise UsageError(f"unknown check id {check_id!r}; valid ids: all, " + ", ".join(sorted(vf.CHECKS)))
    try:
        reports = [vf.CHECKS[cid].run(**kw) for cid in ids]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit_reports(reports, args.format)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _emit_reports(reports, fmt) -> None:
    if fmt == "json":
        print(vf.reports_to_json(reports))
        return
    for rep in reports:
        print(rep.summary())
    failed = [r.check_id for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed" + (f"; failed: {', '.join(failed)}" if failed else ""))


def cmd_cross_check(args) -> int:
    stats = ["points", "usteps", "peaks", "udu"] if args.stat in (None, "all") else [args.stat]
    n_max = 6 if args.n_max is None else args.n_max
    rs = tuple(args.r) if args.r else (2, 3)
    try:
        reports = [vf.cross_check(s, n_max, rs, cap=args.cap, workers=args.workers) for s in stats]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit_reports(reports, args.format)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_oracle(args) -> int:
    _need(args, "stat", "n", "r")
    level = args.level or 0
    if args.stat not in TRIANGLE_STATS:
        raise UsageError(f"unknown --stat {args.stat!r}")
    kind = {
        "points": paths.PointsAtLevel(level),
        "usteps": paths.UStepsAtLevel(level + 1),
        "peaks": paths.PeaksAtLevel(level + 1),
        "udu": paths.UduCount(exactly=level),
        "dd": paths.SameColorDDCount(exactly=level),
    }[args.stat]
    print(paths.oracle_total(kind, args.n, args.r, cap=args.cap, workers=args.workers))
    return EXIT_OK


def cmd_series(args) -> int:
    _need(args, "which")
    order = 10 if args.order is None else args.order
    which = args.which
    try:
        if which == "Sr":
            _need(args, "r")
            s = sr.series_Sr(args.r, order)
        elif which == "T0":
            _need(args, "r")
            s = sr.series_T0(args.r, order)
        elif which in ("S", "C", "M"):
            _need(args, "a", "b")
            build = {"S": sr.series_S, "C": sr.series_C, "M": sr.series_M}[which]
            s = build(Fraction(args.a), Fraction(args.b), order)
        elif which in ("A", "T"):
            _need(args, "r", "y")
            s = (sr.series_A if which == "A" else sr.series_T)(args.r, Fraction(args.y), order)
        elif which == "Z":
            _need(args, "m", "a", "b")
            s = sr.z_series(int(args.m[0]), Fraction(args.a), Fraction(args.b), order)
        else:
            raise UsageError(f"unknown series {which!r}")
    except (sr.SeriesError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    print(",".join(str(c) for c in s.coeffs))
    return EXIT_OK


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) in (None, [])]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _format(fmt: str | None) -> str:
    fmt = (fmt or "md").lower()
    fmt = {"markdown": "md"}.get(fmt, fmt)
    if fmt not in ("md", "csv", "json"):
        raise UsageError(f"unknown format {fmt!r}")
    return fmt


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cdyck",
        description="Exact counts and identities for colored Dyck path statistics.",
        epilog=STAT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="JSON file of option defaults; command-line flags win")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def oracle_opts(sp):
        sp.add_argument("--cap", type=int, help=f"oracle size cap on n (default 8 for r<=3, else 7; env {paths.CAP_ENV})")
        sp.add_argument("--workers", type=int, default=1, help="processes for the oracle sweep")

    t = sub.add_parser("table", help="print a count table", epilog=STAT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    t.add_argument("--stat", choices=("count",) + TRIANGLE_STATS)
    t.add_argument("--r", type=int)
    t.add_argument("--n-max", type=int, dest="n_max")
    t.add_argument("--format", default="md", choices=("md", "markdown", "csv", "json"))
    t.add_argument("--route", default="formula", choices=("formula", "riordan", "recurrence", "series", "oracle"))
    oracle_opts(t)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--id", help="check id or 'all'")
    v.add_argument("--n-max", type=int, dest="n_max")
    v.add_argument("--r", type=int, nargs="+")
    v.add_argument("--a")
    v.add_argument("--b")
    v.add_argument("--m-max", type=int, dest="m_max")
    v.add_argument("--m", nargs="+", help="rational m values for the binomial transform check")
    v.add_argument("--order", type=int)
    v.add_argument("--format", default="text", choices=("text", "json"))
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force a single table cell", epilog=STAT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    o.add_argument("--stat", choices=TRIANGLE_STATS)
    o.add_argument("--n", type=int)
    o.add_argument("--level", type=int, default=0)
    o.add_argument("--r", type=int)
    oracle_opts(o)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("series", help="print series coefficients")
    s.add_argument("--which", choices=("S", "C", "M", "Sr", "T0", "A", "T", "Z"))
    s.add_argument("--r", type=int)
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--y")
    s.add_argument("--m", nargs=1)
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_series)

    c = sub.add_parser("cross-check", help="compare every route over a triangle")
    c.add_argument("--stat", choices=("all", "points", "usteps", "peaks", "udu"), default="all")
    c.add_argument("--n-max", type=int, dest="n_max")
    c.add_argument("--r", type=int, nargs="+")
    c.add_argument("--format", default="text", choices=("text", "json"))
    oracle_opts(c)
    c.set_defaults(func=cmd_cross_check)
    return p


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    """Install config values as parser defaults: top-level keys, then per-command sections."""
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        parser.error("config must be a JSON object")
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    shared = {k.replace("-", "_"): v for k, v in cfg.items() if not isinstance(v, dict)}
    for name, sp in subparsers.choices.items():
        known = {a.dest for a in sp._actions}
        section = {k.replace("-", "_"): v for k, v in cfg.get(name, {}).items()}
        sp.set_defaults(**{k: v for k, v in {**shared, **section}.items() if k in known})


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        _apply_config(parser, known.config)
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cdyck {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except paths.OracleCapError as exc:
        print(f"cdyck {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
