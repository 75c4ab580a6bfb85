"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 search budget exhausted.  Output is deterministic for identical
requests unless ``--timings`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import battery
from .constructions import REGISTRY, ConstructionError, build
from .geometry import AffinePoint, equivalent, parse_slope
from .gf import FieldSpec, parse_field
from .nets import NetSpec, PointSet, is_arc, required_slopes
from .search import (
    BUDGET,
    BudgetExceeded,
    CrossCheckFailure,
    InvalidTask,
    SearchTask,
    exists_arc,
    table_cells,
)

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

SEARCH_CSV_COLUMNS = ("q", "r", "kind", "status", "nodes", "orbit_count", "millis", "slopes", "points")
CONSTRUCT_CSV_COLUMNS = ("name", "field", "r", "expected_kind", "verified", "slopes", "points")
VERIFY_CSV_COLUMNS = ("field", "r", "kind", "reason", "witness", "profile")


class InputError(ValueError):
    pass


# --- parsing helpers ---


def parse_points(spec: FieldSpec, text: str) -> list[AffinePoint]:
    """``"1,1; 1,0; 0,w"``: pairs separated by ';' or whitespace; parentheses optional."""
    out = []
    for chunk in text.replace("(", " ").replace(")", " ").replace(";", " ").split():
        xs, sep, ys = chunk.partition(",")
        if not sep:
            raise InputError(f"bad point {chunk!r}; expected x,y")
        out.append(AffinePoint(spec.parse(xs), spec.parse(ys)))
    return out


def parse_slopes(spec: FieldSpec, text: str):
    return [parse_slope(spec, t) for t in text.split(",") if t.strip()]


def read_points_file(path: str, spec: FieldSpec | None = None):
    """Header line: field descriptor; optional ``slopes: ...`` line; then one ``cx,cy`` per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError(f"{path} is empty")
    head = lines.pop(0)
    file_spec = parse_field(head)
    if spec is not None and file_spec is not spec:
        raise InputError(f"{path} is over {file_spec.descriptor}, expected {spec.descriptor}")
    slopes = None
    points = []
    for ln in lines:
        if ln.lower().startswith("slopes"):
            slopes = parse_slopes(file_spec, ln.split(":", 1)[1] if ":" in ln else ln[6:])
        else:
            points.extend(parse_points(file_spec, ln))
    return file_spec, slopes, points


def parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return battery.prime_powers(int(lo), int(hi))
    return [int(t) for t in text.split(",")]


# --- output ---


class Writer:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, command: str, payload: dict, rows: list[dict] | None = None, columns=None, text: str = ""):
        if self.fmt == "json":
            doc = {"schema": SCHEMA, "command": command}
            doc.update(payload)
            self.stream.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
        elif self.fmt == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            for row in rows or []:
                w.writerow(row)
            self.stream.write(buf.getvalue())
        else:
            self.stream.write(text.rstrip("\n") + "\n")

    def error(self, kind: str, message: str):
        if self.fmt == "json":
            rec = {"schema": SCHEMA, "error": {"type": kind, "message": message}}
            self.stream.write(json.dumps(rec, indent=2) + "\n")
        else:
            sys.stderr.write(f"error ({kind}): {message}\n")


def _search_row(rec: dict) -> dict:
    w = rec.get("witness") or {}
    return {
        **rec,
        "slopes": " ".join(w.get("slopes", [])),
        "points": " ".join(w.get("points", [])),
    }


# --- subcommands ---


def cmd_construct(args, out: Writer) -> int:
    spec = parse_field(args.field) if args.field else None
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.line_type is not None:
        params["line_type"] = args.line_type
    if args.r is not None:
        params["r"] = args.r
    if args.which is not None:
        params["which"] = args.which
    c = build(args.name, spec, **params)
    ok = c.verify()
    rec = c.to_record()
    rec["verified"] = ok
    text = (
        f"{c.name} over GF({c.spec.q}) [{c.spec.descriptor}]  r={c.r}  {c.expected_kind}"
        f"  verified={ok}\nslopes: {','.join(rec['slopes'])}\npoints: {' '.join(rec['points'])}"
    )
    row = dict(rec, slopes=" ".join(rec["slopes"]), points=" ".join(rec["points"]))
    out.emit("construct", {"construction": rec}, [row], CONSTRUCT_CSV_COLUMNS, text)
    if args.output:
        lines = [c.spec.descriptor, "slopes: " + ",".join(rec["slopes"])]
        lines += [P.strip("()") for P in rec["points"]]
        Path(args.output).write_text("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out: Writer) -> int:
    spec = parse_field(args.field) if args.field else None
    slopes, points = None, []
    if args.file:
        spec, slopes, points = read_points_file(args.file, spec)
    if spec is None:
        raise InputError("a field is required (--field or a points file)")
    if args.points:
        points += parse_points(spec, args.points)
    if args.slopes:
        slopes = parse_slopes(spec, args.slopes)
    if len(points) < 2:
        raise InputError("need at least two points")
    if slopes is None:
        slopes = sorted(required_slopes(points))
    net = NetSpec(spec, slopes)
    rep = is_arc(PointSet(points), net)
    rec = rep.to_record()
    text = f"kind={rep.kind}"
    if rep.witness:
        text += f"  witness={' '.join(rec['witness'])} ({rep.reason})"
    text += "\nprofile: " + " ".join(f"{s}:{n}" for s, n in rec["secant_profile"])
    row = {
        "field": spec.descriptor,
        "r": net.r,
        "kind": rep.kind,
        "reason": rep.reason,
        "witness": " ".join(rec["witness"] or []),
        "profile": " ".join(f"{s}:{n}" for s, n in rec["secant_profile"]),
    }
    out.emit("verify", {"field": spec.descriptor, "r": net.r, "report": rec}, [row], VERIFY_CSV_COLUMNS, text)
    if args.expect:
        return EXIT_OK if rep.kind == args.expect else EXIT_FAIL
    return EXIT_OK if rep.is_arc else EXIT_FAIL


def cmd_search(args, out: Writer) -> int:
    spec = parse_field(args.field)
    task = SearchTask(spec, args.r, args.kind, mode=args.mode, max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    res = exists_arc(task, workers=args.workers)
    rec = res.to_record(timings=args.timings)
    text = f"GF({spec.q}) r={args.r} {args.kind}: {res.status} ({res.nodes} nodes)"
    if res.witness:
        text += f"\nslopes: {','.join(rec['witness']['slopes'])}\npoints: {' '.join(rec['witness']['points'])}"
    if res.orbit_count is not None:
        text += f"\norbits: {res.orbit_count}"
    out.emit("search", {"field": spec.descriptor, "result": rec}, [_search_row(rec)], SEARCH_CSV_COLUMNS, text)
    return EXIT_BUDGET if res.status == BUDGET else EXIT_OK


def cmd_table(args, out: Writer) -> int:
    from .gf import field_of_order

    rows_out, csv_rows, text_lines = [], [], []
    label = "O_d" if args.kind == "oval" else "H_d"
    code = EXIT_OK
    for q in parse_range(args.q):
        spec = field_of_order(q)
        try:
            cells = table_cells(spec, args.kind, max_nodes=args.max_nodes, max_seconds=args.max_seconds)
        except BudgetExceeded as exc:
            rec = exc.result.to_record(timings=args.timings)
            rows_out.append({"q": q, "status": BUDGET, "cell": rec})
            csv_rows.append(_search_row(rec))
            text_lines.append(f"q={q}: budget exceeded at r={exc.result.task.r}")
            code = EXIT_BUDGET
            continue
        values = sorted(r for r, res in cells.items() if res.status == "found")
        recs = [res.to_record(timings=args.timings) for res in cells.values()]
        rows_out.append({"q": q, "values": values, "cells": recs})
        csv_rows.extend(_search_row(r) for r in recs)
        text_lines.append(f"q={q:<3} {label} = {{{', '.join(map(str, values))}}}")
    out.emit("table", {"kind": args.kind, "rows": rows_out}, csv_rows, SEARCH_CSV_COLUMNS, "\n".join(text_lines))
    return code


def cmd_equiv(args, out: Writer) -> int:
    spec = parse_field(args.field) if args.field else None
    sets = []
    for inline, path in ((args.a, args.a_file), (args.b, args.b_file)):
        if path:
            spec, _, pts = read_points_file(path, spec)
        elif inline:
            if spec is None:
                raise InputError("--field is required with inline points")
            pts = parse_points(spec, inline)
        else:
            raise InputError("two point sets are required")
        sets.append(PointSet(pts))
    S, T = sets
    if len(S) != len(T):
        raise InputError("point sets differ in size")
    w = equivalent(S, T)
    payload = {
        "field": spec.descriptor,
        "equivalent": w is not None,
        "collineation": None if w is None else list(w.as_tuple()),
    }
    text = "inequivalent" if w is None else "equivalent via (a,b,c,d,e,f,i) = " + ",".join(map(str, w.as_tuple()))
    row = {"equivalent": w is not None, "collineation": "" if w is None else " ".join(map(str, w.as_tuple()))}
    out.emit("equiv", payload, [row], ("equivalent", "collineation"), text)
    if args.expect:
        return EXIT_OK if (w is not None) == (args.expect == "equivalent") else EXIT_FAIL
    return EXIT_OK


def cmd_suite(args, out: Writer) -> int:
    checks = battery.run_all()
    recs = []
    for c in checks:
        rec = {"name": c.name, "ok": c.ok, "detail": c.detail}
        if args.timings:
            rec["millis"] = int(c.seconds * 1000)
        recs.append(rec)
    text = "\n".join(c.line() for c in checks)
    out.emit("suite", {"checks": recs}, recs, ("name", "ok", "detail"), text)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netarcs", description="Ovals and hyperovals of Desarguesian nets.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--timings", action="store_true", help="include wall-clock times (not byte-stable)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build and verify a named construction")
    c.add_argument("name", help="one of: " + ", ".join(sorted(REGISTRY)))
    c.add_argument("--field")
    c.add_argument("--k", type=int)
    c.add_argument("--line-type", choices=("secant", "tangent", "exterior"))
    c.add_argument("--r", type=int)
    c.add_argument("--which", choices=("3-oval", "4-oval", "3-hyperoval"))
    c.add_argument("--output", help="also write a points file")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="classify a point set in a net")
    v.add_argument("--field")
    v.add_argument("--slopes", help="comma separated codes, w-polynomials or inf")
    v.add_argument("--points", help="e.g. '1,1; 1,0; 0,w'")
    v.add_argument("--file", help="points file")
    v.add_argument("--expect", choices=("not-arc", "arc", "oval", "hyperoval"))
    v.set_defaults(func=cmd_verify)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-nodes", type=int)
    budget.add_argument("--max-seconds", type=float)

    s = sub.add_parser("search", parents=[common, budget], help="exhaustive search for one cell")
    s.add_argument("--field", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--kind", choices=("oval", "hyperoval"), default="oval")
    s.add_argument("--mode", choices=("decide", "enumerate-orbits"), default="decide")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", parents=[common, budget], help="O_d / H_d tables for a range of q")
    t.add_argument("--kind", choices=("oval", "hyperoval"), default="oval")
    t.add_argument("--q", default="2..9", help="'lo..hi' (prime powers only) or a comma list")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("equiv", parents=[common], help="affine equivalence of two point sets")
    e.add_argument("--field")
    e.add_argument("--a")
    e.add_argument("--b")
    e.add_argument("--a-file")
    e.add_argument("--b-file")
    e.add_argument("--expect", choices=("equivalent", "inequivalent"))
    e.set_defaults(func=cmd_equiv)

    u = sub.add_parser("suite", parents=[common], help="run the full acceptance battery")
    u.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Writer(args.format)
    try:
        return args.func(args, out)
    except (InputError, InvalidTask, ConstructionError, ValueError, OSError) as exc:
        out.error(type(exc).__name__, str(exc))
        return EXIT_INPUT
    except CrossCheckFailure as exc:
        out.error("CrossCheckFailure", str(exc))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
