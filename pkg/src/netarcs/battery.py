"""Checks behind ``netarcs suite``: one named pass/fail item per acceptance criterion."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import constructions as C
from .geometry import equivalent
from .gf import contains_subfield, field_of_order, golden_poly, heptagon_poly, poly_roots, prime_power
from .nets import find_quads
from .search import (
    FOUND,
    NONE,
    SearchTask,
    count_orbits,
    exists_arc,
    exists_arc_bruteforce,
    resolve_open_cell,
    table_H_d,
    table_O_d,
    verify_nonexistence_suite,
)

O_D = {
    2: {3},
    3: {3, 4},
    4: {3, 4, 5},
    5: {3, 4, 5, 6},
    7: {3, 4, 6, 7, 8},
    8: {3, 4, 7, 8, 9},
    9: {3, 4, 5, 8, 9, 10},
}
H_D = {2: {3}, 3: set(), 4: {3, 5}, 5: set(), 7: set(), 8: {3, 7, 9}, 9: set(), 11: set()}


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def _timed(name, fn) -> Check:
    t0 = time.monotonic()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, ok, detail, time.monotonic() - t0)


def check_oval_tables():
    got = {q: table_O_d(field_of_order(q)) for q in O_D}
    bad = {q: sorted(v) for q, v in got.items() if v != O_D[q]}
    return not bad, "all match" if not bad else f"mismatch {bad}"


def check_hyperoval_tables():
    got = {q: table_H_d(field_of_order(q)) for q in H_D}
    bad = {q: sorted(v) for q, v in got.items() if v != H_D[q]}
    return not bad, "all match" if not bad else f"mismatch {bad}"


def construction_grid():
    """(label, thunk) for every construction over its valid grid with q <= 32."""
    items = []
    for q in prime_powers(2, 32):
        F = field_of_order(q)
        if F.p == 2:
            for k in range(2, F.k + 1):
                items.append((f"subgroup-hyperoval q={q} k={k}", lambda F=F, k=k: C.subgroup_hyperoval(F, k)))
            if q >= 4:
                items.append((f"conic-hyperoval q={q}", lambda F=F: C.conic_hyperoval(F)))
        if q <= 16:
            for t in ("secant", "tangent", "exterior"):
                r = {"secant": q - 1, "tangent": q, "exterior": q + 1}[t]
                if r >= 3:
                    items.append((f"conic-oval q={q} {t}", lambda F=F, t=t: C.conic_oval(F, t)))
        if q <= 31:
            for r in range(3, q + 2):
                if C.halfcyclotomic_trace(F, r) is not None:
                    items.append((f"root-of-unity-oval q={q} r={r}", lambda F=F, r=r: C.root_of_unity_oval(F, r)))
        if poly_roots(golden_poly(F)):
            items.append((f"standard-5net-oval q={q}", lambda F=F: C.standard_5net_oval(F)))
        if contains_subfield(F, 4):
            items.append((f"standard-5net-hyperoval q={q}", lambda F=F: C.standard_5net_hyperoval(F)))
        if poly_roots(heptagon_poly(F)):
            items.append((f"oval-7net q={q}", lambda F=F: C.oval_7net(F)))
        if F.p not in (2, 3) or (contains_subfield(F, 4) and q > 4):
            items.append((f"oval-6net q={q}", lambda F=F: C.oval_6net(F)))
        items.append((f"small 3-oval q={q}", lambda F=F: C.small_degree_sets(F, "3-oval")))
        if q > 2:
            items.append((f"small 4-oval q={q}", lambda F=F: C.small_degree_sets(F, "4-oval")))
        if F.p == 2:
            items.append((f"small 3-hyperoval q={q}", lambda F=F: C.small_degree_sets(F, "3-hyperoval")))
    items.append(("gf8-quadfree-hyperoval", C.gf8_quadfree_hyperoval))
    return items


def check_construction_battery():
    failures = []
    items = construction_grid()
    for label, thunk in items:
        try:
            c = thunk()
            if not c.verify():
                failures.append(label)
        except C.ConstructionError as exc:
            failures.append(f"{label} ({exc})")
    return not failures, f"{len(items) - len(failures)}/{len(items)} verified" + (
        f"; failed {failures}" if failures else ""
    )


def check_equivalence():
    a = count_orbits(field_of_order(11), 5, "oval")
    b = count_orbits(field_of_order(4), 5, "hyperoval")
    return a == 1 and b == 1, f"GF(11) 5-net ovals: {a} orbit(s); GF(4) 5-net hyperovals: {b} orbit(s)"


def check_inequivalence():
    G = C.subgroup_hyperoval(field_of_order(8), 3)
    H = C.gf8_quadfree_hyperoval()
    w = equivalent(G.points, H.points)
    qg, qh = len(find_quads(G.points, G.net)), len(find_quads(H.points, H.net))
    ok = w is None and qg > 0 and qh == 0
    return ok, f"witness={'none' if w is None else w.as_tuple()}; quads {qg} vs {qh}"


def oracle_rows():
    """(claim, q, searched, predicted) for the five iff-statements at small q."""
    rows = []

    def found(F, r, kind):
        return exists_arc(SearchTask(F, r, kind)).status == FOUND

    for q in prime_powers(2, 16):
        F = field_of_order(q)
        if q <= 13 and q + 1 >= 5:
            rows.append(("5-net oval", q, found(F, 5, "oval"), bool(poly_roots(golden_poly(F)))))
        if q + 1 >= 5:
            rows.append(("5-net hyperoval", q, found(F, 5, "hyperoval"), contains_subfield(F, 4)))
        if q + 1 >= 7:
            rows.append(("7-net hyperoval", q, found(F, 7, "hyperoval"), F.p == 2 and q >= 8))
        if q + 1 >= 6:
            pred = F.p not in (2, 3) or (contains_subfield(F, 4) and q > 4)
            rows.append(("6-net oval", q, found(F, 6, "oval"), pred))
        if q <= 13 and q + 1 >= 7:
            pred = (F.p == 2 and F.k >= 3) or bool(poly_roots(heptagon_poly(F)))
            rows.append(("7-net oval", q, found(F, 7, "oval"), pred))
    return rows


def check_oracles():
    rows = oracle_rows()
    bad = [(claim, q) for claim, q, a, b in rows if a != b]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} cells agree" + (f"; disagree {bad}" if bad else "")


def check_nonexistence():
    cells = verify_nonexistence_suite()
    bad = [(c.q, c.r, c.kind, c.status) for c in cells if not c.ok]
    return not bad, f"{len(cells) - len(bad)}/{len(cells)} cells empty" + (f"; {bad}" if bad else "")


def normalization_rows():
    rows = []
    for q in (2, 3, 4, 5):
        F = field_of_order(q)
        for r in range(3, q + 2):
            for kind in ("oval", "hyperoval"):
                if kind == "hyperoval" and r % 2 == 0:
                    continue
                a = exists_arc(SearchTask(F, r, kind)).status == FOUND
                rows.append((q, r, kind, a, exists_arc_bruteforce(F, r, kind)))
    return rows


def check_normalization():
    rows = normalization_rows()
    bad = [row[:3] for row in rows if row[3] != row[4]]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} cells agree" + (f"; {bad}" if bad else "")


def check_open_cell():
    r9 = resolve_open_cell(9)
    r11 = resolve_open_cell(11)
    ok = r9.status in (FOUND, NONE) and r11.status == NONE
    return ok, f"GF(13) r=9 hyperoval: {r9.status} ({r9.nodes} nodes); r=11: {r11.status}"


CHECKS = [
    ("1 oval tables", check_oval_tables),
    ("2 hyperoval tables", check_hyperoval_tables),
    ("3 construction battery", check_construction_battery),
    ("4 equivalence", check_equivalence),
    ("5 inequivalence", check_inequivalence),
    ("6 oracle equivalences", check_oracles),
    ("7 non-existence", check_nonexistence),
    ("8 normalization", check_normalization),
    ("9 open cell", check_open_cell),
]


def run_all() -> list[Check]:
    return [_timed(name, fn) for name, fn in CHECKS]
