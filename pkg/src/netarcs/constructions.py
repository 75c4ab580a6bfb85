"""Explicit ovals and hyperovals of Desarguesian nets.

Every builder returns a :class:`Construction` whose point set has already
been re-checked with :func:`netarcs.nets.is_arc`; a failed check raises
:class:`ConstructionError` instead of returning a bad object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .geometry import INF, AffinePoint, Slope, all_slopes, point, slope_of
from .gf import (
    FieldElement,
    FieldSpec,
    contains_subfield,
    field_make,
    golden_poly,
    heptagon_poly,
    poly_roots,
)
from .nets import NetSpec, PointSet, find_quads, is_arc, required_slopes


class ConstructionError(ValueError):
    """Parameters admit no construction, or the result failed verification."""


@dataclass
class Construction:
    name: str
    params: dict
    net: NetSpec
    points: PointSet
    expected_kind: str
    notes: dict = field(default_factory=dict)

    @property
    def spec(self) -> FieldSpec:
        return self.net.spec

    @property
    def r(self) -> int:
        return self.net.r

    def verify(self) -> bool:
        return is_arc(self.points, self.net).kind == self.expected_kind

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "field": self.spec.descriptor,
            "r": self.r,
            "expected_kind": self.expected_kind,
            "slopes": [str(s) for s in self.net.sorted_slopes()],
            "points": [str(P) for P in self.points],
        }


def _finish(name: str, params: dict, spec: FieldSpec, slopes, points, kind: str, **notes) -> Construction:
    try:
        net = NetSpec(spec, slopes)
    except ValueError as exc:
        raise ConstructionError(f"{name}: {exc}") from exc
    c = Construction(name, params, net, PointSet(points), kind, notes)
    report = is_arc(c.points, c.net)
    if report.kind != kind:
        raise ConstructionError(f"{name}{params} produced a {report.kind}, expected {kind}")
    return c


def _least_root(poly, what: str) -> FieldElement:
    roots = poly_roots(poly)
    if not roots:
        raise ConstructionError(f"{poly.spec!r} has no root of {what}")
    return roots[0]


def _extra_slope(spec: FieldSpec, used) -> Slope:
    for s in all_slopes(spec):
        if s not in used:
            return s
    raise ConstructionError("no parallel class left to adjoin")


# --- transformations of a hyperoval ---


def delete_point(c: Construction, index: int = 0) -> Construction:
    """Drop one point of a hyperoval: an oval of the same net."""
    if c.expected_kind != "hyperoval":
        raise ConstructionError("delete_point needs a hyperoval")
    pts = [P for i, P in enumerate(c.points) if i != index]
    return _finish(c.name + "-minus-point", dict(c.params, deleted=index), c.spec, c.net.slopes, pts, "oval")


def adjoin_slope(c: Construction, s: Slope | None = None) -> Construction:
    """Add one parallel class to the net of a hyperoval: an oval of the larger net."""
    if c.expected_kind != "hyperoval":
        raise ConstructionError("adjoin_slope needs a hyperoval")
    s = s if s is not None else _extra_slope(c.spec, c.net.slopes)
    return _finish(
        c.name + "-plus-slope", dict(c.params, adjoined=str(s)), c.spec, c.net.slopes | {s}, c.points, "oval"
    )


# --- builders ---


def subgroup_hyperoval(spec: FieldSpec, k: int) -> Construction:
    """{(x, x^2) : x in S} for S the GF(2)-span of 1, x, ..., x^(k-1)."""
    if spec.p != 2:
        raise ConstructionError("subgroup hyperovals need characteristic 2")
    if 2**k > spec.q:
        raise ConstructionError(f"2^{k} exceeds |GF({spec.q})|")
    if k < 2:
        raise ConstructionError("k >= 2 is needed for a net of degree >= 3")
    S = [spec(c) for c in range(2**k)]
    pts = [AffinePoint(x, x * x) for x in S]
    slopes = [Slope(x) for x in S if x]
    return _finish("subgroup-hyperoval", {"k": k}, spec, slopes, pts, "hyperoval")


_LINE_TYPES = ("secant", "tangent", "exterior")


def _conic_points(spec: FieldSpec):
    z, o = spec.zero, spec.one
    return [(t, t * t, o) for t in spec.elements()] + [(z, o, z)]


def _on_line(line, P) -> bool:
    return not (line[0] * P[0] + line[1] * P[1] + line[2] * P[2])


def _exterior_line(spec: FieldSpec, avoid):
    """First line y = m x + b (scan by m then b) missing every point of ``avoid``."""
    for m in spec.elements():
        for b in spec.elements():
            line = (m, -spec.one, b)
            if not any(_on_line(line, P) for P in avoid):
                return line
    raise ConstructionError("no exterior line")  # pragma: no cover


def _recoordinatize(spec: FieldSpec, line, pts):
    """Projectivity sending ``line`` to the ideal line; returns affine points and ideal slopes hit."""
    z, o = spec.zero, spec.one
    basis = [(o, z, z), (z, o, z), (z, z, o)]
    for r1, r2 in itertools.combinations(basis, 2):
        rows = [r1, r2, tuple(line)]
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if det:
            break
    affine, ideal = [], set()
    for P in pts:
        img = [row[0] * P[0] + row[1] * P[1] + row[2] * P[2] for row in rows]
        if img[2]:
            affine.append(AffinePoint(img[0] / img[2], img[1] / img[2]))
        else:
            ideal.add(INF if not img[0] else Slope(img[1] / img[0]))
    return affine, ideal


def conic_oval(spec: FieldSpec, line_type: str) -> Construction:
    """Conic y = x^2 with a secant, tangent or exterior line sent to infinity."""
    if line_type not in _LINE_TYPES:
        raise ConstructionError(f"line_type must be one of {_LINE_TYPES}")
    z, o = spec.zero, spec.one
    conic = _conic_points(spec)
    if line_type == "secant":
        line = (-o, o, z)  # y = x, through (0,0) and (1,1)
    elif line_type == "tangent":
        line = (z, o, z)  # y = 0, tangent at (0,0)
    else:
        line = _exterior_line(spec, conic)
    r = spec.q + 1 - sum(_on_line(line, P) for P in conic)
    if r < 3:
        raise ConstructionError(f"{line_type} line over GF({spec.q}) gives degree {r} < 3")
    affine, ideal = _recoordinatize(spec, line, conic)
    slopes = [s for s in all_slopes(spec) if s not in ideal]
    params = {"line_type": line_type, "line": [c.code for c in line]}
    return _finish("conic-oval", params, spec, slopes, affine, "oval")


def conic_hyperoval(spec: FieldSpec) -> Construction:
    """Conic plus nucleus (even q) with an exterior line sent to infinity."""
    if spec.p != 2:
        raise ConstructionError("conic hyperovals need even q")
    if spec.q < 4:
        raise ConstructionError("need q >= 4")
    z, o = spec.zero, spec.one
    hyper = _conic_points(spec) + [(o, z, z)]  # nucleus of y = x^2 in char 2
    line = _exterior_line(spec, hyper)
    affine, ideal = _recoordinatize(spec, line, hyper)
    assert not ideal
    params = {"line": [c.code for c in line]}
    return _finish("conic-hyperoval", params, spec, all_slopes(spec), affine, "hyperoval")


def halfcyclotomic_trace(spec: FieldSpec, r: int) -> FieldElement | None:
    """Least c = zeta + 1/zeta with zeta of multiplicative order exactly r.

    The order of zeta is the least k >= 1 with c_k = 2 in the recurrence
    c_0 = 2, c_1 = c, c_k = c c_{k-1} - c_{k-2} (c_k = zeta^k + zeta^-k).
    """
    two = spec.from_int(2)
    for c in spec.elements():
        prev, cur = two, c
        order = 1
        while cur != two and order <= r:
            prev, cur = cur, c * cur - prev
            order += 1
        if order == r:
            return c
    return None


def root_of_unity_oval(spec: FieldSpec, r: int) -> Construction:
    """Points (zeta^k + zeta^-k, sum_{|i|<k} zeta^i) for k = 1..r."""
    if r < 3:
        raise ConstructionError("r must be at least 3")
    c = halfcyclotomic_trace(spec, r)
    if c is None:
        raise ConstructionError(f"GF({spec.q}) has no zeta + 1/zeta for zeta of order {r}")
    cs = [spec.from_int(2), c]
    for _ in range(2, r + 1):
        cs.append(c * cs[-1] - cs[-2])
    pts = []
    s = spec.one
    for k in range(1, r + 1):
        pts.append(AffinePoint(cs[k], s))
        s = s + cs[k]
    if len(set(pts)) != r:
        raise ConstructionError("points coincide")
    try:
        slopes = required_slopes(pts)
    except ValueError as exc:
        raise ConstructionError(str(exc)) from exc
    return _finish("root-of-unity-oval", {"r": r, "c": c.code}, spec, slopes, pts, "oval", ordered=pts)


def standard_5net_oval(spec: FieldSpec) -> Construction:
    b = _least_root(golden_poly(spec), "x^2 + x - 1")
    P = lambda x, y: point(spec, x, y)  # noqa: E731
    pts = [P(1, 1), P(1, 0), P(0, 0), P(0, b), P(b + 1, b)]
    slopes = [Slope(spec.zero), Slope(spec.one), INF, Slope(1 - b), Slope(-b)]
    return _finish("standard-5net-oval", {"b": b.code}, spec, slopes, pts, "oval")


def standard_5net_hyperoval(spec: FieldSpec) -> Construction:
    if not contains_subfield(spec, 4):
        raise ConstructionError(f"GF(4) is not a subfield of GF({spec.q})")
    b = _least_root(golden_poly(spec), "x^2 + x - 1")
    P = lambda x, y: point(spec, x, y)  # noqa: E731
    pts = [P(1, 1), P(1, 0), P(0, 0), P(0, b), P(b + 1, b), P(b + 1, 1)]
    slopes = [Slope(spec.zero), Slope(spec.one), INF, Slope(1 - b), Slope(-b)]
    return _finish("standard-5net-hyperoval", {"b": b.code}, spec, slopes, pts, "hyperoval")


def oval_7net(spec: FieldSpec) -> Construction:
    b = _least_root(heptagon_poly(spec), "x^3 - x^2 - 2x + 1")
    P = lambda x, y: point(spec, x, y)  # noqa: E731
    pts = [
        P(0, 0),
        P(1, 0),
        P(0, -1),
        P(1, b - 1),
        P(1 - b, -1),
        P(b * b - b, b - 1),
        P(1 - b, b - b * b),
    ]
    slopes = [Slope(spec.one), Slope(spec.zero), Slope(b), Slope(b - 1), INF, Slope(1 / b), Slope(1 / (b - 1))]
    return _finish("oval-7net", {"b": b.code}, spec, slopes, pts, "oval")


def oval_6net(spec: FieldSpec) -> Construction:
    if spec.p == 3:
        raise ConstructionError("no 6-net oval in characteristic 3")
    if spec.p != 2:
        P = lambda x, y: point(spec, x, y)  # noqa: E731
        pts = [P(0, 0), P(1, 0), P(0, 1), P(2, 1), P(1, 2), P(2, 2)]
        half = 1 / spec.from_int(2)
        slopes = [Slope(spec.zero), Slope(spec.one), INF, Slope(half), Slope(spec.from_int(2)), Slope(-spec.one)]
        return _finish("oval-6net", {}, spec, slopes, pts, "oval")
    if not contains_subfield(spec, 4) or spec.q == 4:
        raise ConstructionError(f"GF({spec.q}) does not properly contain GF(4)")
    c = adjoin_slope(standard_5net_hyperoval(spec))
    return _finish("oval-6net", {"adjoined": c.params["adjoined"]}, spec, c.net.slopes, c.points, "oval")


def gf8_quadfree_hyperoval() -> Construction:
    F = field_make(2, 3)
    b = F.gen
    ib = 1 / b
    P = lambda x, y: point(F, x, y)  # noqa: E731
    pts = [P(0, 0), P(1, 1), P(0, ib), P(ib, 0), P(1, b), P(b, 1), P(b, ib), P(ib, b)]
    slopes = [Slope(F.one), INF, Slope(F.zero), Slope(b), Slope(b * b + 1), Slope(b * b + b + 1), Slope(b * b)]
    c = _finish("gf8-quadfree-hyperoval", {}, F, slopes, pts, "hyperoval")
    if find_quads(c.points, c.net):
        raise ConstructionError("expected a hyperoval without quads")
    return c


SMALL_KINDS = ("3-oval", "4-oval", "3-hyperoval")


def small_degree_sets(spec: FieldSpec, which: str) -> Construction:
    """Triangle, or the unit square as a 4-net oval / 3-net hyperoval."""
    P = lambda x, y: point(spec, x, y)  # noqa: E731
    if which == "3-oval":
        pts = [P(0, 0), P(1, 0), P(0, 1)]
        return _finish("small-degree-sets", {"which": which}, spec, required_slopes(pts), pts, "oval")
    square = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]
    base = {Slope(spec.zero), Slope(spec.one), INF}
    if which == "3-hyperoval":
        if spec.p != 2:
            raise ConstructionError("a 3-net hyperoval needs characteristic 2")
        return _finish("small-degree-sets", {"which": which}, spec, base, square, "hyperoval")
    if which == "4-oval":
        if spec.q == 2:
            raise ConstructionError("GF(2) holds no 4-net with oval")
        if spec.p == 2:
            extra = _extra_slope(spec, base)
        else:
            extra = Slope(-spec.one)
        return _finish("small-degree-sets", {"which": which}, spec, base | {extra}, square, "oval")
    raise ConstructionError(f"which must be one of {SMALL_KINDS}")


# --- registry used by the CLI and the table cross-checks ---

REGISTRY: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "subgroup-hyperoval": (subgroup_hyperoval, ("k",)),
    "conic-oval": (conic_oval, ("line_type",)),
    "conic-hyperoval": (conic_hyperoval, ()),
    "root-of-unity-oval": (root_of_unity_oval, ("r",)),
    "standard-5net-oval": (standard_5net_oval, ()),
    "standard-5net-hyperoval": (standard_5net_hyperoval, ()),
    "oval-7net": (oval_7net, ()),
    "oval-6net": (oval_6net, ()),
    "gf8-quadfree-hyperoval": (gf8_quadfree_hyperoval, ()),
    "small-degree-sets": (small_degree_sets, ("which",)),
}


def build(name: str, spec: FieldSpec | None = None, **params) -> Construction:
    if name not in REGISTRY:
        raise ConstructionError(f"unknown construction {name!r}; choose from {sorted(REGISTRY)}")
    fn, names = REGISTRY[name]
    missing = [n for n in names if n not in params]
    if missing:
        raise ConstructionError(f"{name} needs parameter(s) {missing}")
    if name == "gf8-quadfree-hyperoval":
        return fn()
    if spec is None:
        raise ConstructionError(f"{name} needs a field")
    return fn(spec, **{n: params[n] for n in names})


def _attempt(fn, *args):
    try:
        return fn(*args)
    except ConstructionError:
        return None


def constructions_for(spec: FieldSpec, r: int, kind: str) -> list[Construction]:
    """Every known construction over ``spec`` of the given degree and kind."""
    found: list[Construction | None] = []
    hypers = [_attempt(small_degree_sets, spec, "3-hyperoval"), _attempt(conic_hyperoval, spec)]
    hypers.append(_attempt(standard_5net_hyperoval, spec))
    hypers += [_attempt(subgroup_hyperoval, spec, k) for k in range(2, spec.k + 1)]
    hypers = [h for h in hypers if h is not None]
    if kind == "hyperoval":
        found = [h for h in hypers if h.r == r]
    else:
        found.append(_attempt(small_degree_sets, spec, "3-oval"))
        found.append(_attempt(small_degree_sets, spec, "4-oval"))
        found += [_attempt(conic_oval, spec, t) for t in _LINE_TYPES]
        found.append(_attempt(root_of_unity_oval, spec, r) if r >= 3 else None)
        found += [_attempt(f, spec) for f in (standard_5net_oval, oval_6net, oval_7net)]
        for h in hypers:
            if h.r == r:
                found.append(_attempt(delete_point, h))
            if h.r + 1 == r:
                found.append(_attempt(adjoin_slope, h))
        found = [c for c in found if c is not None and c.r == r]
    return found

