"""Points, slopes, lines and collineations of the affine plane over GF(q).

The projective closure is never built; a parallel class is named by its
:class:`Slope` and that is all the bookkeeping the rest of the package needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gf import FieldElement, FieldSpec, frobenius


@dataclass(frozen=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement

    def __post_init__(self):
        if self.x.spec is not self.y.spec:
            raise ValueError("coordinates from different fields")

    @property
    def spec(self) -> FieldSpec:
        return self.x.spec

    @property
    def codes(self) -> tuple[int, int]:
        return (self.x.code, self.y.code)

    def __lt__(self, other: AffinePoint) -> bool:
        return self.codes < other.codes

    def __add__(self, other: AffinePoint) -> AffinePoint:
        return AffinePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: AffinePoint) -> AffinePoint:
        return AffinePoint(self.x - other.x, self.y - other.y)

    def __str__(self) -> str:
        return f"({self.x.code},{self.y.code})"

    def __repr__(self) -> str:
        return f"AffinePoint{self}"


def point(spec: FieldSpec, x: int | FieldElement, y: int | FieldElement) -> AffinePoint:
    """Build a point; ints are read as multiples of 1 (``-1`` is allowed)."""

    def conv(v):
        return v if isinstance(v, FieldElement) else spec.from_int(v)

    return AffinePoint(conv(x), conv(y))


def point_from_codes(spec: FieldSpec, cx: int, cy: int) -> AffinePoint:
    return AffinePoint(spec(cx), spec(cy))


@dataclass(frozen=True)
class Slope:
    """A parallel class: a finite slope ``m`` or infinity (``m is None``)."""

    m: FieldElement | None = None

    @classmethod
    def inf(cls) -> Slope:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.m is None

    @property
    def key(self) -> tuple[int, int]:
        return (1, 0) if self.m is None else (0, self.m.code)

    def __lt__(self, other: Slope) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return "inf" if self.m is None else str(self.m.code)

    def __repr__(self) -> str:
        return f"Slope({self})"


INF = Slope(None)


def finite(m: FieldElement) -> Slope:
    return Slope(m)


def parse_slope(spec: FieldSpec, token: str) -> Slope:
    token = token.strip()
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    return Slope(spec.parse(token))


@dataclass(frozen=True)
class Line:
    """``x = c`` when ``m`` is None, else ``y = m x + b``."""

    m: FieldElement | None
    b: FieldElement

    @property
    def slope(self) -> Slope:
        return Slope(self.m)

    def contains(self, P: AffinePoint) -> bool:
        if self.m is None:
            return P.x == self.b
        return P.y == self.m * P.x + self.b

    def __str__(self) -> str:
        if self.m is None:
            return f"x = {self.b.code}"
        return f"y = {self.m.code}x + {self.b.code}"


def slope_of(P: AffinePoint, Q: AffinePoint) -> Slope:
    if P == Q:
        raise ValueError("slope of a point with itself")
    dx = Q.x - P.x
    if not dx:
        return INF
    return Slope((Q.y - P.y) / dx)


def line_through(P: AffinePoint, s: Slope) -> Line:
    if s.m is None:
        return Line(None, P.x)
    return Line(s.m, P.y - s.m * P.x)


def collinear(P: AffinePoint, Q: AffinePoint, R: AffinePoint) -> bool:
    if P == Q or P == R or Q == R:
        raise ValueError("collinear() needs three distinct points")
    u, v = Q - P, R - P
    return not (u.x * v.y - u.y * v.x)


@dataclass(frozen=True)
class Collineation:
    """P -> L(P^(p^i)) + (e, f) with L = [[a, b], [c, d]] acting on columns."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement
    e: FieldElement
    f: FieldElement
    i: int = 0

    def __post_init__(self):
        if not (self.a * self.d - self.b * self.c):
            raise ValueError("singular linear part")
        if not 0 <= self.i < self.spec.k:
            raise ValueError("Frobenius exponent out of range")

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @classmethod
    def identity(cls, spec: FieldSpec) -> Collineation:
        z, o = spec.zero, spec.one
        return cls(o, z, z, o, z, z, 0)

    @classmethod
    def linear(cls, a, b, c, d, e=None, f=None) -> Collineation:
        spec = a.spec
        return cls(a, b, c, d, e if e is not None else spec.zero, f if f is not None else spec.zero, 0)

    @classmethod
    def translation(cls, e: FieldElement, f: FieldElement) -> Collineation:
        z, o = e.spec.zero, e.spec.one
        return cls(o, z, z, o, e, f, 0)

    def __call__(self, P: AffinePoint) -> AffinePoint:
        return apply(self, P)

    def compose(self, other: Collineation) -> Collineation:
        """``self`` after ``other``."""
        j = self.i
        oa, ob, oc, od = (frobenius(v, j) for v in (other.a, other.b, other.c, other.d))
        oe, of = frobenius(other.e, j), frobenius(other.f, j)
        a = self.a * oa + self.b * oc
        b = self.a * ob + self.b * od
        c = self.c * oa + self.d * oc
        d = self.c * ob + self.d * od
        e = self.a * oe + self.b * of + self.e
        f = self.c * oe + self.d * of + self.f
        return Collineation(a, b, c, d, e, f, (self.i + other.i) % self.spec.k)

    def inverse(self) -> Collineation:
        det = self.a * self.d - self.b * self.c
        ia, ib, ic, id_ = self.d / det, -self.b / det, -self.c / det, self.a / det
        # L^-1 (Q - t), then undo the Frobenius
        te = -(ia * self.e + ib * self.f)
        tf = -(ic * self.e + id_ * self.f)
        back = (self.spec.k - self.i) % self.spec.k
        vals = [frobenius(v, back) for v in (ia, ib, ic, id_, te, tf)]
        return Collineation(*vals, back)

    def as_tuple(self) -> tuple[int, ...]:
        return (self.a.code, self.b.code, self.c.code, self.d.code, self.e.code, self.f.code, self.i)


def apply(C: Collineation, P: AffinePoint) -> AffinePoint:
    if P.spec is not C.spec:
        raise ValueError("point and collineation over different fields")
    x, y = P.x, P.y
    if C.i:
        x, y = frobenius(x, C.i), frobenius(y, C.i)
    return AffinePoint(C.a * x + C.b * y + C.e, C.c * x + C.d * y + C.f)


def apply_all(C: Collineation, points: Iterable[AffinePoint]) -> list[AffinePoint]:
    return sorted(apply(C, P) for P in points)


def slope_image(C: Collineation, s: Slope) -> Slope:
    if s.m is None:
        return INF if not C.b else Slope(C.d / C.b)
    m = frobenius(s.m, C.i) if C.i else s.m
    den = C.a + C.b * m
    if not den:
        return INF
    return Slope((C.c + C.d * m) / den)


def _direction(s: Slope, spec: FieldSpec) -> tuple[FieldElement, FieldElement]:
    if s.m is None:
        return spec.zero, spec.one
    return spec.one, s.m


def frame_collineation(A: AffinePoint, B: AffinePoint, m0: Slope, m1: Slope, minf: Slope) -> Collineation:
    """Linear map with A -> (0,0), B -> (1,1) and slopes m0, m1, minf -> 0, 1, inf."""
    if len({m0, m1, minf}) != 3:
        raise ValueError("frame slopes must be distinct")
    if slope_of(A, B) != m1:
        raise ValueError("slope of AB differs from m1")
    spec = A.spec
    u0x, u0y = _direction(m0, spec)
    uix, uiy = _direction(minf, spec)
    v = B - A
    # B - A = alpha u0 + beta uinf
    det = u0x * uiy - uix * u0y
    alpha = (v.x * uiy - uix * v.y) / det
    beta = (u0x * v.y - v.x * u0y) / det
    # columns alpha u0, beta uinf go to (1,0), (0,1); invert that matrix
    ma, mb, mc, md = alpha * u0x, beta * uix, alpha * u0y, beta * uiy
    mdet = ma * md - mb * mc
    a, b, c, d = md / mdet, -mb / mdet, -mc / mdet, ma / mdet
    e = -(a * A.x + b * A.y)
    f = -(c * A.x + d * A.y)
    return Collineation.linear(a, b, c, d, e, f)


def quad_collineation(A: AffinePoint, B: AffinePoint, C: AffinePoint, E: AffinePoint) -> Collineation:
    """Linear map sending the ordered quad (A,B,C,E) to (0,0),(1,0),(1,1),(0,1)."""
    pts = [A, B, C, E]
    if len(set(pts)) != 4 or any(collinear(*t) for t in itertools.combinations(pts, 3)):
        raise ValueError("not a quadrangle")
    if slope_of(A, B) != slope_of(C, E) or slope_of(A, E) != slope_of(B, C):
        raise ValueError("opposite sides are not parallel")
    u, w = B - A, E - A
    det = u.x * w.y - w.x * u.y
    a, b, c, d = w.y / det, -w.x / det, -u.y / det, u.x / det
    e = -(a * A.x + b * A.y)
    f = -(c * A.x + d * A.y)
    return Collineation.linear(a, b, c, d, e, f)


def _solve_frame(src: Sequence[AffinePoint], dst: Sequence[AffinePoint], i: int) -> Collineation | None:
    """The semilinear map with Frobenius power i sending src[j] -> dst[j] (j<3)."""
    fs = [AffinePoint(frobenius(P.x, i), frobenius(P.y, i)) for P in src]
    u, w = fs[1] - fs[0], fs[2] - fs[0]
    du, dw = dst[1] - dst[0], dst[2] - dst[0]
    det = u.x * w.y - w.x * u.y
    if not det:
        return None
    # L [u w] = [du dw]
    ia, ib, ic, id_ = w.y / det, -w.x / det, -u.y / det, u.x / det
    a = du.x * ia + dw.x * ic
    b = du.x * ib + dw.x * id_
    c = du.y * ia + dw.y * ic
    d = du.y * ib + dw.y * id_
    if not (a * d - b * c):
        return None
    e = dst[0].x - (a * fs[0].x + b * fs[0].y)
    f = dst[0].y - (c * fs[0].x + d * fs[0].y)
    return Collineation(a, b, c, d, e, f, i)


def _noncollinear_triple(pts: Sequence[AffinePoint]) -> tuple[AffinePoint, ...] | None:
    if len(pts) < 3:
        return None
    A, B = pts[0], pts[1]
    for C in pts[2:]:
        if not collinear(A, B, C):
            return (A, B, C)
    return None


def _off_line(A: AffinePoint, B: AffinePoint) -> AffinePoint:
    spec = A.spec
    for cand in (point(spec, 0, 0), point(spec, 1, 0), point(spec, 0, 1)):
        if cand != A and cand != B and not collinear(A, B, cand):
            return cand
    raise AssertionError("unreachable")  # pragma: no cover


def equivalent(S: Iterable[AffinePoint], T: Iterable[AffinePoint], method: str = "frame") -> Collineation | None:
    """A collineation mapping S onto T, or None.

    ``method="frame"`` fixes an affine frame (three non-collinear points) of
    S and tries every ordered triple of T with every Frobenius power; an
    affine semilinear map is determined by that data, so the test is exact.
    ``method="exhaustive"`` sweeps the whole group (small q only).
    """
    S, T = sorted(set(S)), sorted(set(T))
    if len(S) != len(T):
        raise ValueError("point sets differ in size")
    if not S:
        return None
    spec = S[0].spec
    if T[0].spec is not spec:
        raise ValueError("point sets over different fields")
    if method == "exhaustive":
        target = frozenset(T)
        for C in iter_collineations(spec):
            if all(apply(C, P) in target for P in S):
                return C
        return None
    if method != "frame":
        raise ValueError(f"unknown method {method!r}")
    target = frozenset(T)
    if len(S) == 1:
        return Collineation.translation(T[0].x - S[0].x, T[0].y - S[0].y)
    frame = _noncollinear_triple(S)
    if frame is None:
        if _noncollinear_triple(T) is not None:
            return None
        s2 = _off_line(S[0], S[1])
        t_pairs = itertools.permutations(T, 2)
        candidates = ((t0, t1, _off_line(t0, t1)) for t0, t1 in t_pairs)
        frame = (S[0], S[1], s2)
    else:
        candidates = itertools.permutations(T, 3)
    for dst in candidates:
        for i in range(spec.k):
            C = _solve_frame(frame, dst, i)
            if C is not None and all(apply(C, P) in target for P in S):
                return C
    return None


def iter_collineations(spec: FieldSpec) -> Iterator[Collineation]:
    """Every element of the affine semilinear group of the plane."""
    els = list(spec.elements())
    for i in range(spec.k):
        for a, b, c, d in itertools.product(els, repeat=4):
            if not (a * d - b * c):
                continue
            for e, f in itertools.product(els, repeat=2):
                yield Collineation(a, b, c, d, e, f, i)


def all_points(spec: FieldSpec) -> list[AffinePoint]:
    return [point_from_codes(spec, x, y) for x in range(spec.q) for y in range(spec.q)]


def all_slopes(spec: FieldSpec) -> list[Slope]:
    return [Slope(m) for m in spec.elements()] + [INF]
