"""Desarguesian r-nets (as slope sets) and arc verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .geometry import (
    AffinePoint,
    Collineation,
    Slope,
    apply,
    collinear,
    line_through,
    slope_image,
    slope_of,
)
from .gf import FieldSpec

KINDS = ("not-arc", "arc", "oval", "hyperoval")


@dataclass(frozen=True)
class NetSpec:
    """The net held by the plane over ``spec`` consisting of the classes in ``slopes``."""

    spec: FieldSpec
    slopes: frozenset[Slope]

    def __init__(self, spec: FieldSpec, slopes: Iterable[Slope]):
        slopes = frozenset(slopes)
        for s in slopes:
            if s.m is not None and s.m.spec is not spec:
                raise ValueError("slope from a different field")
        if not 3 <= len(slopes) <= spec.q + 1:
            raise ValueError(f"a net needs between 3 and {spec.q + 1} parallel classes, got {len(slopes)}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "slopes", slopes)

    @property
    def r(self) -> int:
        return len(self.slopes)

    def sorted_slopes(self) -> list[Slope]:
        return sorted(self.slopes)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.sorted_slopes())) + "}"


class PointSet(tuple):
    """Duplicate-free points over one field, kept in ascending code order."""

    def __new__(cls, points: Iterable[AffinePoint] = ()):
        pts = sorted(set(points))
        if pts and any(P.spec is not pts[0].spec for P in pts):
            raise ValueError("points from different fields")
        return super().__new__(cls, pts)

    @property
    def spec(self) -> FieldSpec | None:
        return self[0].spec if self else None

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass
class ArcReport:
    kind: str
    witness: tuple[AffinePoint, ...] | None = None
    secant_profile: dict[Slope, int] = field(default_factory=dict)
    reason: str = ""

    @property
    def is_arc(self) -> bool:
        return self.kind != "not-arc"

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "witness": None if self.witness is None else [str(P) for P in self.witness],
            "reason": self.reason,
            "secant_profile": [[str(s), n] for s, n in sorted(self.secant_profile.items())],
        }


def _secant_lines(S: PointSet) -> dict[tuple, list[AffinePoint]]:
    lines: dict[tuple, list[AffinePoint]] = {}
    for P, Q in itertools.combinations(S, 2):
        L = line_through(P, slope_of(P, Q))
        key = (L.slope.key, L.b.code)
        pts = lines.setdefault(key, [])
        for X in (P, Q):
            if X not in pts:
                pts.append(X)
    return lines


def is_arc(S: Iterable[AffinePoint], N: NetSpec) -> ArcReport:
    """Classify ``S`` in the net ``N``.

    Pairs are scanned first (a secant slope outside the net), then triples
    (collinear points); the witness is the first violation in code order.
    """
    S = PointSet(S)
    if len(S) < 2:
        raise ValueError("need at least two points")
    if S.spec is not N.spec:
        raise ValueError("point set and net over different fields")
    profile: dict[Slope, int] = {s: 0 for s in N.slopes}
    for key, pts in _secant_lines(S).items():
        s = slope_of(pts[0], pts[1])
        profile[s] = profile.get(s, 0) + 1
    for P, Q in itertools.combinations(S, 2):
        if slope_of(P, Q) not in N.slopes:
            return ArcReport("not-arc", (P, Q), profile, "secant slope outside the net")
    for P, Q, R in itertools.combinations(S, 3):
        if collinear(P, Q, R):
            return ArcReport("not-arc", (P, Q, R), profile, "three collinear points")
    if len(S) == N.r:
        kind = "oval"
    elif len(S) == N.r + 1:
        kind = "hyperoval"
    else:
        kind = "arc"
    return ArcReport(kind, None, profile)


def required_slopes(S: Iterable[AffinePoint]) -> set[Slope]:
    """Secant slopes of an arc; S is an oval of exactly this net when sizes agree."""
    S = PointSet(S)
    for t in itertools.combinations(S, 3):
        if collinear(*t):
            raise ValueError(f"collinear points {', '.join(map(str, t))}")
    return {slope_of(P, Q) for P, Q in itertools.combinations(S, 2)}


def secant_count_check(S: Iterable[AffinePoint], N: NetSpec) -> bool:
    """Whether the secant counts of an oval match the counting bound per class."""
    rep = is_arc(S, N)
    if rep.kind != "oval":
        raise ValueError(f"not an oval (kind={rep.kind})")
    r = N.r
    counts = [rep.secant_profile[s] for s in N.slopes]
    if r % 2:
        return all(c == (r - 1) // 2 for c in counts)
    return sum(1 for c in counts if c == r // 2) >= r // 2


def find_quads(S: Iterable[AffinePoint], N: NetSpec) -> list[tuple[AffinePoint, ...]]:
    """4-subsets with no three collinear and two net classes holding two secants each."""
    S = PointSet(S)
    out = []
    for Q in itertools.combinations(S, 4):
        if any(collinear(*t) for t in itertools.combinations(Q, 3)):
            continue
        counts: dict[Slope, int] = {}
        for P, R in itertools.combinations(Q, 2):
            s = slope_of(P, R)
            if s in N.slopes:
                counts[s] = counts.get(s, 0) + 1
        if sum(1 for c in counts.values() if c >= 2) >= 2:
            out.append(Q)
    return out


def hyperoval_parity_guard(N: NetSpec | int) -> bool:
    """A hyperoval is only possible in a net of odd degree."""
    r = N if isinstance(N, int) else N.r
    return r % 2 == 1


def image_net(C: Collineation, N: NetSpec) -> NetSpec:
    return NetSpec(N.spec, (slope_image(C, s) for s in N.slopes))


def image_set(C: Collineation, S: Iterable[AffinePoint]) -> PointSet:
    return PointSet(apply(C, P) for P in S)
