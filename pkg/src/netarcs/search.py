"""Exhaustive, symmetry-reduced search for ovals and hyperovals of Desarguesian nets.

Normalization.  Given an arc S of an r-net N, pick three slopes realized by
secants of S and a secant AB of one of them.  The frame collineation sending
A, B to (0,0), (1,1) and those slopes to 1, 0, inf gives an equivalent arc
whose net contains {0, 1, inf}, all three realized.  Linear maps fixing the
origin and permuting {0, 1, inf} (slope action m -> 1/m, m -> 1 - m) together
with Frobenius act on such slope sets; after moving N to the least member of
its orbit, a translation and a scalar map (both slope preserving) put the
endpoints of a slope-1 secant back on (0,0) and (1,1).  So it suffices to
search, for one representative N per orbit, arcs through (0,0) and (1,1).

Branching.  In the finished arc every point realizes every net slope
(hyperoval) or all but exactly one, its tangent (oval); for odd r the
tangent slopes of the points are pairwise distinct.  The search repeatedly
takes the (point, slope) pair with the fewest completions and branches on
the partner point on that line, or on declaring the slope a tangent.  The
alternatives are mutually exclusive, so every anchored arc is reached once.
Secants in a class are disjoint, which caps a class at floor(|S|/2)
secants without an explicit count.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .geometry import INF, Slope, point_from_codes
from .gf import FieldSpec, field_of_order
from .nets import NetSpec, PointSet, is_arc

DEFAULT_MAX_NODES = 10**9
DEFAULT_MAX_SECONDS = 600.0
MAX_SEARCH_ORDER = 32

FOUND = "found"
NONE = "exhausted-none"
BUDGET = "budget-exceeded"


class InvalidTask(ValueError):
    pass


def default_budget() -> tuple[int, float]:
    nodes = int(os.environ.get("NETS_BUDGET_NODES", DEFAULT_MAX_NODES))
    secs = float(os.environ.get("NETS_BUDGET_SECS", DEFAULT_MAX_SECONDS))
    return nodes, secs


@dataclass
class SearchTask:
    spec: FieldSpec
    r: int
    kind: str = "oval"
    mode: str = "decide"
    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        nodes, secs = default_budget()
        if self.max_nodes is None:
            self.max_nodes = nodes
        if self.max_seconds is None:
            self.max_seconds = secs

    def validate(self) -> None:
        q = self.spec.q
        if self.kind not in ("oval", "hyperoval"):
            raise InvalidTask(f"kind must be oval or hyperoval, not {self.kind!r}")
        if self.mode not in ("decide", "enumerate-orbits"):
            raise InvalidTask(f"unknown mode {self.mode!r}")
        if not 3 <= self.r <= q + 1:
            raise InvalidTask(f"degree {self.r} outside 3..{q + 1}")
        if self.kind == "hyperoval" and self.r % 2 == 0:
            raise InvalidTask(f"no hyperoval in a net of even degree {self.r}")
        if q > MAX_SEARCH_ORDER:
            raise InvalidTask(f"search is limited to q <= {MAX_SEARCH_ORDER}")

    @property
    def size(self) -> int:
        return self.r + 1 if self.kind == "hyperoval" else self.r


@dataclass
class SearchResult:
    task: SearchTask
    status: str
    witness: tuple[NetSpec, PointSet] | None = None
    nodes: int = 0
    seconds: float = 0.0
    orbit_count: int | None = None
    witnesses: list[tuple[NetSpec, PointSet]] = field(default_factory=list)
    slope_sets: int = 0

    def to_record(self, timings: bool = False) -> dict:
        rec = {
            "q": self.task.spec.q,
            "r": self.task.r,
            "kind": self.task.kind,
            "status": self.status,
            "witness": None
            if self.witness is None
            else {
                "slopes": [str(s) for s in self.witness[0].sorted_slopes()],
                "points": [str(P) for P in self.witness[1]],
            },
            "nodes": self.nodes,
        }
        if self.orbit_count is not None:
            rec["orbit_count"] = self.orbit_count
        if timings:
            rec["millis"] = int(self.seconds * 1000)
        return rec


# --- precomputed incidence tables ---


class _Tables:
    """Point index = x*q + y on codes; slope index = code, or q for infinity."""

    def __init__(self, spec: FieldSpec):
        q = self.q = spec.q
        n = self.n = q * q
        mul, sub, inv = spec.mul_codes, spec.sub_codes, spec.inv_code
        quot = [[0] * q for _ in range(q)]  # quot[dy][dx] = dy/dx
        for dx in range(1, q):
            idx = inv(dx)
            for dy in range(q):
                quot[dy][dx] = mul(dy, idx)
        slope = [[-1] * n for _ in range(n)]
        line = [[0] * (q + 1) for _ in range(n)]
        for i in range(n):
            xi, yi = divmod(i, q)
            row = slope[i]
            masks = line[i]
            for j in range(n):
                if i == j:
                    continue
                xj, yj = divmod(j, q)
                dx = sub(xj, xi)
                s = q if dx == 0 else quot[sub(yj, yi)][dx]
                row[j] = s
                masks[s] |= 1 << j
            for s in range(q + 1):
                masks[s] |= 1 << i
        self.slope = slope
        self.line = line

    def point(self, spec: FieldSpec, i: int):
        x, y = divmod(i, self.q)
        return point_from_codes(spec, x, y)


@lru_cache(maxsize=8)
def _tables(spec: FieldSpec) -> _Tables:
    return _Tables(spec)


def slope_index(spec: FieldSpec, s: Slope) -> int:
    return spec.q if s.m is None else s.m.code


def slope_from_index(spec: FieldSpec, i: int) -> Slope:
    return INF if i == spec.q else Slope(spec(i))


def _slope_group(spec: FieldSpec) -> list[list[int]]:
    """Slope permutations of the linear maps permuting {0, 1, inf}, times Frobenius."""
    q = spec.q

    def mob(a, b, c, d):
        # m -> (c + d m)/(a + b m) on indices, the action of [[a,b],[c,d]]
        out = []
        for m in range(q + 1):
            if m == q:
                out.append(q if b == 0 else spec.mul_codes(d, spec.inv_code(b)))
                continue
            den = spec.add_codes(a, spec.mul_codes(b, m))
            num = spec.add_codes(c, spec.mul_codes(d, m))
            out.append(q if den == 0 else spec.mul_codes(num, spec.inv_code(den)))
        return out

    one, zero, neg = 1, 0, spec.neg_code(1)
    swap = mob(zero, one, one, zero)  # (x,y) -> (y,x): m -> 1/m
    flip = mob(one, zero, one, neg)  # (x,y) -> (x, x-y): m -> 1-m
    ident = list(range(q + 1))
    group = {tuple(ident)}
    frontier = [ident]
    gens = [swap, flip]
    for i in range(1, spec.k):
        gens.append([q if m == q else spec.pow_code(m, spec.p**i) for m in range(q + 1)])
    while frontier:
        g = frontier.pop()
        for h in gens:
            comp = tuple(h[g[m]] for m in range(q + 1))
            if comp not in group:
                group.add(comp)
                frontier.append(list(comp))
    return sorted(group)


def slope_set_representatives(spec: FieldSpec, r: int) -> list[tuple[int, ...]]:
    """One r-set of slope indices containing {0, 1, inf} per orbit, ascending."""
    q = spec.q
    base = (0, 1, q)
    others = [m for m in range(2, q)]
    group = _slope_group(spec)
    reps = []
    for extra in itertools.combinations(others, r - 3):
        N = tuple(sorted(base + extra))
        canonical = True
        for g in group:
            img = sorted(g[m] for m in N)
            if 0 in img and 1 in img and q in img and tuple(img) < N:
                canonical = False
                break
        if canonical:
            reps.append(N)
    return reps


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, tables: _Tables, N: tuple[int, ...], size: int, oval: bool, max_nodes: int, deadline: float):
        self.t = tables
        self.N = N
        self.size = size
        self.oval = oval
        self.distinct_tangents = oval and len(N) % 2 == 1
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        line = tables.line
        nmask = 0
        for s in N:
            nmask |= 1 << s
        self.nmask = nmask
        self.nbr = []
        for i in range(tables.n):
            m = 0
            for s in N:
                m |= line[i][s]
            self.nbr.append(m & ~(1 << i))
        self.solutions: list[tuple[int, ...]] = []

    def run(self, first_only: bool) -> None:
        q = self.t.q
        a, b = 0, 1 * q + 1  # (0,0), (1,1)
        self.first_only = first_only
        s1 = 1
        cand = self.nbr[a] & self.nbr[b] & ~self.t.line[a][s1]
        members = [a, b]
        used = [1 << s1, 1 << s1]
        tangent = [-1, -1]
        self._dfs(members, used, tangent, 0, cand)

    def _dfs(self, members, used, tangent, taken, cand) -> bool:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Budget
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _Budget
        size = self.size
        if len(members) == size:
            self.solutions.append(tuple(sorted(members)))
            return self.first_only
        if cand.bit_count() < size - len(members):
            return False
        line = self.t.line
        best = None
        best_count = 1 << 30
        for idx, X in enumerate(members):
            u = used[idx]
            tX = tangent[idx]
            lines_X = line[X]
            for s in self.N:
                if u >> s & 1 or s == tX:
                    continue
                c = (cand & lines_X[s]).bit_count()
                if self.oval and tX < 0 and not (self.distinct_tangents and taken >> s & 1):
                    c += 1
                if c < best_count:
                    if c == 0:
                        return False
                    best_count = c
                    best = (idx, s)
                    if c == 1:
                        break
            if best_count == 1:
                break
        idx, s = best
        X = members[idx]
        opts = cand & line[X][s]
        slope = self.t.slope
        lines = self.t.line
        while opts:
            low = opts & -opts
            P = low.bit_length() - 1
            opts ^= low
            new_cand = cand & self.nbr[P]
            new_used = used[:]
            uP = 0
            rowP = slope[P]
            linesP = lines[P]
            for j, Y in enumerate(members):
                sy = rowP[Y]
                new_used[j] |= 1 << sy
                uP |= 1 << sy
                new_cand &= ~linesP[sy]
            # a point with a declared tangent may not gain a partner on it
            new_used.append(uP)
            if self._dfs(members + [P], new_used, tangent + [-1], taken, new_cand):
                return True
        if self.oval and tangent[idx] < 0 and not (self.distinct_tangents and taken >> s & 1):
            new_tangent = tangent[:]
            new_tangent[idx] = s
            if self._dfs(members, used, new_tangent, taken | (1 << s), cand & ~line[X][s]):
                return True
        return False


def _search_slope_set(spec: FieldSpec, N, size, oval, first_only, max_nodes, deadline):
    searcher = _Searcher(_tables(spec), N, size, oval, max_nodes, deadline)
    try:
        searcher.run(first_only)
        exhausted = True
    except _Budget:
        exhausted = False
    return searcher.solutions, searcher.nodes, exhausted


def _worker(args):
    q, descriptor, N, size, oval, first_only, max_nodes, deadline = args
    from .gf import parse_field

    spec = parse_field(descriptor)
    return _search_slope_set(spec, N, size, oval, first_only, max_nodes, deadline)


def _to_witness(spec: FieldSpec, N, members) -> tuple[NetSpec, PointSet]:
    t = _tables(spec)
    net = NetSpec(spec, [slope_from_index(spec, s) for s in N])
    return net, PointSet(t.point(spec, i) for i in members)


def exists_arc(task: SearchTask, workers: int = 1) -> SearchResult:
    """Decide (or enumerate up to equivalence) ovals/hyperovals of r-nets over the task's field."""
    task.validate()
    spec = task.spec
    start = time.monotonic()
    deadline = start + task.max_seconds
    oval = task.kind == "oval"
    first_only = task.mode == "decide"
    reps = slope_set_representatives(spec, task.r)
    result = SearchResult(task, NONE, slope_sets=len(reps))
    all_solutions: list[tuple[NetSpec, PointSet]] = []
    nodes = 0
    exhausted_all = True

    def consume(N, sols, n, exhausted):
        nonlocal nodes, exhausted_all
        nodes += n
        for members in sols:
            all_solutions.append(_to_witness(spec, N, members))
        if not exhausted:
            exhausted_all = False

    if workers <= 1:
        for N in reps:
            remaining = task.max_nodes - nodes
            sols, n, exhausted = _search_slope_set(spec, N, task.size, oval, first_only, remaining, deadline)
            consume(N, sols, n, exhausted)
            if (first_only and sols) or not exhausted:
                break
    else:
        args = [(spec.q, spec.descriptor, N, task.size, oval, first_only, task.max_nodes, deadline) for N in reps]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_worker, a) for a in args]
            for N, fut in zip(reps, futures):
                sols, n, exhausted = fut.result()
                consume(N, sols, n, exhausted)
                if (first_only and sols) or not exhausted or nodes > task.max_nodes:
                    for f in futures:
                        f.cancel()
                    if nodes > task.max_nodes and not (first_only and sols):
                        exhausted_all = False
                    break

    result.nodes = nodes
    result.seconds = time.monotonic() - start
    if all_solutions:
        for net, pts in all_solutions:
            if is_arc(pts, net).kind != task.kind:
                raise AssertionError(f"search produced an invalid witness {pts}")
        result.status = FOUND
        result.witness = all_solutions[0]
        result.witnesses = all_solutions
    if not exhausted_all and not (first_only and all_solutions):
        result.status = BUDGET
    if task.mode == "enumerate-orbits" and result.status != BUDGET:
        result.orbit_count = len(merge_orbits([pts for _, pts in all_solutions]))
    return result


def merge_orbits(sets: list[PointSet]) -> list[PointSet]:
    """Representatives of the affine-equivalence classes among ``sets``."""
    from .geometry import equivalent
    from .nets import required_slopes

    reps: list[PointSet] = []
    sigs: list[tuple] = []
    for S in sets:
        sig = (len(S), len(required_slopes(S)))
        if any(sg == sig and equivalent(S, R) is not None for R, sg in zip(reps, sigs)):
            continue
        reps.append(S)
        sigs.append(sig)
    return reps


def count_orbits(spec: FieldSpec, r: int, kind: str, **budget) -> int:
    res = exists_arc(SearchTask(spec, r, kind, mode="enumerate-orbits", **budget))
    if res.status == BUDGET:
        raise RuntimeError(f"budget exceeded while enumerating GF({spec.q}) r={r} {kind}")
    return res.orbit_count


# --- un-normalized oracle ---


def exists_arc_bruteforce(spec: FieldSpec, r: int, kind: str) -> bool:
    """Plain subset search with no symmetry assumptions (tiny q only).

    Points are added in ascending order; a branch dies once three points are
    collinear or more than r slopes occur.
    """
    if kind == "hyperoval" and r % 2 == 0:
        return False
    size = r + 1 if kind == "hyperoval" else r
    pts = [(x, y) for x in spec.elements() for y in spec.elements()]

    def slope(P, Q):
        dx = Q[0] - P[0]
        return None if not dx else ((Q[1] - P[1]) / dx).code

    n = len(pts)
    S_table = [[slope(pts[i], pts[j]) if i != j else -1 for j in range(n)] for i in range(n)]

    def grow(chosen, slopes, start):
        if len(chosen) == size:
            return True
        for i in range(start, n - (size - len(chosen)) + 1):
            row = S_table[i]
            new = [row[j] for j in chosen]
            if len(set(new)) != len(new):
                continue
            merged = slopes | set(new)
            if len(merged) > r:
                continue
            if grow(chosen + [i], merged, i + 1):
                return True
        return False

    return grow([], frozenset(), 0)


# --- tables and suites ---


def table_O_d(spec: FieldSpec, **budget) -> set[int]:
    return {r for r, res in table_cells(spec, "oval", **budget).items() if res.status == FOUND}


def table_H_d(spec: FieldSpec, **budget) -> set[int]:
    return {r for r, res in table_cells(spec, "hyperoval", **budget).items() if res.status == FOUND}


class BudgetExceeded(RuntimeError):
    def __init__(self, result: SearchResult):
        super().__init__(f"budget exceeded at q={result.task.spec.q} r={result.task.r} {result.task.kind}")
        self.result = result


class CrossCheckFailure(AssertionError):
    pass


def table_cells(spec: FieldSpec, kind: str, limit_q: int | None = None, **budget) -> dict[int, SearchResult]:
    """Per-degree search results, each positive cell cross-checked against known constructions."""
    from .constructions import constructions_for

    limit = limit_q if limit_q is not None else (11 if kind == "oval" else 13)
    if spec.q > limit:
        raise InvalidTask(f"full {kind} tables are limited to q <= {limit}")
    cells: dict[int, SearchResult] = {}
    for r in range(3, spec.q + 2):
        if kind == "hyperoval" and r % 2 == 0:
            continue
        res = exists_arc(SearchTask(spec, r, kind, **budget))
        if res.status == BUDGET:
            raise BudgetExceeded(res)
        known = constructions_for(spec, r, kind)
        if known and res.status != FOUND:
            raise CrossCheckFailure(f"{known[0].name} gives a {kind} at q={spec.q} r={r} but search found none")
        cells[r] = res
    return cells


NONEXISTENCE_CELLS = (
    (7, 5, "oval"),
    (9, 7, "oval"),
    (11, 9, "oval"),
    (8, 6, "oval"),
    (3, 1, "hyperoval"),
    (4, 2, "hyperoval"),
    (5, 3, "hyperoval"),
    (7, 5, "hyperoval"),
    (8, 6, "hyperoval"),
    (9, 7, "hyperoval"),
    (11, 9, "hyperoval"),
)


@dataclass
class CellOutcome:
    q: int
    r: int
    kind: str
    status: str
    nodes: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (NONE, "rejected-parity", "rejected-degree")

    def to_record(self, timings: bool = False) -> dict:
        rec = {"q": self.q, "r": self.r, "kind": self.kind, "status": self.status, "ok": self.ok}
        if timings:
            rec["millis"] = int(self.seconds * 1000)
        return rec


def verify_nonexistence_suite(**budget) -> list[CellOutcome]:
    """Run the cells where no oval/hyperoval may exist; a found cell is a hard failure."""
    out = []
    for q, r, kind in NONEXISTENCE_CELLS:
        if r < 3:
            out.append(CellOutcome(q, r, kind, "rejected-degree"))
            continue
        if kind == "hyperoval" and r % 2 == 0:
            out.append(CellOutcome(q, r, kind, "rejected-parity"))
            continue
        res = exists_arc(SearchTask(field_of_order(q), r, kind, **budget))
        out.append(CellOutcome(q, r, kind, res.status, res.nodes, res.seconds))
    return out


def resolve_open_cell(r: int = 9, **budget) -> SearchResult:
    """Search GF(13) for a hyperoval of an r-net with ten times the default budget."""
    nodes, secs = default_budget()
    budget.setdefault("max_nodes", nodes * 10)
    budget.setdefault("max_seconds", secs * 10)
    return exists_arc(SearchTask(field_of_order(13), r, "hyperoval", **budget))
