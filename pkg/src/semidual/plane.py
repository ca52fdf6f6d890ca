"""Finite projective planes and the line-generator construction.

Power tuples are indexed by coordinate 0 for the extra point ``inf`` followed
by the plane's points (coordinate ``p + 1`` for point ``p``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product as cartesian
from typing import Optional, Union

import numpy as np
from sympy import isprime

from .core import (FiniteSemigroup, generate_subsemigroup, omega_plus,
                   power_ideal, zero_element)
from .errors import (ClosureBudgetExceeded, NotPrime, PlaneTooSmall, SamePoint,
                     TemplateDegenerate, TooLarge)
from .rees import FiniteGroup, commutator

INF = 0
DEFAULT_BUDGET = 2 ** 24
MAX_Q = 13

PowerTuple = tuple


@dataclass(frozen=True)
class Line:
    index: int
    points: frozenset


@dataclass(frozen=True)
class ProjectivePlane:
    q: int
    coordinates: tuple   # homogeneous coordinates of each point
    lines: tuple         # Line objects
    lines_through: tuple  # point -> frozenset of line indices

    @property
    def n_points(self) -> int:
        return len(self.coordinates)

    @property
    def points(self) -> range:
        return range(len(self.coordinates))

    @property
    def width(self) -> int:
        return len(self.coordinates) + 1


def _normalised_triples(q):
    out = []
    for v in cartesian(range(q), repeat=3):
        if any(v):
            lead = next(c for c in v if c)
            if lead == 1:
                out.append(v)
    return out


def build_plane(q: int) -> ProjectivePlane:
    if not isprime(q):
        raise NotPrime(f"{q} is not prime")
    if q > MAX_Q:
        raise TooLarge(f"q = {q} exceeds {MAX_Q}")
    coords = _normalised_triples(q)
    lines = []
    for k, u in enumerate(coords):
        pts = frozenset(p for p, v in enumerate(coords)
                        if sum(a * b for a, b in zip(u, v)) % q == 0)
        lines.append(Line(k, pts))
    through = tuple(frozenset(L.index for L in lines if p in L.points)
                    for p in range(len(coords)))
    plane = ProjectivePlane(q, tuple(coords), tuple(lines), through)
    verify_plane_axioms(plane)
    return plane


def verify_plane_axioms(plane: ProjectivePlane) -> tuple:
    """Check unique join, unique meet and a quadrilateral; return the quadrilateral."""
    for p, r in combinations(plane.points, 2):
        common = plane.lines_through[p] & plane.lines_through[r]
        if len(common) != 1:
            raise AssertionError(f"points {p},{r} lie on {len(common)} common lines")
    for L, K in combinations(plane.lines, 2):
        if len(L.points & K.points) != 1:
            raise AssertionError(f"lines {L.index},{K.index} do not meet in one point")
    for quad in combinations(plane.points, 4):
        if all(len(plane.lines_through[a] & plane.lines_through[b] & plane.lines_through[c]) == 0
               for a, b, c in combinations(quad, 3)):
            return quad
    raise AssertionError("no four points in general position")


def meet(plane: ProjectivePlane, L: Line, K: Line) -> Union[int, Line]:
    """The common point of distinct lines; the line itself when L == K."""
    if L.index == K.index:
        return L
    (p,) = L.points & K.points
    return p


def join(plane: ProjectivePlane, p: int, r: int) -> Line:
    if p == r:
        raise SamePoint(f"join needs distinct points, got {p} twice")
    (k,) = plane.lines_through[p] & plane.lines_through[r]
    return plane.lines[k]


def support(x: Union[int, Line]) -> frozenset:
    return x.points if isinstance(x, Line) else frozenset([x])


class TemplateMode(str, Enum):
    RAW = "raw"
    COMMUTATOR = "commutator"
    NILPOTENT = "nilpotent"


@dataclass(frozen=True)
class TemplateT:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    mode: TemplateMode

    def to_json(self, host: FiniteSemigroup | None = None) -> dict:
        out = {k: getattr(self, k) for k in "abcdef"}
        if host is not None and host.labels:
            out = {k: host.label(v) for k, v in out.items()}
        out["mode"] = self.mode.value
        return out


def binary_term(host: FiniteSemigroup, mode: TemplateMode, group: FiniteGroup | None = None):
    if mode is TemplateMode.COMMUTATOR:
        if group is None:
            raise ValueError("commutator mode needs the group structure")
        return lambda x, y: commutator(group, x, y)
    t = host.table
    return lambda x, y: t[x][y]


def template_holds(host: FiniteSemigroup, tpl: TemplateT, group: FiniteGroup | None = None) -> bool:
    op = binary_term(host, tpl.mode, group)
    return (op(tpl.a, tpl.c) == tpl.e and op(tpl.a, tpl.d) == tpl.f
            and op(tpl.b, tpl.c) == tpl.f and op(tpl.b, tpl.d) == tpl.f
            and tpl.e != tpl.f)


def find_template_raw(s: FiniteSemigroup) -> Optional[TemplateT]:
    t = s.table
    z = zero_element(s)
    if z is not None:
        for a, c in cartesian(s.elements, repeat=2):
            if t[a][c] != z:
                return TemplateT(a, z, c, z, t[a][c], z, TemplateMode.RAW)
    n = s.order
    for a, c in cartesian(range(n), repeat=2):
        e = t[a][c]
        for d in range(n):
            f = t[a][d]
            if f == e:
                continue
            for b in range(n):
                if t[b][c] == f and t[b][d] == f:
                    return TemplateT(a, b, c, d, e, f, TemplateMode.RAW)
    return None


def _minimal_ideal_of_subsemigroup(s: FiniteSemigroup, members: frozenset) -> frozenset:
    """Elements x of T with x in T^1 y T^1 for every y in T."""
    t = s.table
    ideals = {}
    for y in members:
        right = {y} | {t[y][z] for z in members}
        ideals[y] = right | {t[z][w] for z in members for w in right}
    return frozenset(x for x in members if all(x in ideals[y] for y in members))


@dataclass(frozen=True)
class NilpotentDerivation:
    template: TemplateT
    u: int
    u_word: str
    v: int


def derive_template_nilpotent(m: FiniteSemigroup, a: int, c: int) -> NilpotentDerivation:
    """Complete (a, c, e=ac) to a template through an idempotent v of the minimal ideal."""
    t = m.table
    sub = generate_subsemigroup(m, {a, c})
    bottom = _minimal_ideal_of_subsemigroup(m, sub)
    # breadth-first over words in a, c until one lands in the minimal ideal
    words = {a: "a"} if a == c else {a: "a", c: "c"}
    frontier = list(words)
    u = next((x for x in frontier if x in bottom), None)
    while u is None:
        nxt = []
        for x in frontier:
            for g, ch in ((a, "a"), (c, "c")):
                y = t[x][g]
                if y not in words:
                    words[y] = words[x] + ch
                    nxt.append(y)
                    if u is None and y in bottom:
                        u = y
        frontier = nxt
    a_om, c_om = omega_plus(m, a, 0), omega_plus(m, c, 0)
    v = omega_plus(m, t[t[a_om][u]][c_om], 0)
    a1, c1 = omega_plus(m, a, 1), omega_plus(m, c, 1)
    b = t[a1][v]
    d = t[v][c1]
    f = t[t[a][v]][c]
    e = t[a][c]
    chain = {t[t[a1][v]][c1], t[t[a][v]][c1], t[t[a1][v]][c], f}
    if len(chain) != 1:
        raise AssertionError("a^(w+1) v c^(w+1) = a v c^(w+1) = a^(w+1) v c = a v c fails")
    tpl = TemplateT(a, b, c, d, e, f, TemplateMode.NILPOTENT)
    if e == f:
        raise TemplateDegenerate(f"a*c = a*v*c = {e}; the template collapses")
    if not template_holds(m, tpl):
        raise AssertionError("derived template products do not hold")
    return NilpotentDerivation(tpl, u, words[u], v)


def find_template_commutator(g: FiniteGroup) -> Optional[TemplateT]:
    one = g.identity
    for a, c in cartesian(g.carrier.elements, repeat=2):
        e = commutator(g, a, c)
        if e != one:
            return TemplateT(a, one, c, one, e, one, TemplateMode.COMMUTATOR)
    return None


def power_tuple(plane: ProjectivePlane, default: int, assignments) -> PowerTuple:
    """default everywhere, overridden by (coordinates, value) pairs in order."""
    vals = [default] * plane.width
    for coords, value in assignments:
        for k in coords:
            vals[k] = value
    return tuple(vals)


def line_coords(L: Line) -> list:
    return [p + 1 for p in L.points]


def b_line(plane, tpl, L) -> PowerTuple:
    return power_tuple(plane, tpl.b, [([INF] + line_coords(L), tpl.a)])


def d_line(plane, tpl, L) -> PowerTuple:
    return power_tuple(plane, tpl.d, [([INF] + line_coords(L), tpl.c)])


def f_meet(plane, tpl, x: Union[int, Line]) -> PowerTuple:
    """f with e on inf and on the point or line x."""
    return power_tuple(plane, tpl.f, [([INF] + [p + 1 for p in support(x)], tpl.e)])


def line_generators(m: FiniteSemigroup, template: TemplateT, plane: ProjectivePlane) -> list:
    out, seen = [], set()
    for L in plane.lines:
        for g in (b_line(plane, template, L), d_line(plane, template, L)):
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def ghost(template: TemplateT, plane: ProjectivePlane) -> PowerTuple:
    return power_tuple(plane, template.f, [([INF], template.e)])


def a_zero(template: TemplateT, plane: ProjectivePlane) -> list:
    return [f_meet(plane, template, p) for p in plane.points]


def pointwise(op, x: PowerTuple, y: PowerTuple) -> PowerTuple:
    return tuple(op(a, b) for a, b in zip(x, y))


class ClosureResult:
    """Deduplicated closure of power tuples with one witness link per derived member.

    ``parents[k]`` is ``(-1, -1)`` for generators, otherwise member ids whose
    pointwise product is member ``k``.
    """

    def __init__(self, members: np.ndarray, parents: np.ndarray, generator_count: int,
                 budget: int):
        self.members = members
        self.parents = parents
        self.generator_count = generator_count
        self.budget = budget
        keys = _row_keys(members)
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]

    @property
    def member_count(self) -> int:
        return len(self.members)

    def index_of(self, tup) -> Optional[int]:
        row = np.asarray(tup, dtype=self.members.dtype)[None, :]
        key = _row_keys(row)
        pos = np.searchsorted(self._sorted, key)[0]
        if pos < len(self._sorted) and self._sorted[pos] == key[0]:
            return int(self._order[pos])
        return None

    def __contains__(self, tup) -> bool:
        return self.index_of(tup) is not None

    def tuples(self) -> list:
        return [tuple(int(v) for v in row) for row in self.members]

    def member_set(self) -> frozenset:
        return frozenset(self.tuples())


def _row_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def closure(m: FiniteSemigroup, generators, mode: TemplateMode = TemplateMode.RAW,
            budget: int = DEFAULT_BUDGET) -> ClosureResult:
    """Subsemigroup of the power generated by the tuples, by level-wise right multiplication."""
    gens = list(dict.fromkeys(tuple(g) for g in generators))
    if not gens:
        raise ValueError("closure needs at least one generator")
    TemplateMode(mode)
    dtype = np.uint8 if m.order <= 256 else np.uint16
    # every mode closes under the host product; in commutator mode the
    # generated subalgebra of a group power is the generated subgroup
    table = np.asarray(m.table, dtype=np.int64)
    G = np.asarray(gens, dtype=dtype)
    if len(G) > budget:
        raise ClosureBudgetExceeded(budget)
    members = [G]
    parents = [np.full((len(G), 2), -1, dtype=np.int64)]
    seen = np.sort(_row_keys(G))
    frontier, frontier_ids = G, np.arange(len(G))
    count = len(G)
    while len(frontier):
        cand = np.concatenate([table[frontier, g[None, :]] for g in G]).astype(dtype)
        left = np.tile(frontier_ids, len(G))
        right = np.repeat(np.arange(len(G)), len(frontier))
        keys = _row_keys(cand)
        uniq, first = np.unique(keys, return_index=True)
        pos = np.searchsorted(seen, uniq)
        pos_c = np.minimum(pos, len(seen) - 1)
        fresh = first[seen[pos_c] != uniq]
        fresh.sort()
        if count + len(fresh) > budget:
            raise ClosureBudgetExceeded(budget)
        new_rows = cand[fresh]
        members.append(new_rows)
        parents.append(np.stack([left[fresh], right[fresh]], axis=1))
        frontier_ids = np.arange(count, count + len(fresh))
        count += len(fresh)
        frontier = new_rows
        seen = np.sort(np.concatenate([seen, keys[fresh]]))
    return ClosureResult(np.concatenate(members), np.concatenate(parents),
                         len(G), budget)


def derivation(result: ClosureResult, k: int) -> list:
    """Product steps (member, left, right) rebuilding member k from generators."""
    steps, stack, done = [], [k], set()
    while stack:
        x = stack[-1]
        left, right = (int(v) for v in result.parents[x])
        if left < 0 or x in done:
            stack.pop()
            continue
        pending = [y for y in (left, right) if result.parents[y][0] >= 0 and y not in done]
        if pending:
            stack.extend(pending)
            continue
        done.add(x)
        steps.append((x, left, right))
        stack.pop()
    return steps


def replay(m: FiniteSemigroup, result: ClosureResult, steps) -> bool:
    rows = {}

    def row(k):
        return rows.get(k, tuple(int(v) for v in result.members[k]))

    for x, left, right in steps:
        rows[x] = pointwise(lambda p, q: m.table[p][q], row(left), row(right))
        if rows[x] != tuple(int(v) for v in result.members[x]):
            return False
    return True


def ghost_membership(result: ClosureResult, ghost_tuple: PowerTuple) -> tuple:
    k = result.index_of(ghost_tuple)
    if k is None:
        return False, None
    return True, derivation(result, k)


@dataclass
class BookkeepingReport:
    threshold: int
    coordinates_checked: int
    blocks: list = field(default_factory=list)  # per coordinate: (coord, big value, big size)
    passed: bool = True


def ind_bookkeeping_check(result: ClosureResult, template: TemplateT,
                          plane: ProjectivePlane, host_size: int) -> BookkeepingReport:
    """For each coordinate, the one large block of A0 must project onto the ghost."""
    threshold = host_size + 1
    if plane.n_points <= host_size + 2:
        raise PlaneTooSmall(
            f"{plane.n_points} points cannot exceed block threshold {threshold} "
            f"at every coordinate (need more than {host_size + 2})")
    a0 = a_zero(template, plane)
    missing = [x for x in a0 if x not in result]
    if missing:
        raise ValueError(f"{len(missing)} tuples of A0 are not in the closure")
    g = ghost(template, plane)
    report = BookkeepingReport(threshold, plane.width)
    for s in range(plane.width):
        blocks: dict = {}
        for x in a0:
            blocks.setdefault(x[s], []).append(x)
        big = [(v, len(b)) for v, b in blocks.items() if len(b) > threshold]
        ok = len(big) == 1 and big[0][0] == g[s]
        report.blocks.append((s, big[0][0] if big else None, big[0][1] if big else 0))
        report.passed = report.passed and ok
    return report


def closure_report(q: int, host_name: str, host: FiniteSemigroup, template: TemplateT,
                   result: ClosureResult, ghost_member: bool, budget: int) -> dict:
    return {
        "q": q,
        "host": host_name,
        "template": template.to_json(host),
        "generator_count": result.generator_count,
        "member_count": result.member_count,
        "ghost_member": ghost_member,
        "budget": budget,
    }


def nilpotent_pair(m: FiniteSemigroup) -> Optional[tuple]:
    """A pair (a, c) whose product survives outside the cube of the subsemigroup they generate."""
    for a, c in cartesian(m.elements, repeat=2):
        sub = generate_subsemigroup(m, {a, c})
        if m.table[a][c] not in power_ideal(m, 3, sub):
            return a, c
    return None
