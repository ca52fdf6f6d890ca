"""Finite-arity interpolation probe for alter egos of small semigroups.

For each substructure X of a power of the alter ego and each structure
preserving map X -> ego, ask whether the map is the restriction of an n-ary
term function of the target. Passing at arity n is evidence, not a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .core import FiniteSemigroup
from .errors import SemidualError, TooLarge

MAX_TARGET = 4
MAX_EXHAUSTIVE_ARITY = 2
DEFAULT_BUDGET = 2_000_000


class InvalidAlterEgo(SemidualError):
    pass


@dataclass(frozen=True)
class PartialOp:
    name: str
    table: dict  # (x, y) -> value; keys form the domain


@dataclass(frozen=True)
class AlterEgoSpec:
    """Operations on the target's carrier, all checked compatible at construction."""
    target: FiniteSemigroup
    total_ops: tuple = ()  # (name, n x n table) pairs
    partial_ops: tuple = ()  # PartialOp values
    constants: tuple = ()
    name: str = "ego"

    def __post_init__(self):
        s = self.target
        n = s.order
        pairs = list(product(range(n), repeat=2))
        for name, t in self.total_ops:
            for (x1, y1), (x2, y2) in product(pairs, repeat=2):
                if t[s.mul(x1, x2)][s.mul(y1, y2)] != s.mul(t[x1][y1], t[x2][y2]):
                    raise InvalidAlterEgo(f"{name} is not a homomorphism from the square")
        for op in self.partial_ops:
            dom = op.table
            for (x1, y1), (x2, y2) in product(dom, repeat=2):
                pq = (s.mul(x1, x2), s.mul(y1, y2))
                if pq not in dom:
                    raise InvalidAlterEgo(f"domain of {op.name} is not closed under products")
                if dom[pq] != s.mul(dom[(x1, y1)], dom[(x2, y2)]):
                    raise InvalidAlterEgo(f"{op.name} is not a homomorphism on its domain")
        for c in self.constants:
            if s.mul(c, c) != c:
                raise InvalidAlterEgo(f"constant {s.label(c)} is not idempotent")

    @property
    def carrier(self):
        return tuple(range(self.target.order))


def _flat_meet(n, zero):
    return [[x if x == y else zero for y in range(n)] for x in range(n)]


def _flat_join(zero, low, top):
    """Idempotent partial join on {zero, low}^2 together with (top, top)."""
    t = {(x, y): (low if low in (x, y) else zero) for x in (zero, low) for y in (zero, low)}
    t[(top, top)] = top
    return t


def ego_p() -> AlterEgoSpec:
    """Alter ego on {a, e, 0} with multiplication, flat meet, partial join, constants 0 and e."""
    from .catalog import catalog
    s = catalog("P").semigroup
    a, e, z = s.index("a"), s.index("e"), s.index("0")
    return AlterEgoSpec(s, (("mul", s.table), ("meet", _flat_meet(s.order, z))),
                        (PartialOp("join", _flat_join(z, a, e)),), (z, e), "P")


def ego_q() -> AlterEgoSpec:
    """Mirror of ego_p on {b, f, 0}."""
    from .catalog import catalog
    s = catalog("Q").semigroup
    b, f, z = s.index("b"), s.index("f"), s.index("0")
    return AlterEgoSpec(s, (("mul", s.table), ("meet", _flat_meet(s.order, z))),
                        (PartialOp("join", _flat_join(z, b, f)),), (z, f), "Q")


def empty_ego(s: FiniteSemigroup) -> AlterEgoSpec:
    return AlterEgoSpec(s, name="empty")


BUILTIN_EGOS = {"P": ego_p, "Q": ego_q}


@dataclass
class ProbeReport:
    target: str
    ego: str
    arity: int
    exhaustive: bool
    substructures: int = 0
    morphisms: int = 0
    term_functions: int = 0
    all_extend: bool = True
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def term_functions(s: FiniteSemigroup, arity: int, budget: int = DEFAULT_BUDGET) -> set:
    """n-ary term functions as value tuples over the points of S^n (row-major)."""
    points = list(product(range(s.order), repeat=arity))
    projections = [tuple(p[i] for p in points) for i in range(arity)]
    table = s.table
    found = set(projections)
    frontier = list(found)
    while frontier:
        new = []
        for f in frontier:
            for g in list(found):
                for h in (tuple(table[u][v] for u, v in zip(f, g)),
                          tuple(table[u][v] for u, v in zip(g, f))):
                    if h not in found:
                        found.add(h)
                        new.append(h)
            if len(found) > budget:
                raise TooLarge(f"more than {budget} term functions")
        frontier = new
    return found


class _Power:
    """The ego's n-th power, with operations as index tables over its points."""

    def __init__(self, ego: AlterEgoSpec, arity: int):
        self.points = list(product(ego.carrier, repeat=arity))
        idx = {p: k for k, p in enumerate(self.points)}
        m = len(self.points)
        self.total = []
        for _, t in ego.total_ops:
            self.total.append([[idx[tuple(t[u][v] for u, v in zip(p, q))] for q in self.points]
                               for p in self.points])
        self.partial = []
        for op in ego.partial_ops:
            d = {}
            for i, p in enumerate(self.points):
                for j, q in enumerate(self.points):
                    if all((u, v) in op.table for u, v in zip(p, q)):
                        d[(i, j)] = idx[tuple(op.table[(u, v)] for u, v in zip(p, q))]
            self.partial.append(d)
        self.constants = [idx[(c,) * arity] for c in ego.constants]
        self.size = m

    def close(self, seed) -> frozenset:
        members = set(seed) | set(self.constants)
        frontier = list(members)
        while frontier:
            new = []
            for x in frontier:
                for y in list(members):
                    for t in self.total:
                        for v in (t[x][y], t[y][x]):
                            if v not in members:
                                members.add(v)
                                new.append(v)
                    for d in self.partial:
                        for pair in ((x, y), (y, x)):
                            v = d.get(pair)
                            if v is not None and v not in members:
                                members.add(v)
                                new.append(v)
            frontier = new
        return frozenset(members)

    def is_closed(self, members) -> bool:
        if not all(c in members for c in self.constants):
            return False
        for x in members:
            for y in members:
                if any(t[x][y] not in members for t in self.total):
                    return False
                if any(d.get((x, y), x) not in members for d in self.partial):
                    return False
        return True


def _morphisms(power: _Power, ego: AlterEgoSpec, members: list, budget: list):
    """Structure preserving maps members -> ego, by backtracking over members in order."""
    pos = {x: k for k, x in enumerate(members)}
    m = len(members)
    # constraints (x, y, z, op) checked once all three of x, y, z are assigned
    checks = [[] for _ in range(m)]
    for k, t in enumerate(power.total):
        for x in members:
            for y in members:
                z = t[x][y]
                checks[max(pos[x], pos[y], pos[z])].append((pos[x], pos[y], pos[z], ("t", k)))
    for k, d in enumerate(power.partial):
        for (x, y), z in d.items():
            if x in pos and y in pos:
                checks[max(pos[x], pos[y], pos[z])].append((pos[x], pos[y], pos[z], ("p", k)))
    fixed = {pos[c]: ego.constants[i] for i, c in enumerate(power.constants)}
    tot = [t for _, t in ego.total_ops]
    par = [op.table for op in ego.partial_ops]
    alpha = [None] * m

    def ok(k):
        for i, j, l, (kind, o) in checks[k]:
            if kind == "t":
                if tot[o][alpha[i]][alpha[j]] != alpha[l]:
                    return False
            elif par[o].get((alpha[i], alpha[j])) != alpha[l]:
                return False
        return True

    def go(k):
        if k == m:
            budget[0] -= 1
            if budget[0] < 0:
                raise TooLarge("morphism budget exhausted")
            yield tuple(alpha)
            return
        choices = (fixed[k],) if k in fixed else ego.carrier
        for v in choices:
            alpha[k] = v
            if ok(k):
                yield from go(k + 1)
        alpha[k] = None

    yield from go(0)


def _substructures(power: _Power, arity: int, sampled: bool):
    if not sampled:
        if power.size > 20:
            raise TooLarge(f"{2 ** power.size} subsets at arity {arity}; use sampled mode")
        for mask in range(1 << power.size):
            members = frozenset(i for i in range(power.size) if mask >> i & 1)
            if power.is_closed(members):
                yield members
        return
    # deterministic sample: everything generated by at most two points
    seen = set()
    seeds = [()] + [(i,) for i in range(power.size)] + list(combinations(range(power.size), 2))
    for seed in seeds:
        members = power.close(seed)
        if members not in seen:
            seen.add(members)
            yield members


def ic_probe(target: FiniteSemigroup, ego: AlterEgoSpec, arity: int, sampled: bool = False,
             budget: int = DEFAULT_BUDGET, target_name: str = "target") -> ProbeReport:
    """Check that every morphism from a substructure of ego^arity is a term function."""
    if target.order > MAX_TARGET:
        raise TooLarge(f"target of order {target.order} exceeds {MAX_TARGET}")
    if target.table != ego.target.table:
        raise InvalidAlterEgo("alter ego lives on a different semigroup")
    if arity < 1:
        raise ValueError("arity must be at least 1")
    if arity > MAX_EXHAUSTIVE_ARITY and not sampled:
        raise TooLarge(f"arity {arity} is only available in sampled mode")
    report = ProbeReport(target_name, ego.name, arity, exhaustive=not sampled)
    if sampled:
        report.notes.append("non-exhaustive: substructures generated by at most two points")
    power = _Power(ego, arity)
    terms = term_functions(target, arity, budget)
    report.term_functions = len(terms)
    left = [budget]
    for members in _substructures(power, arity, sampled):
        report.substructures += 1
        ms = sorted(members)
        restrictions = {tuple(t[i] for i in ms) for t in terms}
        for alpha in _morphisms(power, ego, ms, left):
            report.morphisms += 1
            if alpha not in restrictions:
                report.all_extend = False
                lab = target.label
                report.counterexample = {
                    "substructure": [[lab(v) for v in power.points[i]] for i in ms],
                    "map": {",".join(lab(v) for v in power.points[i]): lab(a)
                            for i, a in zip(ms, alpha)},
                }
                return report
    return report
