"""Cayley-table semigroups: validation, arithmetic, powers, closures, products,
Rees quotients and embeddings.

Elements are the dense indices ``0..n-1``; labels are cosmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import (NotAnIdeal, NotAssociative, OutOfRangeEntry,
                     TableFormatError)


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def index(self, label: str) -> int:
        """Element index for a label (or a decimal index when unlabelled)."""
        if self.labels and label in self.labels:
            return self.labels.index(label)
        return int(label)

    def word(self, *xs: int) -> int:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc][x]
        return acc


@dataclass(frozen=True)
class MonogenicProfile:
    element: int
    index_i: int
    period_p: int
    omega_power: int


@dataclass(frozen=True)
class IdealSet:
    members: frozenset


def parse_and_validate(raw: Sequence[Sequence[int]],
                       labels: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    """Build a semigroup from a square table, checking ranges and associativity.

    Raises ``OutOfRangeEntry`` or ``NotAssociative`` (carrying the first failing
    triple in lexicographic order).
    """
    n = len(raw)
    if n == 0:
        raise TableFormatError("empty table")
    for x, row in enumerate(raw):
        if len(row) != n:
            raise TableFormatError(f"row {x} has {len(row)} entries, expected {n}")
        for y, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise OutOfRangeEntry(x, y, v, n)
    if labels is not None and len(labels) != n:
        raise TableFormatError(f"{len(labels)} labels for order {n}")
    t = raw
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            txy, ty = t[xy], t[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    raise NotAssociative(x, y, z)
    return FiniteSemigroup(raw, tuple(labels) if labels is not None else None)


def parse_table_text(text: str) -> FiniteSemigroup:
    """Parse the text table format: ``n``, then n rows, then optional labels."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not lines[0]:
        raise TableFormatError("missing order line")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableFormatError(f"bad order line {lines[0]!r}") from None
    if n < 1:
        raise TableFormatError("order must be positive")
    if len(lines) < n + 1:
        raise TableFormatError(f"expected {n} table rows")
    rows = []
    for ln in lines[1:n + 1]:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError:
            raise TableFormatError(f"non-integer in row {ln!r}") from None
    labels = None
    rest = lines[n + 1:]
    if rest:
        labels = rest[0].split()
        if len(labels) != n:
            raise TableFormatError(f"label line has {len(labels)} entries, expected {n}")
        if any(rest[1:]):
            raise TableFormatError("trailing content after label line")
    return parse_and_validate(rows, labels)


def format_table_text(s: FiniteSemigroup) -> str:
    out = [str(s.order)] + [" ".join(map(str, r)) for r in s.table]
    if s.labels:
        out.append(" ".join(s.labels))
    return "\n".join(out) + "\n"


def product(s: FiniteSemigroup, x: int, y: int) -> int:
    return s.table[x][y]


def power(s: FiniteSemigroup, x: int, k: int) -> int:
    """x^k by repeated squaring."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    t = s.table
    result = None
    base = x
    while k:
        if k & 1:
            result = base if result is None else t[result][base]
        k >>= 1
        if k:
            base = t[base][base]
    return result


def monogenic_profile(s: FiniteSemigroup, x: int) -> MonogenicProfile:
    seen = {}
    cur, k = x, 1
    while cur not in seen:
        seen[cur] = k
        cur = s.table[cur][x]
        k += 1
    i = seen[cur]
    p = k - i
    d = p * -(-i // p)
    return MonogenicProfile(x, i, p, power(s, x, d))


def omega_plus(s: FiniteSemigroup, x: int, i: int) -> int:
    """x^(omega+i) for any integer i."""
    prof = monogenic_profile(s, x)
    j = i % prof.period_p or prof.period_p
    return s.table[prof.omega_power][power(s, x, j)]


def semigroup_index_period(s: FiniteSemigroup) -> tuple[int, int]:
    index, period = 1, 1
    for x in s.elements:
        prof = monogenic_profile(s, x)
        index = max(index, prof.index_i)
        period = lcm(period, prof.period_p)
    return index, period


def idempotents(s: FiniteSemigroup) -> frozenset:
    return frozenset(x for x in s.elements if s.table[x][x] == x)


def zero_element(s: FiniteSemigroup) -> Optional[int]:
    for z in s.elements:
        if all(s.table[z][x] == z == s.table[x][z] for x in s.elements):
            return z
    return None


def identity_element(s: FiniteSemigroup) -> Optional[int]:
    for e in s.elements:
        if all(s.table[e][x] == x == s.table[x][e] for x in s.elements):
            return e
    return None


def generate_subsemigroup(s: FiniteSemigroup, generators: Iterable[int]) -> frozenset:
    gens = sorted(set(generators))
    if not gens:
        raise ValueError("need at least one generator")
    t = s.table
    members = set(gens)
    work = list(gens)
    # every element is a word; right-multiplying by generators reaches all of them
    while work:
        x = work.pop()
        row = t[x]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                work.append(y)
    return frozenset(members)


def word_lengths(s: FiniteSemigroup, generators: Iterable[int]) -> dict:
    """Minimal word length over the generators for each element of the closure."""
    gens = sorted(set(generators))
    dist = {g: 1 for g in gens}
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = s.table[x][g]
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def product_set(s: FiniteSemigroup, xs: Iterable[int], ys: Iterable[int]) -> frozenset:
    ys = list(ys)
    return frozenset(s.table[x][y] for x in xs for y in ys)


def power_ideal(s: FiniteSemigroup, k: int, within: Optional[Iterable[int]] = None) -> frozenset:
    """T^k: all products of k elements of T (T = ``within`` or all of s)."""
    base = frozenset(within) if within is not None else frozenset(s.elements)
    acc = base
    for _ in range(k - 1):
        acc = product_set(s, acc, base)
    return acc


def restrict(s: FiniteSemigroup, elements: Iterable[int]) -> tuple[FiniteSemigroup, dict]:
    """The subsemigroup on a closed subset, renumbered in ascending order."""
    elems = sorted(set(elements))
    pos = {x: i for i, x in enumerate(elems)}
    try:
        table = [[pos[s.table[x][y]] for y in elems] for x in elems]
    except KeyError:
        raise ValueError("subset is not closed under multiplication") from None
    labels = tuple(s.label(x) for x in elems) if s.labels else None
    return FiniteSemigroup(table, labels), pos


def direct_product(s: FiniteSemigroup, t: FiniteSemigroup) -> FiniteSemigroup:
    m = t.order
    table = [[s.table[x1][y1] * m + t.table[x2][y2]
              for y1 in s.elements for y2 in t.elements]
             for x1 in s.elements for x2 in t.elements]
    labels = tuple(f"({s.label(a)},{t.label(b)})" for a in s.elements for b in t.elements)
    return FiniteSemigroup(table, labels)


def check_ideal(s: FiniteSemigroup, members: Iterable[int]) -> IdealSet:
    mem = frozenset(members)
    if not mem:
        raise ValueError("an ideal must be nonempty")
    for x in sorted(mem):
        for y in s.elements:
            for p in (s.table[x][y], s.table[y][x]):
                if p not in mem:
                    raise NotAnIdeal(x, y, p)
    return IdealSet(mem)


def rees_quotient(s: FiniteSemigroup, ideal) -> tuple[FiniteSemigroup, dict]:
    """Collapse an ideal to a single zero, placed last.

    Returns the quotient and the old-to-new renumbering.
    """
    members = ideal.members if isinstance(ideal, IdealSet) else ideal
    ideal = check_ideal(s, members)
    keep = [x for x in s.elements if x not in ideal.members]
    zero = len(keep)
    remap = {x: i for i, x in enumerate(keep)}
    for x in ideal.members:
        remap[x] = zero
    table = [[remap[s.table[x][y]] for y in keep] + [zero] for x in keep]
    table.append([zero] * (zero + 1))
    labels = None
    if s.labels:
        labels = tuple(s.label(x) for x in keep) + ("0",)
    return FiniteSemigroup(table, labels), remap


def is_proper_k_nilpotent(s: FiniteSemigroup, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be at least 2")
    z = zero_element(s)
    if z is None:
        return False
    return power_ideal(s, k) == {z} and power_ideal(s, k - 1) != {z}


def nilpotency_degree(s: FiniteSemigroup) -> Optional[int]:
    """Least k with S^k = {0}, or None when s is not nilpotent."""
    z = zero_element(s)
    if z is None:
        return None
    acc = frozenset(s.elements)
    k = 1
    while True:
        if acc == {z}:
            return k
        nxt = product_set(s, acc, s.elements)
        if nxt == acc:
            return None
        acc, k = nxt, k + 1


def _signature(s: FiniteSemigroup, x: int) -> tuple:
    prof = monogenic_profile(s, x)
    return prof.index_i, prof.period_p


def find_embedding(pattern: FiniteSemigroup, host: FiniteSemigroup) -> Optional[dict]:
    """First injective homomorphism pattern -> host in ascending assignment order."""
    n, m = pattern.order, host.order
    if n > m:
        return None
    psig = [_signature(pattern, x) for x in pattern.elements]
    hsig = [_signature(host, y) for y in host.elements]
    if len(idempotents(pattern)) > len(idempotents(host)):
        return None
    candidates = [[y for y in host.elements if hsig[y] == psig[x]]
                  for x in pattern.elements]
    if any(not c for c in candidates):
        return None
    pt, ht = pattern.table, host.table
    image: list = [None] * n
    used = set()

    # a pair (a, b) becomes checkable once a, b and a*b are all assigned
    checks: list = [[] for _ in range(n)]
    for a, b in cartesian(range(n), repeat=2):
        checks[max(a, b, pt[a][b])].append((a, b, pt[a][b]))

    def consistent(x):
        return all(image[c] == ht[image[a]][image[b]] for a, b, c in checks[x])

    def search(x):
        if x == n:
            return True
        for y in candidates[x]:
            if y in used:
                continue
            image[x] = y
            used.add(y)
            if consistent(x) and search(x + 1):
                return True
            used.discard(y)
            image[x] = None
        return False

    if search(0):
        return dict(enumerate(image))
    return None


def is_embedding(pattern: FiniteSemigroup, host: FiniteSemigroup, mapping: dict) -> bool:
    if sorted(mapping) != list(pattern.elements):
        return False
    imgs = [mapping[x] for x in pattern.elements]
    if len(set(imgs)) != len(imgs) or any(not 0 <= y < host.order for y in imgs):
        return False
    return all(mapping[pattern.table[x][y]] == host.table[mapping[x]][mapping[y]]
               for x, y in cartesian(pattern.elements, repeat=2))


def is_isomorphic(s: FiniteSemigroup, t: FiniteSemigroup) -> bool:
    if s.order != t.order:
        return False
    return find_embedding(s, t) is not None
