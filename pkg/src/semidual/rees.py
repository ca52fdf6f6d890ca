"""Rees matrix semigroups and the small-group tools they need."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Optional, Sequence

from sympy import factorint

from .core import (FiniteSemigroup, generate_subsemigroup, idempotents,
                   identity_element, is_isomorphic, parse_and_validate, power,
                   restrict, semigroup_index_period, zero_element)
from .errors import (InvalidSandwich, NotAGroup, NotCompletelySimple,
                     NotRegular, TableFormatError)
from .green import green_data, is_completely_simple, is_completely_zero_simple, is_regular

ZERO = None  # sandwich zero marker; never a group index


@dataclass(frozen=True)
class FiniteGroup:
    carrier: FiniteSemigroup
    identity: int
    inverse: tuple

    @property
    def order(self) -> int:
        return self.carrier.order

    def mul(self, x, y):
        return self.carrier.table[x][y]


def as_group(s: FiniteSemigroup) -> FiniteGroup:
    e = identity_element(s)
    if e is None:
        raise NotAGroup("no identity element")
    inv = []
    for x in s.elements:
        y = next((y for y in s.elements if s.table[x][y] == e == s.table[y][x]), None)
        if y is None:
            raise NotAGroup(f"element {x} has no inverse")
        inv.append(y)
    return FiniteGroup(s, e, tuple(inv))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(FiniteSemigroup(((0,),), ("1",)), 0, (0,))


@dataclass(frozen=True)
class ReesPresentation:
    group: FiniteGroup
    I_size: int
    Lambda_size: int
    sandwich: tuple  # Lambda rows, I columns; entries group index or ZERO
    with_zero: bool

    def __post_init__(self):
        object.__setattr__(self, "sandwich", tuple(tuple(r) for r in self.sandwich))


def _check_presentation(pres: ReesPresentation):
    P = pres.sandwich
    if len(P) != pres.Lambda_size or any(len(r) != pres.I_size for r in P):
        raise InvalidSandwich("sandwich must have Lambda rows and I columns")
    n = pres.group.order
    for row in P:
        for v in row:
            if v is ZERO:
                if not pres.with_zero:
                    raise InvalidSandwich("zero entry without an adjoined zero")
            elif not (isinstance(v, int) and 0 <= v < n):
                raise InvalidSandwich(f"entry {v!r} is not a group element")
    for lam, row in enumerate(P):
        if all(v is ZERO for v in row):
            raise InvalidSandwich(f"row {lam + 1} is entirely zero")
    for i in range(pres.I_size):
        if all(P[lam][i] is ZERO for lam in range(pres.Lambda_size)):
            raise InvalidSandwich(f"column {i + 1} is entirely zero")


def rees_construct(pres: ReesPresentation) -> FiniteSemigroup:
    """M[G,P] or M0[G,P]; triple (i,g,lam) has index (i*|G| + g)*|Lambda| + lam, zero last."""
    _check_presentation(pres)
    G = pres.group.carrier
    ng, nl = G.order, pres.Lambda_size
    triples = list(cartesian(range(pres.I_size), G.elements, range(nl)))
    zero = len(triples)

    def idx(i, g, lam):
        return (i * ng + g) * nl + lam

    table = []
    for (i, g, lam) in triples:
        row = []
        for (j, h, rho) in triples:
            p = pres.sandwich[lam][j]
            row.append(zero if p is ZERO else idx(i, G.table[G.table[g][p]][h], rho))
        if pres.with_zero:
            row.append(zero)
        table.append(row)
    labels = [f"({i + 1},{G.label(g)},{lam + 1})" for (i, g, lam) in triples]
    if pres.with_zero:
        table.append([zero] * (zero + 1))
        labels.append("0")
    return FiniteSemigroup(table, tuple(labels))


@dataclass(frozen=True)
class Decomposition:
    """A presentation together with the element coordinates it was read from."""
    presentation: ReesPresentation
    coords: dict          # element -> (i, g, lam) with g indexing the group carrier
    group_elements: tuple  # group carrier index -> original element
    zero: Optional[int]


def decompose(s: FiniteSemigroup) -> Decomposition:
    if is_completely_simple(s):
        zero, with_zero = None, False
    elif is_completely_zero_simple(s):
        zero, with_zero = zero_element(s), True
    else:
        raise NotCompletelySimple("input is neither completely simple nor completely 0-simple")
    gd = green_data(s)
    t = s.table
    nonzero = [x for x in s.elements if x != zero]
    r_classes = [c for c in gd.r_classes if zero not in c]
    l_classes = [c for c in gd.l_classes if zero not in c]
    r_of = {x: k for k, c in enumerate(r_classes) for x in c}
    l_of = {x: k for k, c in enumerate(l_classes) for x in c}
    e = min(x for x in idempotents(s) if x != zero)
    i0, l0 = r_of[e], l_of[e]
    H = sorted(x for x in nonzero if r_of[x] == i0 and l_of[x] == l0)

    def cell(i, lam):
        return [x for x in nonzero if r_of[x] == i and l_of[x] == lam]

    # representatives normalised so the anchor row and column read as the identity
    reps_r = []
    for i in range(len(r_classes)):
        c = cell(i, l0)
        reps_r.append(next((x for x in c if t[e][x] == e), c[0]))
    reps_l = []
    for lam in range(len(l_classes)):
        c = cell(i0, lam)
        reps_l.append(next((x for x in c if t[x][e] == e), c[0]))

    group_sg, gpos = restrict(s, H)
    group = as_group(group_sg)
    sandwich = []
    for lam in range(len(l_classes)):
        row = []
        for i in range(len(r_classes)):
            p = t[reps_l[lam]][reps_r[i]]
            row.append(ZERO if p == zero else gpos[p])
        sandwich.append(row)
    coords = {}
    for x in nonzero:
        i, lam = r_of[x], l_of[x]
        g = next(g for g in H if t[t[reps_r[i]][g]][reps_l[lam]] == x)
        coords[x] = (i, gpos[g], lam)
    pres = ReesPresentation(group, len(r_classes), len(l_classes), sandwich, with_zero)
    return Decomposition(pres, coords, tuple(H), zero)


def rees_decompose(s: FiniteSemigroup) -> ReesPresentation:
    return decompose(s).presentation


def is_orthodox(s: FiniteSemigroup) -> bool:
    if not is_regular(s):
        raise NotRegular("orthodoxy is defined for regular semigroups")
    return nonorthodox_pair(s) is None


def nonorthodox_pair(s: FiniteSemigroup) -> Optional[tuple]:
    ids = sorted(idempotents(s))
    for e in ids:
        for f in ids:
            ef = s.table[e][f]
            if s.table[ef][ef] != ef:
                return e, f
    return None


def is_group_times_rectangular_band(s: FiniteSemigroup) -> bool:
    """(xy)^p = x^p y^p for p the period."""
    if not is_completely_simple(s):
        raise NotCompletelySimple("law check needs a completely simple semigroup")
    _, p = semigroup_index_period(s)
    t = s.table
    return all(power(s, t[x][y], p) == t[power(s, x, p)][power(s, y, p)]
               for x in s.elements for y in s.elements)


def maximal_subgroups(s: FiniteSemigroup) -> list:
    """One group per idempotent, on its H-class; carriers keep original labels.

    Each returned group has attribute-free carrier indices; use
    ``maximal_subgroup_elements`` for the embedding into s.
    """
    return [group for _, group in maximal_subgroup_elements(s)]


def maximal_subgroup_elements(s: FiniteSemigroup) -> list:
    gd = green_data(s)
    out = []
    for e in sorted(idempotents(s)):
        h = gd.class_containing(gd.h_classes, e)
        sub, pos = restrict(s, h)
        if sub.labels is None:
            sub = FiniteSemigroup(sub.table, tuple(str(x) for x in h))
        group = as_group(sub)
        out.append((tuple(h), group))
    return out


def commutator(g: FiniteGroup, x: int, y: int) -> int:
    """[x,y] = x y x^-1 y^-1, so that xy = [x,y] y x holds in every group."""
    t, inv = g.carrier.table, g.inverse
    return t[t[t[x][y]][inv[x]]][inv[y]]


def generated_subgroup(g: FiniteGroup, gens) -> frozenset:
    gens = set(gens) | {g.identity}
    return generate_subsemigroup(g.carrier, gens)


def is_abelian_subset(g: FiniteGroup, elems) -> bool:
    t = g.carrier.table
    return all(t[x][y] == t[y][x] for x in elems for y in elems)


def noncommuting_pair(g: FiniteGroup, elems) -> Optional[tuple]:
    t = g.carrier.table
    es = sorted(elems)
    for x in es:
        for y in es:
            if t[x][y] != t[y][x]:
                return x, y
    return None


def element_order(g: FiniteGroup, x: int) -> int:
    k, cur = 1, x
    while cur != g.identity:
        cur = g.carrier.table[cur][x]
        k += 1
    return k


@dataclass(frozen=True)
class SylowEntry:
    prime: int
    p_power: int
    subgroup: frozenset
    abelian: bool


@dataclass(frozen=True)
class SylowReport:
    entries: tuple

    def nonabelian(self) -> list:
        return [e for e in self.entries if not e.abelian]


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(g: FiniteGroup, p: int) -> frozenset:
    """A subgroup of order the full p-part of |G|, by growth with backtracking."""
    target = p ** factorint(g.order).get(p, 0)
    candidates = [x for x in g.carrier.elements if _is_p_power(element_order(g, x), p)]
    seen = set()

    def grow(h):
        if len(h) == target:
            return h
        for x in candidates:
            if x in h:
                continue
            bigger = generated_subgroup(g, h | {x})
            if bigger in seen or len(bigger) > target or not _is_p_power(len(bigger), p):
                continue
            seen.add(bigger)
            found = grow(bigger)
            if found is not None:
                return found
        return None

    result = grow(frozenset([g.identity]))
    assert result is not None, "Sylow subgroups always exist"
    return result


def sylow_report(g: FiniteGroup) -> SylowReport:
    entries = []
    for p, k in sorted(factorint(g.order).items()):
        sub = sylow_subgroup(g, p)
        entries.append(SylowEntry(p, p ** k, sub, is_abelian_subset(g, sub)))
    return SylowReport(tuple(entries))


def nilpotency_class(g: FiniteGroup) -> Optional[int]:
    """Length of the lower central series; None when the group is not nilpotent."""
    current = frozenset(g.carrier.elements)
    k = 0
    while len(current) > 1:
        comms = {commutator(g, x, y) for x in current for y in g.carrier.elements}
        nxt = generated_subgroup(g, comms)
        if nxt == current:
            return None
        current, k = nxt, k + 1
    return k


def presentation_round_trips(s: FiniteSemigroup) -> bool:
    return is_isomorphic(rees_construct(rees_decompose(s)), s)


def format_presentation(pres: ReesPresentation) -> str:
    """REES text format; sandwich group entries are written 1-based, 0 marks zero."""
    G = pres.group.carrier
    lines = ["REES", f"with_zero {int(pres.with_zero)}", f"group {G.order}"]
    lines += [" ".join(map(str, r)) for r in G.table]
    lines.append(f"size {pres.I_size} {pres.Lambda_size}")
    for row in pres.sandwich:
        lines.append(" ".join("0" if v is ZERO else str(v + 1) for v in row))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> ReesPresentation:
    lines = [ln.split() for ln in text.strip().splitlines()]
    try:
        if lines[0] != ["REES"]:
            raise TableFormatError("missing REES header")
        key, flag = lines[1]
        if key != "with_zero" or flag not in ("0", "1"):
            raise TableFormatError("expected 'with_zero 0|1'")
        key, n = lines[2]
        n = int(n)
        rows = [[int(v) for v in ln] for ln in lines[3:3 + n]]
        key2, isz, lsz = lines[3 + n]
        if key != "group" or key2 != "size":
            raise TableFormatError("expected 'group n' and 'size I Lambda' lines")
        isz, lsz = int(isz), int(lsz)
        body = lines[4 + n:]
        if len(body) != lsz:
            raise TableFormatError(f"expected {lsz} sandwich rows, found {len(body)}")
        sandwich = [[ZERO if v == "0" else int(v) - 1 for v in row] for row in body]
    except (IndexError, ValueError) as exc:
        raise TableFormatError(f"malformed presentation: {exc}") from None
    group = as_group(parse_and_validate(rows))
    pres = ReesPresentation(group, isz, lsz, sandwich, flag == "1")
    _check_presentation(pres)
    return pres


def rectangular_band(rows: int, cols: int) -> FiniteSemigroup:
    return rees_construct(ReesPresentation(trivial_group(), rows, cols,
                                           [[0] * rows for _ in range(cols)], False))


def group_from_table(table: Sequence[Sequence[int]], labels=None) -> FiniteGroup:
    return as_group(parse_and_validate(table, labels))
