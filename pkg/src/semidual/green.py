"""Green's relations and principal factors."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (FiniteSemigroup, IdealSet, generate_subsemigroup, idempotents,
                   omega_plus, power, rees_quotient, restrict,
                   semigroup_index_period, zero_element)


def left_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    """S^1 a."""
    return frozenset([a]) | frozenset(s.table[x][a] for x in s.elements)


def right_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    """a S^1."""
    return frozenset([a]) | frozenset(s.table[a])


def principal_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    """S^1 a S^1."""
    r = right_ideal(s, a)
    return r | frozenset(s.table[x][y] for x in s.elements for y in r)


def divides(s: FiniteSemigroup, a: int, b: int) -> bool:
    return b in principal_ideal(s, a)


def _partition(s, key):
    classes: dict = {}
    for x in s.elements:
        classes.setdefault(key(x), []).append(x)
    return tuple(sorted(tuple(c) for c in classes.values()))


@dataclass(frozen=True)
class GreenData:
    j_classes: tuple
    l_classes: tuple
    r_classes: tuple
    h_classes: tuple
    j_order: frozenset  # (i, k): class i lies below (is divisible by) class k

    def j_class_of(self, x: int) -> int:
        for i, c in enumerate(self.j_classes):
            if x in c:
                return i
        raise ValueError(f"element {x} not in any class")

    def class_containing(self, classes: tuple, x: int) -> tuple:
        return next(c for c in classes if x in c)

    def to_json(self) -> dict:
        return {
            "j_classes": [list(c) for c in self.j_classes],
            "l_classes": [list(c) for c in self.l_classes],
            "r_classes": [list(c) for c in self.r_classes],
            "h_classes": [list(c) for c in self.h_classes],
            "j_order": sorted([list(p) for p in self.j_order]),
        }


def green_data(s: FiniteSemigroup) -> GreenData:
    J = {x: principal_ideal(s, x) for x in s.elements}
    L = {x: left_ideal(s, x) for x in s.elements}
    R = {x: right_ideal(s, x) for x in s.elements}
    j_classes = _partition(s, J.__getitem__)
    order = frozenset(
        (i, k)
        for i, ci in enumerate(j_classes)
        for k, ck in enumerate(j_classes)
        if ci[0] in J[ck[0]])
    return GreenData(
        j_classes=j_classes,
        l_classes=_partition(s, L.__getitem__),
        r_classes=_partition(s, R.__getitem__),
        h_classes=_partition(s, lambda x: (L[x], R[x])),
        j_order=order,
    )


def minimal_ideal(s: FiniteSemigroup) -> IdealSet:
    gd = green_data(s)
    minimal = [i for i in range(len(gd.j_classes))
               if all((k, i) not in gd.j_order or k == i
                      for k in range(len(gd.j_classes)))]
    assert len(minimal) == 1, "a finite semigroup has exactly one minimal J-class"
    return IdealSet(frozenset(gd.j_classes[minimal[0]]))


def is_regular(s: FiniteSemigroup) -> bool:
    t = s.table
    return all(any(t[t[x][y]][x] == x for y in s.elements) for x in s.elements)


def is_completely_regular(s: FiniteSemigroup) -> bool:
    return all(omega_plus(s, x, 1) == x for x in s.elements)


def satisfies_period_law(s: FiniteSemigroup) -> bool:
    """x^(p+1) = x for p the period: the identity form of complete regularity."""
    _, p = semigroup_index_period(s)
    return all(power(s, x, p + 1) == x for x in s.elements)


class FactorKind(str, Enum):
    COMPLETELY_SIMPLE = "CompletelySimple"
    COMPLETELY_ZERO_SIMPLE = "CompletelyZeroSimple"
    NULL = "Null"


@dataclass(frozen=True)
class PrincipalFactor:
    kind: FactorKind
    factor: FiniteSemigroup
    source_class: int
    # original element -> factor element, for members of the J-class
    embedding: dict


def principal_factor(s: FiniteSemigroup, j_class_id: int, gd: GreenData | None = None) -> PrincipalFactor:
    gd = gd or green_data(s)
    js = frozenset(gd.j_classes[j_class_id])
    generated = generate_subsemigroup(s, js)
    outside = generated - js
    sub, pos = restrict(s, generated)
    if not outside:
        return PrincipalFactor(FactorKind.COMPLETELY_SIMPLE, sub, j_class_id,
                               {x: pos[x] for x in js})
    quotient, remap = rees_quotient(sub, frozenset(pos[x] for x in outside))
    kind = (FactorKind.COMPLETELY_ZERO_SIMPLE if js & idempotents(s)
            else FactorKind.NULL)
    return PrincipalFactor(kind, quotient, j_class_id,
                           {x: remap[pos[x]] for x in js})


def principal_factors(s: FiniteSemigroup) -> list:
    gd = green_data(s)
    return [principal_factor(s, i, gd) for i in range(len(gd.j_classes))]


def is_completely_zero_simple(s: FiniteSemigroup) -> bool:
    """Zero present, S^2 != 0, the only ideals are {0} and S, with a primitive idempotent."""
    z = zero_element(s)
    if z is None or s.order < 2:
        return False
    if all(s.table[x][y] == z for x in s.elements for y in s.elements):
        return False
    nonzero = [x for x in s.elements if x != z]
    whole = frozenset(s.elements)
    if any(principal_ideal(s, x) != whole for x in nonzero):
        return False
    ids = [e for e in idempotents(s) if e != z]
    for e in ids:
        if all(not (s.table[e][f] == s.table[f][e] == f) or f == e for f in ids):
            return True
    return False


def is_completely_simple(s: FiniteSemigroup) -> bool:
    """Single J-class (finite simple semigroups are completely simple)."""
    return len(green_data(s).j_classes) == 1
