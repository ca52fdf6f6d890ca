"""Enumeration of small semigroups up to relabeling, plus the order-n census."""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .core import FiniteSemigroup, is_proper_k_nilpotent

LABELED, ISO, ISO_OR_ANTI = "labeled", "iso", "iso_or_anti"
MAX_ORDER = 4
MAX_UNBOUNDED_ORDER = 5


def _labeled_tables(n: int) -> Iterator[tuple]:
    """All associative n x n tables in lexicographic order of the flattened table."""
    cells = n * n
    t = [[-1] * n for _ in range(n)]

    def fill(k):
        if k == cells:
            yield tuple(tuple(r) for r in t)
            return
        x, y = divmod(k, n)
        for v in range(n):
            t[x][y] = v
            if _assignment_ok(t, n, x, y):
                yield from fill(k + 1)
        t[x][y] = -1

    yield from fill(0)


def _assignment_ok(t, n, x, y):
    """Check every associativity triple that reads cell (x, y), where determined."""
    v = t[x][y]
    tx, tv = t[x], t[v]
    for z in range(n):
        # (x, y, z)
        yz = t[y][z]
        if yz >= 0:
            left, right = tv[z], tx[yz]
            if left >= 0 and right >= 0 and left != right:
                return False
        # (z, x, y)
        zx = t[z][x]
        if zx >= 0:
            left, right = t[zx][y], t[z][v]
            if left >= 0 and right >= 0 and left != right:
                return False
    for a in range(n):
        ta = t[a]
        for b in range(n):
            # (a, b, y) with ab = x
            if ta[b] == x:
                by = t[b][y]
                if by >= 0 and ta[by] >= 0 and ta[by] != v:
                    return False
            # (x, a, b) with ab = y
            if ta[b] == y:
                xa = tx[a]
                if xa >= 0 and t[xa][b] >= 0 and t[xa][b] != v:
                    return False
    return True


def relabel(table: tuple, perm: tuple) -> tuple:
    """Table of the isomorphic copy where element i is renamed perm[i]."""
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def transpose(table: tuple) -> tuple:
    return tuple(zip(*table))


def canonical_form(table: tuple, up_to: str = ISO) -> tuple:
    """Lexicographically least flattened table over relabelings (and transposes)."""
    table = tuple(tuple(r) for r in table)
    n = len(table)
    variants = [table] + ([transpose(table)] if up_to == ISO_OR_ANTI else [])
    return min(relabel(v, p) for v in variants for p in permutations(range(n)))


def orbit_size(table: tuple) -> int:
    """Number of distinct labeled tables isomorphic to this one (n!/|Aut|)."""
    n = len(table)
    return len({relabel(table, p) for p in permutations(range(n))})


def enumerate_semigroups(n: int, up_to: str = LABELED, unbounded: bool = False) -> Iterator[FiniteSemigroup]:
    """Deterministic, duplicate-free stream of semigroups of order n."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_ORDER and not (unbounded and n <= MAX_UNBOUNDED_ORDER):
        raise ValueError(f"order {n} needs the unbounded flag (at most {MAX_UNBOUNDED_ORDER})")
    if up_to not in (LABELED, ISO, ISO_OR_ANTI):
        raise ValueError(f"unknown mode {up_to!r}")
    for table in _labeled_tables(n):
        if up_to == LABELED or canonical_form(table, up_to) == table:
            yield FiniteSemigroup(table)


@dataclass(frozen=True)
class CensusRecord:
    """Fractions are per isomorphism class; the labeled_* fields weight each
    class by its number of labeled copies instead."""
    n: int
    labeled_associative_count: int
    iso_class_count: int
    proper_3_nilpotent_fraction: float
    ind_flagged_fraction: float
    runtime: float  # seconds
    labeled_proper_3_nilpotent_fraction: float = 0.0
    labeled_ind_flagged_fraction: float = 0.0

    def csv_row(self) -> str:
        return (f"{self.n},{self.labeled_associative_count},{self.iso_class_count},"
                f"{self.proper_3_nilpotent_fraction:.6f},{self.ind_flagged_fraction:.6f},"
                f"{round(self.runtime * 1000)}")

    def to_json(self) -> dict:
        return dict(self.__dict__)


CSV_HEADER = "n,labeled,iso,p3nilp_fraction,ind_fraction,runtime_ms"


def census(n: int, unbounded: bool = False) -> CensusRecord:
    """Classify every isomorphism class of order n once and tally the flags."""
    from .classify import Status, classify

    start = time.perf_counter()
    labeled = iso = 0
    nil = ind = nil_w = ind_w = 0
    for s in enumerate_semigroups(n, ISO, unbounded=unbounded):
        w = orbit_size(s.table)
        labeled += w
        iso += 1
        if n >= 3 and is_proper_k_nilpotent(s, 3):
            nil += 1
            nil_w += w
        if classify(s).status is Status.IND:
            ind += 1
            ind_w += w
    return CensusRecord(n, labeled, iso, nil / iso, ind / iso, time.perf_counter() - start,
                        nil_w / labeled, ind_w / labeled)
