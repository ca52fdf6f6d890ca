"""Named semigroups shared by the classifier and the command line."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

from .core import FiniteSemigroup, parse_and_validate
from .errors import UnknownName
from .rees import ReesPresentation, ZERO, as_group, rees_construct, trivial_group


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    semigroup: FiniteSemigroup
    provenance: str


def _from_products(labels, nonzero, zero="0"):
    """Table on labels where listed products are given and everything else is zero."""
    idx = {x: i for i, x in enumerate(labels)}
    z = idx[zero]
    table = [[z] * len(labels) for _ in labels]
    for (x, y), v in nonzero.items():
        table[idx[x]][idx[y]] = idx[v]
    return parse_and_validate(table, labels)


def _adjoin_identity(table, labels):
    n = len(table)
    out = [list(range(n + 1))]
    out += [[i + 1] + [v + 1 for v in row] for i, row in enumerate(table)]
    return parse_and_validate(out, ["1"] + list(labels))


def cyclic_group(n: int) -> FiniteSemigroup:
    return parse_and_validate([[(x + y) % n for y in range(n)] for x in range(n)],
                              [f"g{k}" if k else "1" for k in range(n)])


def symmetric_group_3() -> FiniteSemigroup:
    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p*q)(k) = p(q(k)): apply q first
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return parse_and_validate(table, labels)


def dihedral_group_4() -> FiniteSemigroup:
    """Elements r^i s^j ordered 1, r, r2, r3, s, rs, r2s, r3s."""
    elems = [(i, j) for j in range(2) for i in range(4)]
    idx = {x: k for k, x in enumerate(elems)}

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + (k if j == 0 else -k)) % 4, (j + l) % 2)

    table = [[idx[mul(x, y)] for y in elems] for x in elems]
    labels = ["1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
    return parse_and_validate(table, labels)


def quaternion_group() -> FiniteSemigroup:
    # units 1, i, j, k with signs; basis product table
    basis = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(sg, u) for sg in (1, -1) for u in "1ijk"]
    idx = {x: n for n, x in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            sg, u = basis[(u1, u2)]
            row.append(idx[(s1 * s2 * sg, u)])
        table.append(row)
    labels = [("" if sg == 1 else "-") + u for sg, u in elems]
    return parse_and_validate(table, labels)


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """<a> with a^(index+period) = a^index, elements a, a^2, ..., a^(index+period-1)."""
    n = index + period - 1

    def reduce(k):
        return k if k <= n else index + (k - index) % period

    table = [[reduce(x + y) - 1 for y in range(1, n + 1)] for x in range(1, n + 1)]
    return parse_and_validate(table, ["a" if k == 1 else f"a{k}" for k in range(1, n + 1)])


def nilpotent_cyclic(k: int) -> FiniteSemigroup:
    """<a> with a^k = 0: elements a, ..., a^(k-1), 0."""
    table = [[x + y - 1 if x + y <= k - 1 else k - 1 for y in range(1, k)] + [k - 1]
             for x in range(1, k)]
    table.append([k - 1] * k)
    labels = ["a" if j == 1 else f"a{j}" for j in range(1, k)] + ["0"]
    return parse_and_validate(table, labels)


def null_semigroup(n: int) -> FiniteSemigroup:
    return parse_and_validate([[n - 1] * n for _ in range(n)],
                              [f"x{k}" for k in range(n - 1)] + ["0"])


def chain_semilattice(n: int) -> FiniteSemigroup:
    return parse_and_validate([[min(x, y) for y in range(n)] for x in range(n)])


def left_zero(n: int) -> FiniteSemigroup:
    return parse_and_validate([[x] * n for x in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    return parse_and_validate([list(range(n)) for _ in range(n)])


def brandt_b2() -> FiniteSemigroup:
    pres = ReesPresentation(trivial_group(), 2, 2, [[0, ZERO], [ZERO, 0]], True)
    return rees_construct(pres)


def rees_c2_nonorthodox() -> FiniteSemigroup:
    """M[C2, ((1,1),(1,g))] over the cyclic group of order 2."""
    g = as_group(cyclic_group(2))
    pres = ReesPresentation(g, 2, 2, [[0, 0], [0, 1]], False)
    return rees_construct(pres)


def rectangular_band(rows: int, cols: int) -> FiniteSemigroup:
    pres = ReesPresentation(trivial_group(), rows, cols, [[0] * rows for _ in range(cols)], False)
    return rees_construct(pres)


P_SEMIGROUP = dict(labels=["a", "e", "0"],
                   nonzero={("e", "a"): "a", ("e", "e"): "e"})
Q_SEMIGROUP = dict(labels=["b", "f", "0"],
                   nonzero={("b", "f"): "b", ("f", "f"): "f"})
M_SEMIGROUP = dict(labels=["a", "b", "e", "f", "0"],
                   nonzero={("e", "a"): "a", ("b", "f"): "b",
                            ("e", "e"): "e", ("f", "f"): "f"})

_BUILDERS = {
    "trivial": (lambda: parse_and_validate([[0]], ["0"]),
                "one-element semigroup"),
    "C121": (lambda: _from_products(["1", "a", "0"], {("1", "1"): "1", ("1", "a"): "a",
                                                      ("a", "1"): "a"}),
             "identity adjoined to the 2-element null semigroup {a, 0}"),
    "L1": (lambda: _adjoin_identity([[0, 0], [1, 1]], ["a", "b"]),
           "identity adjoined to the 2-element left-zero semigroup"),
    "R1": (lambda: _adjoin_identity([[0, 1], [0, 1]], ["a", "b"]),
           "identity adjoined to the 2-element right-zero semigroup"),
    "P": (lambda: _from_products(**P_SEMIGROUP), "{a, e, 0} with ea = a, ee = e, other products 0"),
    "Q": (lambda: _from_products(**Q_SEMIGROUP), "{b, f, 0} with bf = b, ff = f, other products 0"),
    "M": (lambda: _from_products(**M_SEMIGROUP),
          "{a, b, e, f, 0} with ea = a, bf = b, ee = e, ff = f, other products 0"),
    "B2": (brandt_b2, "Brandt semigroup M0[1; identity 2x2 sandwich]"),
    "S3": (symmetric_group_3, "symmetric group on 3 points"),
    "D4": (dihedral_group_4, "dihedral group of order 8"),
    "Q8": (quaternion_group, "quaternion group of order 8"),
    "RC2": (rees_c2_nonorthodox, "M[C2; ((1,1),(1,g))], the minimal nonorthodox completely simple semigroup"),
    "mono43": (lambda: monogenic(3, 1), "monogenic <a> with a^4 = a^3"),
    "nil3": (lambda: nilpotent_cyclic(3), "monogenic <a> with a^3 = 0"),
    "nil3x": (lambda: _from_products(["x", "e", "0"], {("x", "x"): "e"}),
              "{x, e, 0} with xx = e, other products 0"),
    "null2": (lambda: null_semigroup(2), "2-element null semigroup"),
    "semilattice2": (lambda: chain_semilattice(2), "2-element semilattice"),
    "semilattice3": (lambda: chain_semilattice(3), "3-element chain semilattice"),
    "leftzero2": (lambda: left_zero(2), "2-element left-zero semigroup"),
    "rightzero2": (lambda: right_zero(2), "2-element right-zero semigroup"),
    "rectband22": (lambda: rectangular_band(2, 2), "2x2 rectangular band"),
}

_CYCLIC = re.compile(r"C(\d+)$")


def catalog_names() -> list:
    return list(_BUILDERS) + [f"C{n}" for n in (2, 3, 4, 6)]


def catalog(name: str) -> CatalogEntry:
    if name in _BUILDERS:
        build, provenance = _BUILDERS[name]
        return CatalogEntry(name, build(), provenance)
    m = _CYCLIC.match(name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        return CatalogEntry(name, cyclic_group(n), f"cyclic group of order {n}")
    raise UnknownName(f"unknown catalog name {name!r}")


GROUP_NAMES = ("trivial", "C2", "C3", "C4", "C6", "S3", "D4", "Q8")
