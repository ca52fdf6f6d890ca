"""Inherent nondualisability verdicts with re-checkable witnesses.

Every criterion is a sufficient condition; a semigroup that trips none of
them is reported as ``Unknown``, never as dualisable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product as cartesian
from typing import Optional

from .catalog import catalog
from .core import (FiniteSemigroup, direct_product, find_embedding,
                   generate_subsemigroup, is_embedding,
                   is_proper_k_nilpotent, monogenic_profile, nilpotency_degree,
                   omega_plus, power_ideal, rees_quotient, restrict,
                   semigroup_index_period)
from .green import (FactorKind, green_data, is_completely_regular, is_regular,
                    principal_factor, principal_ideal)
from .rees import (decompose, maximal_subgroup_elements, noncommuting_pair,
                   nonorthodox_pair, sylow_report, ZERO)

SQUARE_SCAN_LIMIT = 12

CITATIONS = {
    "C1": "index-bound: a finite semigroup of index above 2 has a proper 3-nilpotent "
          "Rees quotient of a monogenic subsemigroup, hence is inherently nondualisable",
    "C2": "nilpotent-variety: a finite semigroup whose variety contains a proper "
          "3-nilpotent semigroup is inherently nondualisable (includes proper "
          "k-nilpotent semigroups, k > 2)",
    "C3": "regular-not-completely-regular: a finite regular semigroup that is not "
          "completely regular has a proper 3-nilpotent semigroup in its variety",
    "C4": "zero-sandwich: a completely 0-simple principal factor with a zero sandwich "
          "entry puts a proper 3-nilpotent semigroup in the variety",
    "C5": "nonabelian-Sylow: a semigroup with a subgroup having a nonabelian Sylow "
          "subgroup is inherently nondualisable",
    "C6": "nonorthodox-completely-simple: a semigroup containing a completely simple "
          "subsemigroup that is not orthodox is inherently nondualisable",
    "C7": "small-patterns: a semigroup containing C1_{2,1}, L1 or R1 is inherently "
          "nondualisable",
    "C8": "P-and-Q: a semigroup embedding both P and Q has P x Q in its quasivariety, "
          "and P x Q is inherently nondualisable",
}

PATTERNS = ("C121", "L1", "R1")


class Status(str, Enum):
    IND = "InherentlyNondualisable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CriterionHit:
    criterion_id: str
    citation: str
    witness: dict

    def to_json(self) -> dict:
        return {"id": self.criterion_id, "citation": self.citation, "witness": self.witness}


@dataclass
class Verdict:
    status: Status
    fired_criteria: list
    notes: list = field(default_factory=list)

    def ids(self) -> list:
        return [h.criterion_id for h in self.fired_criteria]

    def to_json(self, input_name: str, s: FiniteSemigroup) -> dict:
        return {
            "input_name": input_name,
            "order": s.order,
            "status": self.status.value,
            "criteria": [h.to_json() for h in self.fired_criteria],
            "notes": list(self.notes),
            "green": green_data(s).to_json(),
        }


def _hit(cid, witness):
    return CriterionHit(cid, CITATIONS[cid], witness)


# --- criteria -------------------------------------------------------------

def check_index(s: FiniteSemigroup) -> Optional[CriterionHit]:
    index, _ = semigroup_index_period(s)
    if index <= 2:
        return None
    for x in s.elements:
        prof = monogenic_profile(s, x)
        if prof.index_i > 2:
            return _hit("C1", {"element": x, "index": prof.index_i, "period": prof.period_p})
    return None


def cube_escape(s: FiniteSemigroup, x: int, y: int) -> Optional[str]:
    """A length-2 word in x, y whose value is not the value of any longer word."""
    t = s.table
    gens = (x,) if x == y else (x, y)
    names = {x: "x", y: "y"}
    twos = {names[u] + names[v]: t[u][v] for u in gens for v in gens}
    longer = set()
    frontier = []
    for v in twos.values():
        for g in gens:
            w = t[v][g]
            if w not in longer:
                longer.add(w)
                frontier.append(w)
    while frontier:
        u = frontier.pop()
        for g in gens:
            w = t[u][g]
            if w not in longer:
                longer.add(w)
                frontier.append(w)
    for word, v in twos.items():
        if v not in longer:
            return word
    return None


def _pair_scan(s: FiniteSemigroup) -> Optional[tuple]:
    for x in s.elements:
        for y in range(x, s.order):
            word = cube_escape(s, x, y)
            if word is not None:
                return x, y, word
    return None


def check_nilpotent_divisor(s: FiniteSemigroup) -> Optional[CriterionHit]:
    k = nilpotency_degree(s)
    if k is not None and k >= 3:
        return _hit("C2", {"kind": "whole", "k": k})
    found = _pair_scan(s)
    if found:
        x, y, word = found
        return _hit("C2", {"kind": "pair", "generators": [x, y], "word": word})
    if s.order <= SQUARE_SCAN_LIMIT:
        sq = direct_product(s, s)
        found = _pair_scan(sq)
        if found:
            x, y, word = found
            n = s.order
            return _hit("C2", {"kind": "square_pair",
                               "generators": [[x // n, x % n], [y // n, y % n]],
                               "word": word})
    return None


def check_regular_not_cr(s: FiniteSemigroup) -> Optional[CriterionHit]:
    if not is_regular(s) or is_completely_regular(s):
        return None
    x = next(x for x in s.elements if omega_plus(s, x, 1) != x)
    return _hit("C3", {"element": x, "omega_plus_one": omega_plus(s, x, 1)})


def check_zero_sandwich(s: FiniteSemigroup) -> Optional[CriterionHit]:
    gd = green_data(s)
    for cid, members in enumerate(gd.j_classes):
        pf = principal_factor(s, cid, gd)
        if pf.kind is not FactorKind.COMPLETELY_ZERO_SIMPLE:
            continue
        dec = decompose(pf.factor)
        P = dec.presentation.sandwich
        for lam, i in cartesian(range(dec.presentation.Lambda_size), range(dec.presentation.I_size)):
            if P[lam][i] is ZERO:
                back = {v: k for k, v in pf.embedding.items()}
                x = min(back[e] for e, c in dec.coords.items() if c[2] == lam)
                y = min(back[e] for e, c in dec.coords.items() if c[0] == i)
                return _hit("C4", {"j_class": list(members), "x": x, "y": y,
                                   "sandwich_entry": [lam + 1, i + 1]})
    return None


def check_sylow(s: FiniteSemigroup) -> Optional[CriterionHit]:
    for h, group in maximal_subgroup_elements(s):
        for entry in sylow_report(group).entries:
            if entry.abelian:
                continue
            sub = sorted(h[k] for k in entry.subgroup)
            x, y = noncommuting_pair(group, entry.subgroup)
            return _hit("C5", {"idempotent": h[group.identity], "prime": entry.prime,
                               "subgroup": sub, "noncommuting": [h[x], h[y]]})
    return None


def check_nonorthodox_cs(s: FiniteSemigroup) -> Optional[CriterionHit]:
    gd = green_data(s)
    for cid, members in enumerate(gd.j_classes):
        pf = principal_factor(s, cid, gd)
        if pf.kind is not FactorKind.COMPLETELY_SIMPLE:
            continue
        sub, pos = restrict(s, members)
        pair = nonorthodox_pair(sub)
        if pair is not None:
            e, f = (members[k] for k in pair)
            return _hit("C6", {"j_class": list(members), "idempotents": [e, f],
                               "product": s.table[e][f]})
    return None


def check_patterns(s: FiniteSemigroup) -> Optional[CriterionHit]:
    for name in PATTERNS:
        emb = find_embedding(catalog(name).semigroup, s)
        if emb is not None:
            return _hit("C7", {"pattern": name, "embedding": _json_map(emb)})
    return None


def check_p_and_q(s: FiniteSemigroup) -> Optional[CriterionHit]:
    ep = find_embedding(catalog("P").semigroup, s)
    eq = find_embedding(catalog("Q").semigroup, s)
    if ep is None or eq is None:
        return None
    return _hit("C8", {"P": _json_map(ep), "Q": _json_map(eq)})


def _json_map(m: dict) -> dict:
    return {str(k): v for k, v in sorted(m.items())}


CRITERIA = (
    ("C1", check_index),
    ("C2", check_nilpotent_divisor),
    ("C3", check_regular_not_cr),
    ("C4", check_zero_sandwich),
    ("C5", check_sylow),
    ("C6", check_nonorthodox_cs),
    ("C7", check_patterns),
    ("C8", check_p_and_q),
)


def classify(s: FiniteSemigroup) -> Verdict:
    hits = [h for _, check in CRITERIA if (h := check(s)) is not None]
    if hits:
        return Verdict(Status.IND, hits)
    notes = ["Unknown does not mean dualisable: every criterion here is sufficient, "
             "none is necessary; dualisability of unflagged semigroups is open in general."]
    if is_regular(s):
        notes.append(_regular_necessary_condition(s))
    return Verdict(Status.UNKNOWN, [], notes)


def _regular_necessary_condition(s: FiniteSemigroup) -> str:
    cr = is_completely_regular(s)
    gd = green_data(s)
    orthodox_classes = all(
        nonorthodox_pair(restrict(s, c)[0]) is None for c in gd.j_classes
        if generate_subsemigroup(s, c) == frozenset(c))
    no_patterns = all(find_embedding(catalog(n).semigroup, s) is None for n in ("L1", "R1"))
    ok = cr and orthodox_classes and no_patterns
    return ("regular: a dualisable regular semigroup must be a normal band of groups whose "
            "J-classes are group x rectangular band; "
            + ("this necessary condition holds here" if ok else "this necessary condition FAILS here"))


# --- witness re-verification ----------------------------------------------

def _orbit_profile(s, x):
    powers = [x]
    while True:
        nxt = s.table[powers[-1]][x]
        if nxt in powers:
            i = powers.index(nxt) + 1
            return i, len(powers) + 1 - i
        powers.append(nxt)


def _verify_c1(s, w):
    x, i, p = w["element"], w["index"], w["period"]
    return (i > 2 and 0 <= x < s.order and _orbit_profile(s, x) == (i, p))


def _verify_c2(s, w):
    kind = w["kind"]
    if kind == "whole":
        return w["k"] > 2 and is_proper_k_nilpotent(s, w["k"])
    if kind == "pair":
        host, (x, y) = s, w["generators"]
    elif kind == "square_pair":
        host = direct_product(s, s)
        n = s.order
        (x1, x2), (y1, y2) = w["generators"]
        x, y = x1 * n + x2, y1 * n + y2
    else:
        return False
    names = {"x": x, "y": y}
    word = w["word"]
    if len(word) != 2 or any(ch not in names for ch in word):
        return False
    T = generate_subsemigroup(host, {x, y})
    cube = power_ideal(host, 3, T)
    value = host.table[names[word[0]]][names[word[1]]]
    if value in cube:
        return False
    sub, pos = restrict(host, T)
    quotient, _ = rees_quotient(sub, frozenset(pos[c] for c in cube))
    return is_proper_k_nilpotent(quotient, 3)


def _verify_c3(s, w):
    x = w["element"]
    t = s.table
    if not all(any(t[t[a][b]][a] == a for b in s.elements) for a in s.elements):
        return False
    i, p = _orbit_profile(s, x)
    k = p * -(-i // p)  # least multiple of p that is >= i
    powers = [x]
    for _ in range(k + p):
        powers.append(t[powers[-1]][x])
    return powers[k] != x  # x^(k+1) = x^(omega+1)


def _same_j(s, a, b):
    return principal_ideal(s, a) == principal_ideal(s, b)


def _verify_c4(s, w):
    members, x, y = w["j_class"], w["x"], w["y"]
    if not members or any(not _same_j(s, members[0], m) for m in members):
        return False
    if x not in members or y not in members:
        return False
    if not any(s.table[e][e] == e for e in members):
        return False
    return not _same_j(s, s.table[x][y], x)


def _verify_c5(s, w):
    e, p, sub, (x, y) = w["idempotent"], w["prime"], w["subgroup"], w["noncommuting"]
    t = s.table
    if t[e][e] != e or e not in sub:
        return False
    subset = set(sub)
    if any(t[a][b] not in subset for a in sub for b in sub):
        return False
    if any(t[e][a] != a or t[a][e] != a for a in sub):
        return False
    if any(not any(t[a][b] == e for b in sub) for a in sub):
        return False
    # H-class of e, recomputed from one-sided ideals
    left = {a for a in s.elements
            if {a} | {t[z][a] for z in s.elements} == {e} | {t[z][e] for z in s.elements}}
    right = {a for a in s.elements
             if {a} | set(t[a]) == {e} | set(t[e])}
    h = left & right
    if not subset <= h:
        return False
    n, part = len(h), 1
    while n % p == 0:
        n //= p
        part *= p
    return len(sub) == part and x in subset and y in subset and t[x][y] != t[y][x]


def _verify_c6(s, w):
    members, (e, f) = w["j_class"], w["idempotents"]
    t = s.table
    ms = set(members)
    if any(not _same_j(s, members[0], m) for m in members):
        return False
    if any(t[a][b] not in ms for a in members for b in members):
        return False
    if e not in ms or f not in ms or t[e][e] != e or t[f][f] != f:
        return False
    ef = t[e][f]
    return t[ef][ef] != ef


def _check_map(pattern_name, s, m):
    pattern = catalog(pattern_name).semigroup
    try:
        mapping = {int(k): int(v) for k, v in m.items()}
    except (TypeError, ValueError):
        return False
    return is_embedding(pattern, s, mapping)


def _verify_c7(s, w):
    return w["pattern"] in PATTERNS and _check_map(w["pattern"], s, w["embedding"])


def _verify_c8(s, w):
    return _check_map("P", s, w["P"]) and _check_map("Q", s, w["Q"])


_VERIFIERS = {"C1": _verify_c1, "C2": _verify_c2, "C3": _verify_c3, "C4": _verify_c4,
              "C5": _verify_c5, "C6": _verify_c6, "C7": _verify_c7, "C8": _verify_c8}


def verify_witness(s: FiniteSemigroup, hit: CriterionHit) -> bool:
    """Re-check a witness from first principles; malformed payloads give False."""
    check = _VERIFIERS.get(hit.criterion_id)
    if check is None:
        return False
    try:
        return bool(check(s, hit.witness))
    except (KeyError, IndexError, TypeError, ValueError):
        return False
