from itertools import permutations, product

import pytest

from semidual.census import (CSV_HEADER, ISO, ISO_OR_ANTI, LABELED, canonical_form, census,
                             enumerate_semigroups, orbit_size, relabel, transpose)
from semidual.core import is_isomorphic

from conftest import iso_classes

# pinned after the exhaustive runs below
LABELED_COUNTS = {1: 1, 2: 8, 3: 113, 4: 3492}
ISO_COUNTS = {1: 1, 2: 5, 3: 24, 4: 188}
ISO_ANTI_COUNTS = {1: 1, 2: 4, 3: 18, 4: 126}


def brute_force_tables(n):
    """Every n x n table over 0..n-1, filtered by the plain associativity loop."""
    out = []
    for flat in product(range(n), repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in range(n)]
        if all(t[t[x][y]][z] == t[x][t[y][z]] for x, y, z in product(range(n), repeat=3)):
            out.append(tuple(tuple(r) for r in t))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    got = [s.table for s in enumerate_semigroups(n)]
    assert got == brute_force_tables(n)  # same set, same (lexicographic) order
    assert len(got) == LABELED_COUNTS[n]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts(n):
    assert sum(1 for _ in enumerate_semigroups(n)) == LABELED_COUNTS[n]
    assert len(iso_classes(n)) == ISO_COUNTS[n]
    assert sum(1 for _ in enumerate_semigroups(n, ISO_OR_ANTI)) == ISO_ANTI_COUNTS[n]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orbit_sizes_sum_to_labeled_count(n):
    assert sum(orbit_size(s.table) for s in iso_classes(n)) == LABELED_COUNTS[n]


def test_iso_classes_pairwise_distinct():
    classes = iso_classes(3)
    for i, s in enumerate(classes):
        for t in classes[i + 1:]:
            assert not is_isomorphic(s, t)


def test_deterministic_stream():
    a = [s.table for s in enumerate_semigroups(3, ISO)]
    b = [s.table for s in enumerate_semigroups(3, ISO)]
    assert a == b


def test_canonical_form_idempotent_and_invariant():
    for s in iso_classes(3):
        c = canonical_form(s.table)
        assert canonical_form(c) == c
        for p in permutations(range(3)):
            assert canonical_form(relabel(s.table, p)) == c
        anti = canonical_form(s.table, ISO_OR_ANTI)
        assert anti == canonical_form(transpose(s.table), ISO_OR_ANTI)


def test_order_guard():
    with pytest.raises(ValueError):
        next(enumerate_semigroups(5))
    with pytest.raises(ValueError):
        next(enumerate_semigroups(6, unbounded=True))
    with pytest.raises(ValueError):
        next(enumerate_semigroups(2, "bogus"))


def test_census_small():
    rec = census(1)
    assert rec.ind_flagged_fraction == 0 and rec.labeled_associative_count == 1
    rec = census(2)
    assert (rec.labeled_associative_count, rec.iso_class_count) == (8, 5)
    assert rec.proper_3_nilpotent_fraction == 0


def test_census_fractions_and_csv():
    r3, r4 = census(3), census(4)
    # one class of order 3 (x*x = e) and nine of order 4
    assert r3.proper_3_nilpotent_fraction == pytest.approx(1 / 24)
    assert r4.proper_3_nilpotent_fraction == pytest.approx(9 / 188)
    # over labeled tables the same classes account for 6/113 and 180/3492
    assert r3.labeled_proper_3_nilpotent_fraction == pytest.approx(6 / 113)
    assert r4.labeled_proper_3_nilpotent_fraction == pytest.approx(180 / 3492)
    for r in (r3, r4):
        assert 0 <= r.proper_3_nilpotent_fraction <= r.ind_flagged_fraction <= 1
        assert r.labeled_proper_3_nilpotent_fraction <= r.labeled_ind_flagged_fraction
    row = r4.csv_row().split(",")
    assert len(row) == len(CSV_HEADER.split(",")) and row[:3] == ["4", "3492", "188"]
