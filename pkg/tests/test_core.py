from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from semidual.catalog import catalog, cyclic_group, nilpotent_cyclic
from semidual.core import (FiniteSemigroup, direct_product, find_embedding, format_table_text,
                           generate_subsemigroup, idempotents, is_embedding, is_isomorphic,
                           is_proper_k_nilpotent, monogenic_profile, nilpotency_degree,
                           omega_plus, parse_and_validate, parse_table_text, power, power_ideal,
                           product as prod, rees_quotient, semigroup_index_period, zero_element)
from semidual.errors import NotAnIdeal, NotAssociative, OutOfRangeEntry, TableFormatError

from conftest import semigroups


def el(s, label):
    return s.index(label)


# parsing ---------------------------------------------------------------------

def test_c121_table_parses(cat):
    s = cat["C121"]
    one, a, z = (el(s, x) for x in "1a0")
    assert s.order == 3
    assert prod(s, a, a) == z and prod(s, one, a) == a == prod(s, a, one)


def test_trivial_table():
    assert parse_and_validate([[0]]).order == 1


def test_nonassociative_reports_first_triple():
    with pytest.raises(NotAssociative) as info:
        parse_and_validate([[1, 0], [0, 0]])
    x, y, z = info.value.triple
    t = [[1, 0], [0, 0]]
    assert t[t[x][y]][z] != t[x][t[y][z]]
    # lexicographically first failing triple
    first = next(tr for tr in product(range(2), repeat=3)
                 if t[t[tr[0]][tr[1]]][tr[2]] != t[tr[0]][t[tr[1]][tr[2]]])
    assert info.value.triple == first


@pytest.mark.parametrize("raw", [[[0, 2], [0, 0]], [[0, -1], [0, 0]]])
def test_out_of_range(raw):
    with pytest.raises(OutOfRangeEntry):
        parse_and_validate(raw)


def test_ragged_table():
    with pytest.raises(TableFormatError):
        parse_and_validate([[0, 0], [0]])


def test_text_round_trip(cat):
    for s in cat.values():
        assert parse_table_text(format_table_text(s)) == s


def test_text_without_labels():
    s = parse_table_text("2\n0 0\n0 1\n")
    assert s.labels is None and s.table == ((0, 0), (0, 1))


@pytest.mark.parametrize("text", ["", "x\n", "2\n0 0\n", "2\n0 0\n0 a\n", "2\n0 0\n0 1\nu\n",
                                  "2\n0 0\n0 1\nu v\nextra\n"])
def test_text_format_errors(text):
    with pytest.raises(TableFormatError):
        parse_table_text(text)


# arithmetic -----------------------------------------------------------------

def test_products_in_p(cat):
    p = cat["P"]
    assert prod(p, el(p, "e"), el(p, "a")) == el(p, "a")
    assert prod(p, el(p, "a"), el(p, "e")) == el(p, "0")


def test_powers(cat):
    s = cat["C121"]
    a, z = el(s, "a"), el(s, "0")
    assert power(s, a, 2) == z and power(s, a, 5) == z and power(s, a, 1) == a
    c2 = cyclic_group(2)
    assert power(c2, 1, 2) == 0


def test_profiles(cat):
    m = cat["mono43"]
    assert monogenic_profile(m, el(m, "a")) == type(monogenic_profile(m, 0))(
        el(m, "a"), 3, 1, el(m, "a3"))
    s = cat["C121"]
    p = monogenic_profile(s, el(s, "a"))
    assert (p.index_i, p.period_p, p.omega_power) == (2, 1, el(s, "0"))
    g = cyclic_group(6)
    for x in g.elements:
        p = monogenic_profile(g, x)
        assert p.index_i == 1 and p.omega_power == 0
    assert monogenic_profile(g, 1).period_p == 6


def test_index_period(cat):
    assert semigroup_index_period(cat["C121"]) == (2, 1)
    assert semigroup_index_period(cat["mono43"]) == (3, 1)
    assert semigroup_index_period(cat["S3"]) == (1, 6)
    assert semigroup_index_period(cat["Q8"]) == (1, 4)


def test_idempotents(cat):
    s = cat["C121"]
    assert idempotents(s) == {el(s, "1"), el(s, "0")}
    assert len(idempotents(cat["L1"])) == 3
    for name in ("S3", "D4", "Q8", "C6"):
        assert len(idempotents(cat[name])) == 1


def test_generate(cat):
    s = cat["C121"]
    assert generate_subsemigroup(s, {el(s, "a")}) == {el(s, "a"), el(s, "0")}
    b2 = cat["B2"]
    assert generate_subsemigroup(b2, {el(b2, "(1,1,2)"), el(b2, "(2,1,1)")}) == set(b2.elements)


def test_direct_product(cat):
    pq = direct_product(cat["P"], cat["Q"])
    assert pq.order == 9
    l1 = cat["L1"]
    assert len(idempotents(direct_product(l1, l1))) == 9
    assert is_isomorphic(direct_product(l1, cat["trivial"]), l1)


def test_rees_quotients(cat):
    s = cat["C121"]
    q, _ = rees_quotient(s, {el(s, "0")})
    assert is_isomorphic(q, s)
    m = cat["mono43"]
    q, _ = rees_quotient(m, {el(m, "a3")})
    assert q.order == 3 and is_proper_k_nilpotent(q, 3)
    q, _ = rees_quotient(m, set(m.elements))
    assert q.order == 1


def test_not_an_ideal(cat):
    s = cat["C121"]
    with pytest.raises(NotAnIdeal) as info:
        rees_quotient(s, {el(s, "a")})
    x, y, p = info.value.witness
    assert p not in {el(s, "a")}


def test_nilpotence_examples(cat):
    assert is_proper_k_nilpotent(cat["nil3x"], 3)
    assert is_proper_k_nilpotent(cat["nil3"], 3)
    for k in range(2, 6):
        assert not is_proper_k_nilpotent(cat["C121"], k)
    assert is_proper_k_nilpotent(cat["null2"], 2)
    assert not is_proper_k_nilpotent(cat["null2"], 3)
    assert nilpotency_degree(nilpotent_cyclic(5)) == 5
    assert nilpotency_degree(cat["C121"]) is None


def test_embeddings(cat):
    l1 = cat["L1"]
    assert find_embedding(l1, l1) == {x: x for x in l1.elements}
    for g in ("S3", "D4", "Q8", "C6"):
        assert find_embedding(cat["C121"], cat[g]) is None
    m, p = cat["M"], cat["P"]
    f = find_embedding(p, m)
    assert is_embedding(p, m, f)
    assert {m.label(v) for v in f.values()} == {"a", "e", "0"}
    assert not is_isomorphic(cat["L1"], cat["R1"])
    assert is_isomorphic(FiniteSemigroup(((0,),)), cat["trivial"])


def test_broken_embedding_rejected(cat):
    m, p = cat["M"], cat["P"]
    f = find_embedding(p, m)
    f[0], f[1] = f[1], f[0]
    assert not is_embedding(p, m, f)


def _brute_isomorphic(s, t):
    from itertools import permutations
    if s.order != t.order:
        return False
    return any(all(p[s.table[x][y]] == t.table[p[x]][p[y]]
                   for x in s.elements for y in s.elements)
               for p in permutations(range(t.order)))


# properties -----------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(semigroups)
def test_associative(s):
    n = s.order
    t = s.table
    assert all(t[t[x][y]][z] == t[x][t[y][z]] for x, y, z in product(range(n), repeat=3))


@settings(max_examples=150, deadline=None)
@given(semigroups, st.data())
def test_profile_laws(s, data):
    x = data.draw(st.sampled_from(list(s.elements)))
    p = monogenic_profile(s, x)
    w = p.omega_power
    assert s.mul(w, w) == w
    for i in range(1, p.index_i + 3):
        for k in range(1, 2 * p.period_p + 1):
            same = power(s, x, i) == power(s, x, i + k)
            assert same == (i >= p.index_i and k % p.period_p == 0)
    for i in range(-3, 4):
        for j in range(-3, 4):
            assert s.mul(omega_plus(s, x, i), omega_plus(s, x, j)) == omega_plus(s, x, i + j)


@settings(max_examples=150, deadline=None)
@given(semigroups, st.data())
def test_generated_subsemigroup_minimal(s, data):
    gens = set(data.draw(st.lists(st.sampled_from(list(s.elements)), min_size=1, max_size=2)))
    sub = generate_subsemigroup(s, gens)
    assert gens <= sub
    assert all(s.mul(x, y) in sub for x in sub for y in sub)
    # every member is a product of generators
    words = set(gens)
    while True:
        more = {s.mul(x, g) for x in words for g in gens} - words
        if not more:
            break
        words |= more
    assert words == sub


@settings(max_examples=60, deadline=None)
@given(semigroups, semigroups)
def test_isomorphism_matches_brute_force(s, t):
    if s.order == t.order and s.order <= 5:
        assert is_isomorphic(s, t) == _brute_isomorphic(s, t)


@settings(max_examples=80, deadline=None)
@given(semigroups)
def test_cube_quotient_of_nilpotent(s):
    z = zero_element(s)
    k = nilpotency_degree(s)
    if k is not None and k > 3:
        q, _ = rees_quotient(s, power_ideal(s, 3))
        assert is_proper_k_nilpotent(q, 3)


def test_cube_quotient_of_long_nilpotent():
    for k in (4, 5, 6):
        s = nilpotent_cyclic(k)
        assert is_proper_k_nilpotent(s, k)
        q, _ = rees_quotient(s, power_ideal(s, 3))
        assert is_proper_k_nilpotent(q, 3)
