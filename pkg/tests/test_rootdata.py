from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from levirep.errors import BadIndex, ParseError, RankMismatch, UnsupportedRank
from levirep.rootdata import (Parabolic, WeylElement, apply, build_root_system, dot,
                              element_from_word, longest_element, minimal_coset_reps,
                              parse_element, parse_parabolic, simple_reflection, weyl_group)

GROUPS = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4)]
ORDERS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48,
          ("C", 2): 8, ("C", 3): 48, ("D", 3): 24, ("D", 4): 192}


def test_c2_data():
    rs = build_root_system("C", 2)
    assert rs.simple_root(1) == (1, -1)
    assert rs.simple_root(2) == (0, 2)
    assert rs.fundamental_weight(1) == (1, 0)
    assert rs.fundamental_weight(2) == (1, 1)


def test_a1_data():
    rs = build_root_system("A", 1)
    assert rs.coord_dim == 2
    assert rs.simple_roots == ((1, -1),)


def test_d4_spin_weight():
    rs = build_root_system("D", 4)
    assert rs.fundamental_weight(4) == (Fraction(1, 2),) * 4


@pytest.mark.parametrize("family,rank", GROUPS)
def test_weights_dual_to_coroots(family, rank):
    rs = build_root_system(family, rank)
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            pairing = dot(rs.fundamental_weight(i), rs.coroot(rs.simple_root(j)))
            assert pairing == (1 if i == j else 0)


@pytest.mark.parametrize("family,rank", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 6)])
def test_rank_bounds(family, rank):
    with pytest.raises(UnsupportedRank):
        build_root_system(family, rank)


def test_degenerate_ranks_on_request():
    assert build_root_system("C", 1, degenerate_ok=True).rank == 1
    assert build_root_system("D", 2, degenerate_ok=True).coord_dim == 2


def test_reflection_actions():
    a2 = build_root_system("A", 2)
    assert apply(simple_reflection(a2, 1), (1, 0, 0)) == (0, 1, 0)
    c3 = build_root_system("C", 3)
    assert apply(simple_reflection(c3, 3), (0, 0, 1)) == (0, 0, -1)
    d4 = build_root_system("D", 4)
    assert apply(simple_reflection(d4, 4), (0, 0, 1, 0)) == (0, 0, 0, -1)


def test_lengths():
    c2 = build_root_system("C", 2)
    assert WeylElement.identity(c2).length == 0
    assert simple_reflection(c2, 1).length == 1
    assert longest_element(c2).length == 4


def test_reduced_words():
    a2 = build_root_system("A", 2)
    assert WeylElement.identity(a2).reduced_word == ()
    assert element_from_word(a2, (2, 1)).reduced_word == (2, 1)
    assert longest_element(a2).reduced_word == (1, 2, 1)


@pytest.mark.parametrize("family,rank", GROUPS)
def test_group_orders(family, rank):
    rs = build_root_system(family, rank)
    assert len(weyl_group(rs)) == ORDERS[(family, rank)]
    assert len(minimal_coset_reps(rs, ())) == ORDERS[(family, rank)]
    assert longest_element(rs).length == len(rs.positive_roots)


def test_grassmannian_cosets():
    a3 = build_root_system("A", 3)
    reps = minimal_coset_reps(a3, {1, 3})
    assert len(reps) == comb(4, 2)


def test_full_levi_has_only_identity():
    rs = build_root_system("B", 3)
    assert [w.is_identity() for w in minimal_coset_reps(rs, {1, 2, 3})] == [True]


def test_c2_coset_lengths():
    c2 = build_root_system("C", 2)
    assert sorted(w.length for w in minimal_coset_reps(c2, {2})) == [0, 1, 2, 3]


@pytest.mark.parametrize("family,rank", [("B", 3), ("C", 3), ("D", 4)])
def test_isotropic_grassmannian_counts(family, rank):
    rs = build_root_system(family, rank)
    for r in range(1, rank - 1):
        # |W^P| for P_r is binom(n, r) 2^r when the Levi is GL_r x (classical)
        assert len(minimal_coset_reps(rs, Parabolic.maximal(rs, r))) == comb(rank, r) * 2 ** r


@pytest.mark.parametrize("family,rank", GROUPS)
def test_coset_reps_are_minimal(family, rank):
    rs = build_root_system(family, rank)
    for r in range(1, rank + 1):
        par = Parabolic.maximal(rs, r)
        for w in minimal_coset_reps(rs, par):
            for i in par.simple:
                assert (w * simple_reflection(rs, i)).length == w.length + 1


@pytest.mark.parametrize("family,rank", GROUPS)
def test_braid_relations(family, rank):
    rs = build_root_system(family, rank)
    for i in range(1, rank + 1):
        si = simple_reflection(rs, i)
        assert (si * si).is_identity()
        for j in range(i + 1, rank + 1):
            a, b = rs.simple_root(i), rs.simple_root(j)
            cij = dot(a, rs.coroot(b)) * dot(b, rs.coroot(a))
            m = {0: 2, 1: 3, 2: 4, 3: 6}[int(cij)]
            w = si * simple_reflection(rs, j)
            p = w
            for _ in range(m - 1):
                p = p * w
            assert p.is_identity()


def test_type_d_sign_rule():
    with pytest.raises(ValueError):
        WeylElement((-1, 2, 3), "D", 3)
    with pytest.raises(ValueError):
        WeylElement((2, -1, 3), "A", 2)


def test_parsing():
    c3 = build_root_system("C", 3)
    w = parse_element(c3, "s3 s2")
    assert parse_element(c3, str(w)) == w
    assert parse_element(c3, w.word_str()) == w
    assert parse_element(c3, "e").is_identity()
    with pytest.raises(ParseError):
        parse_element(c3, "t1")
    with pytest.raises(RankMismatch):
        parse_element(c3, "[1,2]")
    assert parse_parabolic(c3, "maximal:2").simple == frozenset({1, 3})
    assert parse_parabolic(c3, "levi:1,3").label() == "maximal:2"
    assert parse_parabolic(build_root_system("D", 4), "levi:1,3").label() == "levi:1,3"
    assert parse_parabolic(c3, "borel").is_borel
    with pytest.raises(ParseError):
        parse_parabolic(c3, "parabolic")
    with pytest.raises(BadIndex):
        parse_parabolic(c3, "levi:4")


group_st = st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("D", 4)])


@settings(max_examples=60, deadline=None)
@given(group_st, st.data())
def test_length_properties(group, data):
    rs = build_root_system(*group)
    W = weyl_group(rs)
    u = data.draw(st.sampled_from(W))
    v = data.draw(st.sampled_from(W))
    assert (u * v).length <= u.length + v.length
    assert u.inverse().length == u.length
    assert len(u.reduced_word) == u.length
    assert element_from_word(rs, u.reduced_word) == u


@settings(max_examples=40, deadline=None)
@given(group_st, st.data())
def test_reflections_are_involutions(group, data):
    rs = build_root_system(*group)
    i = data.draw(st.integers(1, rs.rank))
    v = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.coord_dim, max_size=rs.coord_dim)))
    s = simple_reflection(rs, i)
    assert apply(s, apply(s, v)) == v
