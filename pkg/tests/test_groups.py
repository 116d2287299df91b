import pytest
from hypothesis import given, strategies as st

from rbwb.errors import CandidateFails, HypothesisViolated, NotAnRBOperator, OrderTooLarge
from rbwb.groups import (
    BUILTIN_GROUPS,
    GroupRB,
    builtin_group,
    check_ga_rb,
    check_ga_structure,
    check_group_rb,
    cyclic,
    derived_group,
    enumerate_group_rb,
    exact_factorizations,
    ga_rb_from_factorization,
    image_kernel,
    satisfies_ga_hypotheses,
    subgroups,
    symmetric3,
    weight_flip,
)
from rbwb.scalars import GF, QQ

SMALL = [n for n in BUILTIN_GROUPS if builtin_group(n).n <= 6]

# (weight 1 operators, GA-RB operators) per small builtin group, by brute force
COUNTS = {"C2": (2, 2), "C3": (3, 2), "C4": (4, 2), "V4": (16, 8),
          "C5": (5, 2), "C6": (6, 4), "S3": (8, 4)}


@pytest.mark.parametrize("name", list(BUILTIN_GROUPS))
def test_builtin_tables_are_groups(name):
    G = builtin_group(name)
    assert G.validate().passed
    assert G.mul(G.id, 1) == 1


def test_subgroup_lattices():
    assert len(subgroups(symmetric3())) == 6
    assert len(subgroups(builtin_group("V4"))) == 5
    assert len(subgroups(builtin_group("Q8"))) == 6
    assert len(exact_factorizations(cyclic(6))) == 4


def test_c2_has_two_operators():
    ops = enumerate_group_rb(cyclic(2))
    assert [B.describe() for B in ops] == [{"e": "e", "a": "e"}, {"e": "e", "a": "a"}]


@pytest.mark.parametrize("name", SMALL)
def test_counts_and_ga_agreement(name):
    G = builtin_group(name)
    ops = enumerate_group_rb(G)
    ga = [B for B in ops if check_ga_rb(B, QQ, -1)[0]]
    made = {ga_rb_from_factorization(G, K, H).map
            for K, H in exact_factorizations(G) if satisfies_ga_hypotheses(G, K, H)}
    assert (len(ops), len(ga)) == COUNTS[name]
    assert {B.map for B in ga} == made
    for B in ga:
        assert check_ga_structure(B).passed


@pytest.mark.parametrize("name", SMALL)
def test_operator_consequences(name):
    G = builtin_group(name)
    for B in enumerate_group_rb(G):
        Im, ker = image_kernel(B)
        assert G.is_subgroup(Im) and G.is_subgroup(ker)
        _, rep = derived_group(B)
        assert rep.passed, rep.render_table()
        C = weight_flip(B)
        assert check_group_rb(C) == (True, None)


def test_weight_minus_one_counts_match():
    for name in SMALL:
        G = builtin_group(name)
        flipped = {weight_flip(B).map for B in enumerate_group_rb(G)}
        assert flipped == {C.map for C in enumerate_group_rb(G, -1)}


def test_wrong_weight_fails():
    G = symmetric3()
    for B in enumerate_group_rb(G):
        if check_ga_rb(B, QQ, -1)[0]:
            for lam in (0, 1, 2, QQ("1/2")):
                ok, w = check_ga_rb(B, QQ, lam)
                assert not ok and w["residue"]


def test_char2_weights_coincide():
    # over GF(2) the weights 1 and -1 are the same scalar
    G = builtin_group("V4")
    for B in enumerate_group_rb(G):
        assert check_ga_rb(B, GF(2), 1) == check_ga_rb(B, GF(2), -1)


def test_errors():
    with pytest.raises(OrderTooLarge):
        enumerate_group_rb(builtin_group("D4"))
    G = symmetric3()
    with pytest.raises(HypothesisViolated):
        # trivial-by-whole is exact but S3 is not commutative
        ga_rb_from_factorization(G, {G.id}, set(range(G.n)))
    with pytest.raises(NotAnRBOperator):
        derived_group(GroupRB(cyclic(3), (1, 1, 1)))
    with pytest.raises(ValueError):
        GroupRB(cyclic(2), (0, 2))
    with pytest.raises(KeyError):
        builtin_group("A5")


def test_weight_flip_rejects_non_operators():
    with pytest.raises((CandidateFails, ValueError)):
        weight_flip(GroupRB(cyclic(3), (1, 1, 1), -1))


@given(st.sampled_from(SMALL), st.data())
def test_random_maps_agree_with_enumeration(name, data):
    G = builtin_group(name)
    m = tuple(data.draw(st.lists(st.integers(0, G.n - 1), min_size=G.n, max_size=G.n)))
    found = {B.map for B in enumerate_group_rb(G)}
    assert check_group_rb(GroupRB(G, m))[0] == (m in found)
