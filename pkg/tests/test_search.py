import itertools

import pytest

from rbwb.errors import FlavorMismatch, ParseError, SpaceTooLarge
from rbwb.families import PINS, family_members
from rbwb.hopf import builtin_h4
from rbwb.linalg import Mat
from rbwb.rbops import check_algebra_rb, check_chrb, RBCandidate
from rbwb.search import SearchSpace, diff_against_family, enumerate_space, parse_pins
from rbwb.scalars import GF, QQ

GF2, GF3 = GF(2), GF(3)


def space(ctx, pins, predicate="chrb", weight=None, hopf=True):
    H = builtin_h4(ctx)
    return SearchSpace(H if hopf else H.alg, ctx, pins, predicate, weight)


def test_parse_pins():
    A = builtin_h4(GF3).alg
    pins = parse_pins(A, "1->1, g->1 - g")
    assert pins["g"].entries == [GF3(1), GF3(-1), GF3(0), GF3(0)]
    assert parse_pins(A, "  ") == {}
    for bad in ("1=1", "y->1", "1->z"):
        with pytest.raises(ParseError):
            parse_pins(A, bad)


def test_space_validation():
    with pytest.raises(SpaceTooLarge):
        space(QQ, {})
    with pytest.raises(SpaceTooLarge):
        space(GF(5), {}, "algebra_rb", 1)  # 5^16 > 10^8
    with pytest.raises(FlavorMismatch):
        space(GF2, {}, "chrb", hopf=False)
    with pytest.raises(FlavorMismatch):
        space(GF2, {}, "algebra_rb")
    with pytest.raises(FlavorMismatch):
        SearchSpace(builtin_h4(GF3), GF2, {}, "chrb")
    S = space(GF3, PINS["b0"])
    assert S.size() == 3 ** 8 and len(S.free_entries()) == 8
    assert S.describe()["pins"] == {"1": "1", "g": "1"}


@pytest.mark.parametrize("pins,fid", [("b0", "t41_char2"), ("bm1", "t42_char2")])
def test_char2_completeness(pins, fid):
    res = enumerate_space(space(GF2, PINS[pins]))
    assert res.count == 8
    assert diff_against_family(res.candidates, fid, GF2).empty


def test_gf3_bm1_is_t42_a():
    res = enumerate_space(space(GF3, PINS["bm1"]))
    assert {m.key() for m in res.matrices} == {m.key() for m in family_members("t42_a", GF3)}


def test_gf3_b0_set():
    # {0} together with a - ag - x on both nilpotent basis elements
    res = enumerate_space(space(GF3, PINS["b0"]))
    expected = {Mat.from_columns(GF3, [(1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)]).key()}
    for a in range(3):
        col = (a, -a, -1, 0)
        expected.add(Mat.from_columns(GF3, [(1, 0, 0, 0), (1, 0, 0, 0), col, col]).key())
    assert {m.key() for m in res.matrices} == expected


def test_brute_force_oracle_agrees():
    # independent scan with the plain checker on a small pinned space
    ctx = GF2
    H = builtin_h4(ctx)
    pins = {"1": (1, 0, 0, 0), "g": (0, 1, 0, 0), "x": (0, 0, 0, 0)}
    found = enumerate_space(SearchSpace(H, ctx, pins, "chrb"))
    brute = set()
    for col in itertools.product(range(2), repeat=4):
        m = Mat.from_columns(ctx, [pins["1"], pins["g"], pins["x"], col])
        if check_chrb(H, m)[0]:
            brute.add(m.key())
    assert {m.key() for m in found.matrices} == brute


def test_algebra_rb_gf2_counts():
    assert enumerate_space(space(GF2, {}, "algebra_rb", 1, hopf=False)).count == 52
    assert enumerate_space(space(GF2, {}, "algebra_rb", 0, hopf=False)).count == 80


def test_order_and_jobs_do_not_change_the_set():
    S = space(GF3, PINS["b0"])
    ref = [m.key() for m in enumerate_space(S).matrices]
    rev = list(reversed(range(8)))
    assert [m.key() for m in enumerate_space(S, order=rev).matrices] == ref
    assert [m.key() for m in enumerate_space(S, jobs=3).matrices] == ref
    with pytest.raises(ValueError):
        enumerate_space(S, order=[0, 0, 1, 2, 3, 4, 5, 6])


def test_results_are_reverified():
    S = space(GF2, {}, "algebra_rb", 1, hopf=False)
    for c in enumerate_space(S).candidates[:10]:
        assert check_algebra_rb(S.algebra, c)[0]
        assert isinstance(c, RBCandidate) and c.weight == GF2(1)


def test_planted_diff():
    res = enumerate_space(space(GF2, PINS["b0"]))
    members = family_members("t41_char2", GF2)
    d = diff_against_family(res.candidates, "t41_char2", GF2, members=members[1:])
    assert not d.empty
    assert [m.key() for m in d.found_only] == [members[0].key()]
    rep = d.to_report(["1", "g", "x", "gx"])
    assert [c.passed for c in rep.checks] == [False, True, True]


def test_nchrb_search_gf2():
    assert enumerate_space(space(GF2, {}, "nchrb")).count == 5
