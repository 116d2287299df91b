"""Facts established by exhaustive or sampled checking, including places where
a catalog entry as transcribed does not satisfy the identity it is listed under."""

import importlib.util
import itertools
import json
from pathlib import Path

import pytest

from rbwb.families import PINS, FamilySpec, family_instantiate, sweep_parameters
from rbwb.hopf import builtin_h4, is_coalgebra_hom
from rbwb.linalg import Mat
from rbwb.rbops import RBCandidate, check_algebra_rb, check_chrb, lie_rb_check
from rbwb.scalars import GF, QQ
from rbwb.search import SearchSpace, diff_against_family, enumerate_space

FIXTURES = Path(__file__).parent / "fixtures"


def inst(fid, ctx, **params):
    return family_instantiate(FamilySpec(fid, params, ctx))


def b0_family(ctx, a):
    col = (a, -a, -1, 0)
    return Mat.from_columns(ctx, [PINS["b0"]["1"], PINS["b0"]["g"], col, col])


def test_ma_regression_fixture_is_current():
    spec = importlib.util.spec_from_file_location("make_ma", FIXTURES / "make_ma_regression.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    recorded = json.loads((FIXTURES / "ma_regression.json").read_text())
    assert mod.build() == recorded
    bad = {fid for fid, r in recorded["families"].items() if r["Q"]["failed"] or r["GF(5)"]["failed"]}
    assert bad == {"ma_d", "ma_h"}
    for fid in bad:
        assert recorded["families"][fid]["GF(5)"]["first_failure"]["pair"]


def test_ma_d_holds_only_on_diagonal_p2_eq_p3():
    ctx = GF(5)
    A = builtin_h4(ctx).alg
    for lam, p1, p2, p3 in itertools.product(range(5), range(5), range(5), range(1, 5)):
        ok = check_algebra_rb(A, inst("ma_d", ctx, lam=lam, p1=p1, p2=p2, p3=p3))[0]
        assert ok == (p2 == p3)


def test_ma_d_with_p2_in_x_coefficient_always_holds():
    ctx = GF(7)
    A = builtin_h4(ctx).alg
    for lam, p1, p2, p3 in itertools.product(range(7), range(7), range(7), range(1, 7)):
        R = inst("ma_d", ctx, lam=lam, p1=p1, p2=p2, p3=p3)
        M = R.op.data.copy()
        M[2, 2] = ctx.raw(-(2 * lam + p1 + p2))
        assert check_algebra_rb(A, RBCandidate(Mat(ctx, M), lam))[0]


def test_ma_h_holds_only_when_lam_or_p1_vanishes():
    for p in (5, 7):
        ctx = GF(p)
        A = builtin_h4(ctx).alg
        for lam, p1, p2 in itertools.product(range(p), repeat=3):
            ok = check_algebra_rb(A, inst("ma_h", ctx, lam=lam, p1=p1, p2=p2))[0]
            assert ok == (lam == 0 or p1 == 0)


def test_ma_h_with_flipped_p1_sign_always_holds():
    ctx = GF(7)
    A = builtin_h4(ctx).alg
    for lam, p1, p2 in itertools.product(range(7), repeat=3):
        M = inst("ma_h", ctx, lam=lam, p1=p1, p2=p2).op.data.copy()
        M[3, 1] = ctx.raw(-p1)
        assert check_algebra_rb(A, RBCandidate(Mat(ctx, M), lam))[0]


@pytest.mark.parametrize("fid", ["ma_a", "ma_b", "ma_c", "ma_e", "ma_f", "ma_g"])
def test_other_ma_families_hold_over_gf7(fid):
    ctx = GF(7)
    A = builtin_h4(ctx).alg
    for v in sweep_parameters(fid, ctx):
        assert check_algebra_rb(A, family_instantiate(FamilySpec(fid, v, ctx)))[0]


def test_b0_chrb_set_over_rationals():
    H = builtin_h4(QQ)
    for a in (0, 1, -3, QQ("5/7")):
        assert check_chrb(H, b0_family(QQ, QQ(a)))[0]
    zero = Mat.from_columns(QQ, [PINS["b0"]["1"], PINS["b0"]["g"], (0,) * 4, (0,) * 4])
    assert check_chrb(H, zero)[0]


@pytest.mark.parametrize("p,b0,bm1", [(2, 8, 8), (3, 4, 3), (5, 6, 5), (7, 8, 7)])
def test_chrb_counts(p, b0, bm1):
    H = builtin_h4(GF(p))
    assert enumerate_space(SearchSpace(H, GF(p), PINS["b0"], "chrb")).count == b0
    assert enumerate_space(SearchSpace(H, GF(p), PINS["bm1"], "chrb")).count == bm1


def test_gf3_differences_against_catalog():
    ctx = GF(3)
    H = builtin_h4(ctx)
    found = enumerate_space(SearchSpace(H, ctx, PINS["b0"], "chrb")).candidates
    d = diff_against_family(found, ["t41_a", "t41_b"], ctx)
    assert (len(d.found_only), len(d.family_only), len(d.both)) == (3, 14, 1)
    found = enumerate_space(SearchSpace(H, ctx, PINS["bm1"], "chrb")).candidates
    d = diff_against_family(found, ["t42_a", "t42_b", "t42_c"], ctx)
    assert (len(d.found_only), len(d.family_only), len(d.both)) == (0, 4, 3)


def test_t41_a_not_a_coalgebra_map_nor_chrb():
    H = builtin_h4(QQ)
    B = inst("t41_a", QQ, a1=1, a3=0).op
    ok, w = is_coalgebra_hom(H, B)
    assert not ok and w["element"] == "x"
    gg = next(d for d in w["differences"] if d["tensor"] == "g⊗g")
    assert (gg["delta_of_B"], gg["B_tensor_B_of_delta"]) == ("1", "0")
    ok, bad = check_chrb(H, B)
    assert not ok and bad[0]["pair"] == ("x", "1")


def test_char2_member_is_chrb_but_not_coalgebra_map():
    H = builtin_h4(GF(2))
    B = inst("t41_char2", GF(2), a1=1, a3=0, a4=0).op
    assert check_chrb(H, B)[0]
    assert not is_coalgebra_hom(H, B)[0]


def test_identity_fails_chrb_at_g_x():
    H = builtin_h4(QQ)
    ok, bad = check_chrb(H, H.identity())
    assert not ok and ("g", "x") in [b["pair"] for b in bad]


@pytest.mark.parametrize("fid,params", [("b0_lie_1", {"a": 1}), ("b0_lie_2", {"a1": 0, "a3": 1})])
def test_b0_lie_families_need_matching_weight(fid, params):
    B = inst(fid, QQ, **params).op
    matching = params.get("a", params.get("a3"))
    for lam in (-2, -1, 0, 1, 2, 3):
        assert lie_rb_check(QQ, B, lam)[0] == (lam == matching)


def test_lie_2_wrong_weight_witnesses():
    ok, bad = lie_rb_check(QQ, inst("lie_2", QQ, a=1).op, 0)
    pairs = {b["pair"] for b in bad}
    assert not ok and {("x", "g"), ("g", "x"), ("g", "gx"), ("gx", "g")} <= pairs


def test_gf2_searches_without_pins():
    ctx = GF(2)
    H = builtin_h4(ctx)
    assert enumerate_space(SearchSpace(H, ctx, {}, "nchrb")).count == 5
    members = {inst(fid, ctx, lam=1).op.key() for fid in ("ma_a", "ma_b", "ma_c")}
    found = {m.key() for m in enumerate_space(SearchSpace(H.alg, ctx, {}, "algebra_rb", 1)).matrices}
    assert members <= found


def test_gf2_chrb_without_pins():
    ctx = GF(2)
    found = enumerate_space(SearchSpace(builtin_h4(ctx), ctx, {}, "chrb")).matrices
    fixes_one = [m for m in found if m.column(0).entries == [ctx(1), ctx(0), ctx(0), ctx(0)]]
    assert (len(found), len(fixes_one)) == (786, 50)
