import pytest
from hypothesis import given, strategies as st

from rbwb.algebra import group_algebra
from rbwb.errors import DimensionMismatch
from rbwb.families import FamilySpec, family_instantiate
from rbwb.groups import cyclic
from rbwb.hopf import builtin_h4, group_hopf, is_coalgebra_hom
from rbwb.linalg import Mat
from rbwb.rbops import (
    RBCandidate,
    algebra_rb_defect,
    check_algebra_rb,
    check_chrb,
    chrb_defect,
    jordan_rb_check,
    lie_rb_check,
    nchrb_check,
)
from rbwb.scalars import GF, QQ

ints = st.integers(-3, 3)


def op(ctx, name, **params):
    return family_instantiate(FamilySpec(name, params, ctx))


def columns(ctx, cols):
    return Mat.from_columns(ctx, cols)


def test_ma_a_at_weight_one():
    A = builtin_h4(QQ).alg
    R = op(QQ, "ma_a", lam=1)
    assert check_algebra_rb(A, R) == (True, [])
    for i in range(4):
        for j in range(4):
            assert algebra_rb_defect(A, R, i, j).is_zero()


def test_zero_and_identity(field):
    A = builtin_h4(field).alg
    zero = Mat.zeros(field, 4, 4)
    for lam in (0, 1, 3):
        assert check_algebra_rb(A, RBCandidate(zero, lam))[0]
    I = Mat.identity(field, 4)
    assert check_algebra_rb(A, RBCandidate(I, -1))[0]
    if field.characteristic != 2:
        ok, w = check_algebra_rb(A, RBCandidate(I, 0))
        assert not ok and w[0]["pair"] == ("1", "1")


@given(st.lists(ints, min_size=16, max_size=16), ints)
def test_scaling_property(entries, c):
    # if R is RB of weight lam then cR is RB of weight c*lam
    ctx = GF(5)
    A = builtin_h4(ctx).alg
    R = Mat(ctx, ctx.array([entries[4 * r:4 * r + 4] for r in range(4)]))
    for lam in range(5):
        if check_algebra_rb(A, RBCandidate(R, lam))[0]:
            assert check_algebra_rb(A, RBCandidate(R.scale(c), c * lam))[0]


def test_weight_required():
    A = builtin_h4(QQ).alg
    with pytest.raises(ValueError):
        check_algebra_rb(A, RBCandidate(Mat.identity(QQ, 4)))
    with pytest.raises(DimensionMismatch):
        check_algebra_rb(A, RBCandidate(Mat.identity(QQ, 3), 1))


def test_lie_and_jordan_brackets_lift():
    for name, params in (("ma_a", {"lam": 2}), ("ma_c", {"lam": -1}),
                         ("ma_g", {"lam": 1, "p1": 2, "p2": 3})):
        R = op(QQ, name, **params)
        assert check_algebra_rb(builtin_h4(QQ).alg, R)[0]
        assert lie_rb_check(QQ, R.op, R.weight)[0]
        assert jordan_rb_check(QQ, R.op, R.weight)[0]


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5), GF(7)], ids=str)
def test_t42_a_is_chrb(field):
    H = builtin_h4(field)
    B = op(field, "t42_a", a=1).op
    assert check_chrb(H, B) == (True, [])
    assert is_coalgebra_hom(H, B)[0]
    for i in range(4):
        for j in range(4):
            assert chrb_defect(H, B, i, j).is_zero()


def test_identity_is_not_chrb(h4q):
    ok, w = check_chrb(h4q, h4q.identity())
    assert not ok
    assert ("g", "x") in [x["pair"] for x in w]


def test_group_operator_lifts_on_kc2():
    G = cyclic(2)
    H = group_hopf(G, GF(3))
    for m in ((0, 0), (0, 1)):
        B = Mat.from_columns(GF(3), [[int(r == m[c]) for r in range(2)] for c in range(2)])
        assert check_chrb(H, B)[0]
        assert check_algebra_rb(group_algebra(G, GF(3)), RBCandidate(B, -1))[0]


def test_nchrb_examples(h4q):
    rep = nchrb_check(h4q, h4q.identity())
    assert [c.passed for c in rep.checks] == [True, True, False]
    rep = nchrb_check(h4q, Mat.zeros(QQ, 4, 4))
    assert not rep.checks[0].passed
    # x and gx sent to zero, B0 on group-likes
    B = columns(QQ, [(1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)])
    assert nchrb_check(h4q, B).passed
    rep = nchrb_check(h4q, op(QQ, "t42_a", a=1).op)
    assert [c.passed for c in rep.checks] == [True, False, True]


def test_nchrb_on_cocommutative_group_algebra():
    H = group_hopf(cyclic(2), GF(3))
    rep = nchrb_check(H, H.identity())
    assert rep.checks[0].passed
    assert len(rep.checks) == 3


def test_describe():
    R = op(QQ, "ma_a", lam=1)
    d = R.describe(["1", "g", "x", "gx"])
    assert d["x"] == "-x" and d["1"] == "0"
