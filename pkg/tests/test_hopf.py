import pytest

from rbwb.errors import ConstraintViolated, DimensionMismatch, KTooLarge, UnknownGenerator
from rbwb.groups import builtin_group
from rbwb.hopf import (
    PresentedHopf,
    builtin_h4,
    check_hopf_axioms,
    check_presented_hom,
    group_hopf,
    is_coalgebra_hom,
    is_cocommutative,
    sweedler_legs,
    uq_sl2,
)
from rbwb.algebra import mul_vec
from rbwb.linalg import Mat, tensor_labels
from rbwb.scalars import GF, QQ

STANDARD_IMAGES = {"K": "g", "E": "gx", "F": "x", "Kinv": "g"}


def test_h4_hopf_axioms(field):
    rep = check_hopf_axioms(builtin_h4(field))
    assert rep.passed, rep.render_table()
    assert len(rep.checks) == 5


def test_antipode_order_four(field):
    H = builtin_h4(field)
    S = H.antipode
    I = H.identity()
    assert S ** 4 == I
    A, g = H.alg, H.alg.element("g")
    for i in range(4):
        b = A.basis(i)
        assert S ** 2 @ b == mul_vec(A, mul_vec(A, g, b), g)  # g = g^-1
    if field.characteristic != 2:
        assert S ** 2 != I


def test_coproduct_values(h4q):
    L2 = tensor_labels(h4q.labels, 2)
    L3 = tensor_labels(h4q.labels, 3)
    x = h4q.alg.element("x")
    assert (h4q.delta @ x).pretty(L2) == "g⊗x + x⊗1"
    assert sweedler_legs(h4q, 3, x).pretty(L3) == "g⊗g⊗x + g⊗x⊗1 + x⊗1⊗1"


def test_sweedler_left_equals_right(field):
    H = builtin_h4(field)
    for k in range(1, 6):
        assert H.iterated_delta(k, "left") == H.iterated_delta(k, "right")
    with pytest.raises(KTooLarge):
        H.iterated_delta(6)
    assert H.legs_tensor(5).shape == (4,) * 6


def test_cocommutativity():
    ok, witness = is_cocommutative(builtin_h4(QQ))
    assert not ok and witness == "x"
    assert is_cocommutative(group_hopf(builtin_group("S3"), GF(3)))[0]


def test_group_hopf_axioms():
    for name in ("C2", "V4", "S3"):
        assert check_hopf_axioms(group_hopf(builtin_group(name), GF(5))).passed


def test_coalgebra_hom(h4q):
    assert is_coalgebra_hom(h4q, h4q.identity()) == (True, None)
    ok, w = is_coalgebra_hom(h4q, Mat.zeros(QQ, 4, 4))
    assert not ok and w["condition"] == "εB = ε" and w["element"] == "1"
    with pytest.raises(DimensionMismatch):
        is_coalgebra_hom(h4q, Mat.identity(QQ, 3))


def test_uq_sl2_to_h4():
    rep = check_presented_hom(uq_sl2(GF(5), 2), builtin_h4(GF(5)), STANDARD_IMAGES)
    assert rep.passed, rep.render_table()


def test_uq_sl2_planted_failure():
    rep = check_presented_hom(uq_sl2(GF(5), 2), builtin_h4(GF(5)),
                              {**STANDARD_IMAGES, "E": "x"})
    assert rep.verdict == "partial"
    assert {c.name for c in rep.failures()} == {"Δ(E)", "S(E)"}
    assert rep.check("relation K E Kinv = q^2 E").passed


def test_uq_sl2_over_other_fields():
    # q^2 = -1 is what makes K E K^-1 = q^2 E hold with K -> g, E -> gx
    assert check_presented_hom(uq_sl2(GF(13), 5), builtin_h4(GF(13)), STANDARD_IMAGES).passed
    assert not check_presented_hom(uq_sl2(GF(7), 3), builtin_h4(GF(7)), STANDARD_IMAGES).passed


def test_presentation_errors():
    with pytest.raises(ConstraintViolated):
        uq_sl2(GF(5), 0)
    with pytest.raises(ConstraintViolated):
        uq_sl2(GF(5), 1)
    P = uq_sl2(GF(5), 2)
    H = builtin_h4(GF(5))
    with pytest.raises(UnknownGenerator):
        check_presented_hom(P, H, {**STANDARD_IMAGES, "Z": "g"})
    with pytest.raises(UnknownGenerator):
        check_presented_hom(P, H, {"K": "g"})
    with pytest.raises(UnknownGenerator):
        PresentedHopf(GF(5), ["a"], [("bad", [(GF(5).one, ("b",))])],
                      {"a": []}, {"a": GF(5).one}, {"a": []})
