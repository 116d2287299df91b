import pytest

from rbwb.errors import ConstraintViolated, WrongCharacteristic
from rbwb.families import (
    FAMILIES,
    FamilySpec,
    family_instantiate,
    family_members,
    get_family,
    sample_parameters,
    survey_family,
    sweep_parameters,
)
from rbwb.hopf import builtin_h4, is_coalgebra_hom
from rbwb.rbops import check_algebra_rb
from rbwb.scalars import GF, QQ

LABELS = ["1", "g", "x", "gx"]


def images(cand):
    return cand.describe(LABELS)


def test_ma_h_instance():
    R = family_instantiate(FamilySpec("ma_h", {"lam": 2, "p1": 0, "p2": 0}, QQ))
    d = images(R)
    assert d["1"] == "1 - g"
    assert d["x"] == "-x - gx"
    assert R.weight == QQ(2)


def test_t42_char2_instance():
    B = family_instantiate(FamilySpec("t42_char2", {"a1": 1, "a3": 1, "a4": 1}, GF(2)))
    d = images(B)
    assert d["x"] == d["gx"] == "1 + g + x + gx"
    assert d["1"] == "1" and d["g"] == "g"
    assert B.weight is None


def test_pins_of_hopf_families():
    for fid, fam in FAMILIES.items():
        if fam.kind in ("chrb", "lie"):
            ctx = GF(2) if fam.char == "2" else GF(5)
            for m in family_members(fid, ctx):
                col0, col1 = m.column(0).entries, m.column(1).entries
                assert col0 == [ctx(1), ctx(0), ctx(0), ctx(0)]
                assert col1 in ([ctx(1), ctx(0), ctx(0), ctx(0)], [ctx(0), ctx(1), ctx(0), ctx(0)])


def test_coalgebra_map_status():
    H = builtin_h4(QQ)
    for v in sample_parameters("t42_a", QQ, 5, seed=3):
        assert is_coalgebra_hom(H, family_instantiate(FamilySpec("t42_a", v, QQ)).op)[0]
    ok, w = is_coalgebra_hom(H, family_instantiate(FamilySpec("t42_b", {}, QQ)).op)
    assert not ok and w["element"] == "x"


def test_characteristic_and_constraints():
    with pytest.raises(WrongCharacteristic):
        family_instantiate(FamilySpec("t41_char2", {"a1": 1, "a3": 0, "a4": 0}, GF(3)))
    with pytest.raises(WrongCharacteristic):
        family_instantiate(FamilySpec("ma_h", {"lam": 1, "p1": 0, "p2": 0}, GF(2)))
    with pytest.raises(ConstraintViolated):
        family_instantiate(FamilySpec("ma_d", {"lam": 1, "p1": 1, "p2": 1, "p3": 0}, QQ))
    with pytest.raises(ConstraintViolated):
        family_instantiate(FamilySpec("ma_f", {"lam": 1, "p1": 0, "p2": -1}, QQ))
    with pytest.raises(ConstraintViolated):
        family_instantiate(FamilySpec("t42_a", {}, QQ))
    with pytest.raises(ConstraintViolated):
        family_instantiate(FamilySpec("t42_b", {"a": 1}, QQ))
    with pytest.raises(KeyError):
        get_family("nope")


def test_sampling_is_deterministic():
    a = sample_parameters("ma_g", QQ, 20, seed=11)
    assert a == sample_parameters("ma_g", QQ, 20, seed=11)
    assert a != sample_parameters("ma_g", QQ, 20, seed=12)
    assert all(not v["p2"].is_zero() for v in a)
    assert sample_parameters("t42_b", QQ, 20) == [{}]


def test_sweep_sizes():
    assert len(sweep_parameters("t41_a", GF(3))) == 9
    assert len(sweep_parameters("ma_d", GF(5))) == 5 ** 3 * 4
    assert len(family_members("t41_char2", GF(2))) == 8
    with pytest.raises(ValueError):
        sweep_parameters("t41_a", QQ)


def test_survey_reports_first_failure():
    alg = builtin_h4(GF(5)).alg
    res = survey_family("ma_h", GF(5), sweep_parameters("ma_h", GF(5)),
                        lambda c: check_algebra_rb(alg, c))
    assert res["points"] == 125 and res["failed"] > 0
    assert res["first_failure"]["pair"] == ["1", "1"]
    res = survey_family("ma_c", GF(5), sweep_parameters("ma_c", GF(5)),
                        lambda c: check_algebra_rb(alg, c))
    assert res["failed"] == 0 and res["first_failure"] is None


def test_summary_lists_parameters():
    s = get_family("ma_f").summary()
    assert s["params"] == ["lam", "p1", "p2"]
