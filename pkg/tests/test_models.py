from fractions import Fraction

import pytest

from conftest import q_integer
from cqgkhint.models import (
    DrinfeldJimboModel,
    FreeOrthogonalModel,
    InvalidModelError,
    QuantumAutomorphismModel,
    construct_model,
    parse_model_spec,
)

HALF = Fraction(1, 2)


# -- construction and validation ------------------------------------------------


def test_free_orthogonal_construction():
    model = FreeOrthogonalModel(3, Fraction(7, 2))
    assert not model.is_kac()
    kac = FreeOrthogonalModel(3, 3)
    assert kac.is_kac()


def test_quantum_automorphism_kac_boundary():
    # n1 = dimB - 1 = 3 is the Kac point; anything above is non-Kac
    assert QuantumAutomorphismModel(4, 3).is_kac()
    assert not QuantumAutomorphismModel(4, 4).is_kac()
    assert not QuantumAutomorphismModel(4, 5).is_kac()


def test_drinfeld_jimbo_never_kac():
    assert not DrinfeldJimboModel("A", 1, HALF).is_kac()


def test_rejections_name_the_constraint():
    with pytest.raises(InvalidModelError) as err:
        DrinfeldJimboModel("A", 1, Fraction(3, 2))
    assert err.value.code == "q-out-of-range"
    with pytest.raises(InvalidModelError) as err:
        FreeOrthogonalModel(3, Fraction(5, 2))
    assert err.value.code == "nq-below-n"
    with pytest.raises(InvalidModelError) as err:
        QuantumAutomorphismModel(4, Fraction(5, 2))
    assert err.value.code == "d1-below-minimum"
    with pytest.raises(InvalidModelError):
        FreeOrthogonalModel(1, 3)
    with pytest.raises(InvalidModelError):
        QuantumAutomorphismModel(3, 5)


# -- irreducible data --------------------------------------------------------------


def test_free_orthogonal_irr_data_example():
    model = FreeOrthogonalModel(3, Fraction(7, 2))
    data = model.irr_data(2)
    assert data.n == 8
    assert data.d == Fraction(45, 4)  # 11.25
    assert data.chi_sup == 3
    assert data.length == 2


def test_drinfeld_jimbo_irr_data_example():
    model = DrinfeldJimboModel("A", 1, HALF)
    data = model.irr_data((2,))
    assert data.n == 3
    assert data.d == Fraction(21, 4)
    assert data.chi_sup == 3
    assert data.length == 2


def test_trivial_label_everywhere():
    for model in (
        DrinfeldJimboModel("A", 2, HALF),
        FreeOrthogonalModel(3, Fraction(7, 2)),
        QuantumAutomorphismModel(5, 5),
    ):
        data = model.irr_data(model.trivial_label())
        assert (data.n, data.d, data.chi_sup, data.length) == (1, 1, 1, 0)


def test_quantum_automorphism_level_one_data():
    # level-1 data must be (dimB - 1, d1): that is what makes the Kac
    # condition d1 == dimB - 1 mean n == d at every level
    model = QuantumAutomorphismModel(5, Fraction(11, 2))
    data = model.irr_data(1)
    assert data.n == 4
    assert data.d == Fraction(11, 2)
    assert data.chi_sup == 3


def test_quantum_automorphism_so3_dims_at_dimb4():
    model = QuantumAutomorphismModel(4, 5)
    for k in range(6):
        assert model.irr_data(k).n == 2 * k + 1


def test_kac_models_have_equal_dims_all_levels():
    for model in (FreeOrthogonalModel(3, 3), QuantumAutomorphismModel(4, 3)):
        for k in range(10):
            for data in model.level_data(k):
                assert data.d == data.n


def test_d_dominates_n():
    for model in (
        DrinfeldJimboModel("A", 2, HALF),
        FreeOrthogonalModel(3, Fraction(7, 2)),
        QuantumAutomorphismModel(4, 5),
    ):
        for k in range(8):
            for data in model.level_data(k):
                assert data.d >= data.n
                if not model.is_kac() and k > 0:
                    assert data.d > data.n


# -- level enumeration ---------------------------------------------------------------


def test_enumerate_level_drinfeld_jimbo_descending_lex():
    model = DrinfeldJimboModel("A", 2, HALF)
    assert model.enumerate_level(2) == [(2, 0), (1, 1), (0, 2)]
    assert model.enumerate_level(0) == [(0, 0)]


def test_enumerate_level_graded_families():
    assert FreeOrthogonalModel(3, Fraction(7, 2)).enumerate_level(5) == [5]
    assert QuantumAutomorphismModel(4, 5).enumerate_level(0) == [0]


def test_enumerate_level_count_rank3():
    model = DrinfeldJimboModel("A", 3, HALF)
    for k in range(6):
        labels = model.enumerate_level(k)
        assert len(labels) == (k + 1) * (k + 2) // 2
        assert labels == sorted(labels, reverse=True)


# -- dimension recursions cross family -------------------------------------------------


def test_free_orthogonal_fusion_recursion():
    model = FreeOrthogonalModel(3, Fraction(7, 2))
    n = [model.irr_data(k).n for k in range(42)]
    d = [model.irr_data(k).d for k in range(42)]
    for k in range(1, 41):
        assert n[k + 1] == 3 * n[k] - n[k - 1]
        assert d[k + 1] == Fraction(7, 2) * d[k] - d[k - 1]


def test_su_q2_bridge_dimensions():
    # DrinfeldJimbo(A,1,q) and FreeOrthogonal(2, q + 1/q) carry identical
    # dimension data at every level, exactly
    q = HALF
    dj = DrinfeldJimboModel("A", 1, q)
    oplus = FreeOrthogonalModel(2, q + 1 / q)
    for k in range(60):
        dj_data = dj.irr_data((k,))
        op_data = oplus.irr_data(k)
        assert dj_data.n == op_data.n == k + 1
        assert dj_data.d == op_data.d == q_integer(k + 1, q)


def test_chi_sup_values_per_family():
    dj = DrinfeldJimboModel("A", 2, HALF)
    for mu in [(1, 0), (1, 1), (2, 1)]:
        assert dj.irr_data(mu).chi_sup == dj.irr_data(mu).n
    oplus = FreeOrthogonalModel(3, Fraction(7, 2))
    aut = QuantumAutomorphismModel(5, 5)
    for k in range(6):
        assert oplus.irr_data(k).chi_sup == k + 1
        assert aut.irr_data(k).chi_sup == 2 * k + 1


# -- spec strings --------------------------------------------------------------------


def test_parse_model_spec_roundtrip():
    model = parse_model_spec("djq:A1:1/2")
    assert isinstance(model, DrinfeldJimboModel)
    assert model.q == HALF
    assert model.spec_string() == "djq:A1:1/2"

    model = parse_model_spec("oplus:3:3.5")
    assert isinstance(model, FreeOrthogonalModel)
    assert model.Nq == Fraction(7, 2)

    model = parse_model_spec("aut:4:5")
    assert isinstance(model, QuantumAutomorphismModel)
    assert model.d1 == 5


def test_parse_model_spec_rejects_garbage():
    for bad in ("djq:A1", "oplus:3", "aut:x:y", "frob:1:2", "djq:A0:1/2", "oplus:3:1/0"):
        with pytest.raises(InvalidModelError):
            parse_model_spec(bad)


def test_construct_model_passthrough():
    model = FreeOrthogonalModel(3, 3)
    assert construct_model(model) is model
    assert isinstance(construct_model("aut:4:3"), QuantumAutomorphismModel)
