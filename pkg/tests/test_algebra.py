import json
from fractions import Fraction

import pytest

from cobasic.algebra import (
    algebra_from_json,
    build_algebra,
    builtin,
    commutator,
    direct_sum,
    field,
    load_algebra,
    matrix,
    multiply,
    parse_selector,
    scalar,
    upper_triangular,
)
from cobasic.errors import (
    AssociativityViolation,
    BadParameter,
    DimensionMismatch,
    IndexOutOfRange,
    IngestionError,
    UnitViolation,
    UnknownAlgebraName,
)


def test_scalar_parsing():
    assert scalar("3/4") == Fraction(3, 4)
    assert scalar(2) == 2
    assert scalar(Fraction(1, 3)) == Fraction(1, 3)


def test_matrix_units_multiply(M2):
    # E_ab E_cd = delta_bc E_ad with row-major indexing a*2+b
    e = M2.basis
    assert multiply(M2, e(1), e(2)) == e(0)  # E01 E10 = E00
    assert multiply(M2, e(2), e(1)) == e(3)  # E10 E01 = E11
    assert multiply(M2, e(1), e(1)).is_zero()


def test_unit_is_identity(zoo):
    for alg in zoo:
        one = alg.one()
        for i in range(alg.dim):
            assert multiply(alg, one, alg.basis(i)) == alg.basis(i)
            assert multiply(alg, alg.basis(i), one) == alg.basis(i)


def test_commutator_values(M2):
    e = M2.basis
    # [E01, E00] = -E01
    assert commutator(M2, e(1), e(0)) == -1 * e(1)
    assert commutator(M2, M2.one(), e(1)).is_zero()


def test_field_is_commutative(K):
    assert commutator(K, K.basis(0), K.basis(0)).is_zero()


def test_dimensions():
    assert matrix(3).dim == 9
    assert upper_triangular(3).dim == 6
    assert direct_sum(field(), matrix(2)).dim == 5


def test_nonassociative_table_rejected():
    # e0 e0 = e1, e1 e0 = 0, e0 e1 = e0: (e0 e0) e1 = 0 != e0 (e0 e1) = e1
    with pytest.raises(AssociativityViolation):
        build_algebra(2, {(0, 0): {1: 1}, (0, 1): {0: 1}})


def test_bad_unit_rejected():
    with pytest.raises(UnitViolation):
        build_algebra(1, {(0, 0): {0: 1}}, unit=[2])


def test_bad_inputs():
    with pytest.raises(IndexOutOfRange):
        build_algebra(1, {(0, 1): {0: 1}})
    with pytest.raises(DimensionMismatch):
        build_algebra(1, {(0, 0): {0: 1}}, unit=[1, 0])
    with pytest.raises(BadParameter):
        matrix(0)
    with pytest.raises(UnknownAlgebraName):
        builtin("octonions")


def test_selectors():
    assert parse_selector("field") == field()
    assert parse_selector("matrix:2") == matrix(2)
    assert parse_selector("upper_triangular:2") == upper_triangular(2)
    kk = parse_selector("direct_sum:field,field")
    assert kk.dim == 2 and kk.is_unital
    nested = parse_selector("direct_sum:(matrix:2),(direct_sum:field,field)")
    assert nested.dim == 6


def test_json_round_trip(tmp_path, T2):
    data = json.loads(json.dumps(T2.to_json()))
    again = algebra_from_json(data)
    assert again == T2
    assert again.digest == T2.digest
    path = tmp_path / "t2.json"
    path.write_text(json.dumps(data))
    assert load_algebra(str(path)) == T2


def test_corrupted_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(IngestionError):
        load_algebra(str(path))
    with pytest.raises(IngestionError):
        algebra_from_json({"structure": []})


def test_digest_is_structural():
    a = build_algebra(1, {(0, 0): {0: 1}}, [1], ["1"], name="one")
    assert a.digest == field().digest
    assert a == field()
    assert matrix(2).digest != upper_triangular(2).digest
