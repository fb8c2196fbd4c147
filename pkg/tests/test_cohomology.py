import json
from math import comb

import pytest

from cobasic import cohomology as co
from cobasic import linalg
from cobasic.algebra import build_algebra
from cobasic.cochains import (
    Cochain,
    cochain_product,
    contract_all,
    differential,
    lie_all,
    make_rng,
)
from cobasic.errors import NoUnit
from cobasic.linalg import Subspace


def test_horizontal_examples(K, M2):
    assert [co.horizontal_subspace(K, n).dim for n in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    assert co.horizontal_subspace(M2, 0).dim == 1
    assert co.horizontal_subspace(M2, 1).dim == 0


def test_invariant_examples(K, M2):
    assert all(co.invariant_subspace(K, n).dim == 1 for n in range(6))
    assert co.invariant_subspace(M2, 1).dim == 1
    assert co.invariant_subspace(M2, 0).dim == 1
    # the trace line
    trace = Cochain(M2, 1, {(0,): 1, (3,): 1}).to_vector()
    assert trace in co.invariant_subspace(M2, 1)


def test_basic_examples(K, T2, M2, KK):
    for alg in (K, T2, M2, KK):
        assert co.basic_subspace(alg, 0).dim == 1
        assert co.basic_subspace(alg, 1).dim == 0
    assert [co.basic_subspace(K, n).dim for n in range(6)] == [1, 0, 1, 0, 1, 0]


def test_basic_is_the_intersection(T2, M2):
    for alg in (T2, M2):
        for n in range(5):
            direct = linalg.intersect(co.horizontal_subspace(alg, n), co.invariant_subspace(alg, n))
            assert co.basic_subspace(alg, n) == direct


def test_subspaces_are_correct_kernels(M2):
    for n in range(1, 4):
        for v in co.invariant_subspace(M2, n).vectors:
            assert not lie_all(Cochain.from_vector(M2, n, v))
        for v in co.horizontal_subspace(M2, n).vectors:
            assert not contract_all(Cochain.from_vector(M2, n, v))


def test_subcomplexes_are_closed(T2, M2):
    for alg in (T2, M2):
        for variant in ("invariant", "basic"):
            for n in range(4):
                target = co.subcomplex(alg, variant, n + 1)
                for v in co.subcomplex(alg, variant, n).vectors:
                    assert differential(Cochain.from_vector(alg, n, v)).to_vector() in target


def test_dimension_ordering(zoo):
    for alg in zoo:
        for row in co.cohomology_dims(alg, "basic", 4).rows:
            assert row.dimCB <= row.dimCI <= row.dimC
            assert row.dimCB <= row.dimCH
            assert row.dimH == row.dimZ - row.dimB >= 0


def test_field_basic_cohomology(K):
    assert co.cohomology_dims(K, "basic", 10).dims == [1, 0] * 5 + [1]


def test_matrix_full_cohomology(M2):
    assert co.cohomology_dims(M2, "full", 5).dims == [1, 0, 0, 0, 0, 0]


def test_unital_h0(zoo, KK):
    for alg in zoo + [KK]:
        assert co.cohomology_dims(alg, "full", 1).dims[0] == 1
        assert co.cohomology_dims(alg, "invariant", 1).dims[0] == 1
        assert co.cohomology_dims(alg, "basic", 1).dims[1] == 0


def test_invariant_polynomial_examples(K, M2):
    assert co.invariant_polynomials(M2, 1).dim == 1
    assert co.invariant_polynomials(M2, 2).dim == 2
    assert all(co.invariant_polynomials(K, n).dim == 1 for n in range(6))
    assert co.invariant_polynomials(M2, 3).ambient_dim == comb(4 + 3 - 1, 3)


def test_invariant_polynomials_by_symmetric_cochains(T2, M2):
    # symmetric invariant n-forms, found inside C^n, match the polynomial kernel
    from cobasic.bicomplex import bigraded_subspace
    for alg in (T2, M2):
        for n in range(4):
            poly = co.invariant_polynomials(alg, n)
            converted = Subspace.span(
                [co.polynomial_to_symmetric(alg, n, v).to_vector() for v in poly.vectors], alg.dim ** n)
            assert converted == bigraded_subspace(alg, n, 0)


def test_trace_polynomials_are_invariant(M2):
    # tr(X)^2 and tr(X^2) in monomial coordinates x00, x01, x10, x11
    mons = co.monomials(4, 2)
    idx = {m: i for i, m in enumerate(mons)}
    tr_sq = {idx[(0, 0)]: 1, idx[(0, 3)]: 2, idx[(3, 3)]: 1}
    tr_x2 = {idx[(0, 0)]: 1, idx[(1, 2)]: 2, idx[(3, 3)]: 1}
    space = co.invariant_polynomials(M2, 2)
    assert tr_sq in space and tr_x2 in space
    assert {idx[(0, 1)]: 1} not in space


def test_basic_cohomology_is_invariant_polynomials(K, T2, M2):
    assert co.theorem1_check(K, 10)["holds"]
    assert co.theorem1_check(T2, 4)["holds"]
    report = co.theorem1_check(M2, 6)
    assert report["invariant_polynomial_dims"] == [1, 1, 2, 2]
    assert report["basic_dims"] == [1, 0, 1, 0, 2, 0, 2]


def test_polynomial_comparison_needs_unit():
    nil = build_algebra(1, {})
    with pytest.raises(NoUnit):
        co.theorem1_check(nil, 2)


def test_representatives(K, M2):
    reps = co.basic_representatives(K, 2)
    assert len(reps) == 1
    assert co.basic_representatives(M2, 3) == []
    reps = co.basic_representatives(M2, 4)
    assert len(reps) == 2
    for z in reps:
        assert differential(z).is_zero()
        assert not contract_all(z)
        assert not lie_all(z)
    # the classes are independent modulo coboundaries
    bnd = co.coboundaries(M2, "basic", 4)
    assert linalg.sum_(bnd, Subspace.span([z.to_vector() for z in reps], 256)).dim == bnd.dim + 2


def test_basic_product_closed(M2):
    rng = make_rng(0)
    for n1, n2 in [(2, 2), (2, 3), (3, 2), (2, 1 + 1)]:
        a = co.subspace_cochains(M2, n1, co.basic_subspace(M2, n1))
        b = co.subspace_cochains(M2, n2, co.basic_subspace(M2, n2))
        for _ in range(3):
            x = sum((rng.randint(-2, 2) * v for v in a), Cochain.zero(M2, n1))
            y = sum((rng.randint(-2, 2) * v for v in b), Cochain.zero(M2, n2))
            assert cochain_product(x, y).to_vector() in co.basic_subspace(M2, n1 + n2)


def test_graded_commutativity_in_cohomology(M2):
    # z1 z2 - z2 z1 is basic and exact in C_B for even-degree representatives
    z2 = co.basic_representatives(M2, 2)
    assert len(z2) == 1
    a, b = z2[0], z2[0] + differential(co.subspace_cochains(M2, 1, co.invariant_subspace(M2, 1))[0])
    comm = cochain_product(a, b) - cochain_product(b, a)
    assert comm.to_vector() in co.basic_subspace(M2, 4)
    assert comm.to_vector() in co.coboundaries(M2, "basic", 4)


def test_report_serialization(M2):
    rep = co.cohomology_dims(M2, "invariant", 3)
    data = json.loads(json.dumps(rep.to_json()))
    assert co.CohomologyReport.from_json(data) == rep
    lines = rep.to_csv().strip().split("\n")
    assert len(lines) == 5
    assert lines[0].split(",")[:3] == ["algebra", "variant", "n"]
