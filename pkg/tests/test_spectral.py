import json

import pytest

from cobasic import cohomology as co
from cobasic import spectral as sp
from cobasic.algebra import build_algebra
from cobasic.cochains import Cochain, differential
from cobasic.errors import NoUnit


def test_filtration_is_decreasing(M2):
    for n in range(4):
        spaces = [sp.filtration_subspace(M2, p, n) for p in range(n + 2)]
        assert spaces[0].dim == 4 ** n
        assert spaces[n + 1].dim == 0
        for big, small in zip(spaces, spaces[1:]):
            assert big.contains_subspace(small)
        # F^n is the horizontal subspace
        assert spaces[n] == co.horizontal_subspace(M2, n)


def test_filtration_is_preserved_by_d(M2):
    for n in range(3):
        for p in range(n + 1):
            target = sp.filtration_subspace(M2, p, n + 1)
            for v in sp.filtration_subspace(M2, p, n).vectors[:10]:
                assert differential(Cochain.from_vector(M2, n, v)).to_vector() in target


def test_lie_cohomology_oracle(K, M2, T2):
    assert sp.lie_cohomology_dims(K, 2) == [1, 1, 0]
    assert sp.lie_cohomology_dims(M2, 4) == [1, 1, 0, 1, 1]
    # the 2-dimensional nonabelian Lie algebra inside T2 plus a central line
    assert sum((-1) ** q * d for q, d in enumerate(sp.lie_cohomology_dims(T2, 3))) == 0


def test_e1_and_e2_rows(M2):
    top = 4
    e1 = sp.page_dims(M2, 1, top)
    assert e1.row(0) == [co.basic_subspace(M2, p).dim for p in range(top + 1)]
    assert e1.column(0) == sp.lie_cohomology_dims(M2, top)
    e2 = sp.page_dims(M2, 2, top)
    assert e2.row(0) == co.cohomology_dims(M2, "basic", top).dims


def test_e0_is_graded_quotient(M2):
    e0 = sp.page_dims(M2, 0, 3)
    for n in range(4):
        assert sum(e0.table[(p, n - p)] for p in range(n + 1)) == 4 ** n


def test_next_page_is_homology_of_d_r(T2):
    top = 4
    for r in range(1, 4):
        page, nxt = sp.page_dims(T2, r, top), sp.page_dims(T2, r + 1, top)
        for (p, q), dim in page.table.items():
            if p + q >= top:
                continue
            incoming = page.d_r_ranks.get((p - r, q + r - 1), 0)
            assert nxt.table[(p, q)] == dim - page.d_r_ranks[(p, q)] - incoming


def test_convergence(K, T2, M2):
    for alg, top in [(K, 6), (T2, 4), (M2, 4)]:
        rep = sp.convergence_check(alg, top)
        assert rep["holds"]
        assert rep["E_infinity"]["0,0"] == 1


def test_convergence_needs_unit():
    with pytest.raises(NoUnit):
        sp.convergence_check(build_algebra(1, {}), 2)


def test_page_serialization(M2):
    page = sp.page_dims(M2, 2, 3)
    data = json.loads(json.dumps(page.to_json()))
    assert sp.SpectralPage.from_json(data) == page
    assert not sp.page_dims(M2, 1, 3).stabilized
