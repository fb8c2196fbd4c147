"""The nine acceptance criteria, exact with zero tolerance.

Each criterion prints one PASS/FAIL line with its runtime.  Caches are
cleared first so runtimes are cold.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import sys
import time

import pytest

import cobasic
from cobasic import bicomplex as bx
from cobasic import checks
from cobasic import cochains
from cobasic import cohomology as co
from cobasic import linalg
from cobasic import permutations as perm
from cobasic import spectral as sp
from cobasic.algebra import direct_sum, field, matrix, upper_triangular

SAMPLES = 100
SEED = 2024


def clear_caches():
    for mod in (cobasic.algebra, cochains, linalg, perm, co, bx, sp, checks):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def criterion_1():
    dims = co.cohomology_dims(field(), "basic", 10).dims
    return dims == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], "H_B(K) = %s" % dims


def criterion_2():
    algs = [matrix(2), upper_triangular(2), direct_sum(field(), field())]
    expected = [1, 0, 0, 0, 0, 0]
    found = {}
    for alg in algs:
        for variant in ("full", "invariant"):
            found["%s/%s" % (alg.ident, variant)] = co.cohomology_dims(alg, variant, 5).dims
    ok = all(d == expected for d in found.values())
    return ok, "; ".join("%s %s" % kv for kv in found.items())


def criterion_3():
    m2 = co.theorem1_check(matrix(2), 6)
    t2 = co.theorem1_check(upper_triangular(2), 4)
    basic = m2["basic_dims"]
    ok = (m2["holds"] and t2["holds"]
          and m2["invariant_polynomial_dims"] == [1, 1, 2, 2]
          and [basic[2 * n] for n in range(4)] == [1, 1, 2, 2]
          and all(basic[k] == 0 for k in range(1, 7, 2))
          and [t2["basic_dims"][2 * n] for n in range(3)] == t2["invariant_polynomial_dims"][:3]
          and all(t2["basic_dims"][k] == 0 for k in (1, 3)))
    return ok, "M_2: H_B %s vs I_S %s; T_2: H_B %s vs I_S %s" % (
        basic, m2["invariant_polynomial_dims"], t2["basic_dims"], t2["invariant_polynomial_dims"])


REQUIRED_IDENTITIES = [
    "d^2 = 0", "L_A = i_A d + d i_A", "i_A i_B + i_B i_A = 0", "[L_A, i_B] = i_[A,B]",
    "[L_A, L_B] = L_[A,B]", "dh + hd = id", "h L_A = L_A h", "S d = delta_CE S", "C d = b C",
]


def criterion_4():
    failures = []
    for alg in (field(), upper_triangular(2), matrix(2)):
        results = {r.name: r for r in checks.operator_suite(alg, SEED, SAMPLES, max_degree=4)}
        for name in REQUIRED_IDENTITIES:
            r = results.get(name)
            if r is None or r.failures or r.samples != SAMPLES:
                failures.append("%s: %s" % (alg.ident, name))
    return not failures, "failures: %s" % (failures or "none")


def criterion_5():
    alg = matrix(2)
    rng = cochains.make_rng(SEED)
    bad = []
    grades = [(m, n) for m in range(1, 6) for n in range(0, 6 - m)]
    for m, n in grades:
        for _ in range(SAMPLES):
            w = bx.make_bigraded(cochains.random_cochain(alg, m + n, rng, 20), m, n)
            lhs = bx.delta(bx.ell(w))
            if n >= 1:
                lhs = lhs + bx.ell(bx.delta(w))
            if lhs != m * w + bx.H_op(w):
                bad.append(("homotopy", m, n))
                break
    # 100 random delta-exact inputs, cycling through the bidegrees
    for k in range(SAMPLES):
        m, n = grades[k % len(grades)]
        tau = bx.make_bigraded(cochains.random_cochain(alg, m + n, rng, 20), m - 1, n + 1)
        w = bx.delta(tau)
        if bx.delta(bx.delta_preimage(w)) != w:
            bad.append(("preimage", m, n))
    # invariant delta-exact inputs give invariant preimages
    inv_grades = [(m, n) for m, n in grades if bx.subspace_elements(alg, m - 1, n + 1)]
    for k in range(SAMPLES):
        m, n = inv_grades[k % len(inv_grades)]
        basis = bx.subspace_elements(alg, m - 1, n + 1)
        tau = bx.zero(alg, m - 1, n + 1)
        for e in basis:
            tau = tau + rng.randint(-3, 3) * e
        w = bx.delta(tau)
        eta = bx.delta_preimage(w)
        if not (eta.invariant_flag and bx.delta(eta) == w):
            bad.append(("invariant preimage", m, n))
    return not bad, "%d homotopy samples over %d bidegrees, %d exact, %d invariant exact; failures %s" % (
        SAMPLES * len(grades), len(grades), SAMPLES, SAMPLES, bad or "none")


def criterion_6():
    bad = []
    for n in range(2, 7):
        for k in range(1, n):
            if not perm.lemma_recursion_check(n, k):
                bad.append(("recursion", n, k))
        if not perm.lemma_product_check(n):
            bad.append(("product", n))
    return not bad, "n = 2..6; failures %s" % (bad or "none")


def criterion_7():
    alg = matrix(2)
    h12 = bx.delta_mod_d_dims(alg, 1, 2).h
    h22 = bx.delta_mod_d_dims(alg, 2, 2).h
    h13 = bx.delta_mod_d_dims(alg, 1, 3).h
    i3 = co.invariant_polynomials(alg, 3).dim
    ok = h12 == 0 and h22 == 0 and h13 == i3 == 2
    return ok, "H^{1,2} = %d, H^{2,2} = %d, H^{1,3} = %d, dim I^3_S = %d" % (h12, h22, h13, i3)


def criterion_8():
    alg = matrix(2)
    top = 4
    e1 = sp.page_dims(alg, 1, top)
    e2 = sp.page_dims(alg, 2, top)
    cb = [co.basic_subspace(alg, p).dim for p in range(top + 1)]
    hb = co.cohomology_dims(alg, "basic", top).dims
    lie = sp.lie_cohomology_dims(alg, top)
    conv = sp.convergence_check(alg, top)
    ok = (e1.row(0) == cb and e2.row(0) == hb and lie == [1, 1, 0, 1, 1]
          and e1.column(0) == lie and conv["holds"])
    return ok, "E_1^{p,0} %s vs C_B %s; E_2^{p,0} %s vs H_B %s; E_1^{0,q} %s vs H(gl_2) %s; E_inf = K: %s" % (
        e1.row(0), cb, e2.row(0), hb, e1.column(0), lie, conv["holds"])


ORACLES = ["S via group algebra", "H via group algebra", "delta vs evaluation", "d vs evaluation",
           "l vs interpolation"]


def criterion_9():
    bad = []
    for alg in (field(), upper_triangular(2), matrix(2)):
        results = {r.name: r for r in checks.oracle_suite(alg, SEED, SAMPLES, max_degree=4)}
        for name in ORACLES:
            r = results[name]
            if r.failures or r.samples != SAMPLES:
                bad.append("%s: %s" % (alg.ident, name))
    return not bad, "discrepancies: %s" % (bad or "none")


CRITERIA = [
    (1, "basic cohomology of the ground field", criterion_1, 1),
    (2, "full and invariant cohomology vanish for unital algebras", criterion_2, 120),
    (3, "basic cohomology equals invariant polynomials", criterion_3, 600),
    (4, "operator identities", criterion_4, 120),
    (5, "delta homotopy and preimage", criterion_5, 300),
    (6, "group algebra lemma", criterion_6, 60),
    (7, "delta cohomology modulo d", criterion_7, 600),
    (8, "spectral sequence pages and convergence", criterion_8, 600),
    (9, "cross-module oracles", criterion_9, None),
]


def evaluate(number):
    _, title, fn, limit = CRITERIA[number - 1]
    clear_caches()
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    bound = "< %ss" % limit if limit is not None else "no bound"
    line = "%s criterion %d (%s): %.2fs [%s] %s" % (
        "PASS" if ok and in_time else "FAIL", number, title, elapsed, bound, detail)
    return ok, in_time, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, in_time, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    results = [evaluate(c[0]) for c in CRITERIA]
    for _, _, line in results:
        print(line)
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)
