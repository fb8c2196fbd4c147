"""Randomized exact identity suites.

Each suite draws random rational cochains and algebra elements from a
seeded generator and checks an identity exactly.  A suite returns a
:class:`CheckResult`; on the first failing sample it records a witness
(the serialized inputs) and stops.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from . import bicomplex as bx
from . import permutations as perm
from .algebra import Element, commutator, format_scalar
from .cochains import (
    Cochain,
    antisymmetrize,
    ce_differential,
    cochain_product,
    cyclic_sum,
    differential,
    evaluate,
    hochschild_b,
    homotopy,
    insertion,
    lie_derivative,
    cartan_lie_derivative,
    make_rng,
    random_cochain,
    random_element,
)


@dataclass
class CheckResult:
    name: str
    algebra: str
    samples: int
    failures: int
    witness: dict = None

    @property
    def passed(self):
        return self.failures == 0

    def to_json(self):
        return {"name": self.name, "algebra": self.algebra, "samples": self.samples,
                "failures": self.failures, "passed": self.passed, "witness": self.witness}


def _elem_json(a):
    return [format_scalar(c) for c in a.coords]


def _run(name, alg, samples, draw, check):
    """``draw(k)`` builds the k-th sample (a dict), ``check(**sample)`` returns a bool."""
    for k in range(samples):
        sample = draw(k)
        if not check(**sample):
            witness = {}
            for key, v in sample.items():
                if isinstance(v, Cochain):
                    witness[key] = v.to_json()
                elif isinstance(v, Element):
                    witness[key] = _elem_json(v)
                elif isinstance(v, bx.BigradedCochain):
                    witness[key] = v.to_json()
                else:
                    witness[key] = v
            return CheckResult(name, alg.ident, k + 1, 1, witness)
    return CheckResult(name, alg.ident, samples, 0)


def _zero_like(alg, degree):
    return Cochain._raw(alg, degree, {})


# -- cochain operator identities ---------------------------------------------

def operator_suite(alg, seed=0, samples=100, max_degree=4):
    """The identities of the graded differential algebra C(A) and its operation."""
    rng = make_rng(seed)
    degrees = list(range(max_degree + 1))
    positive = [n for n in degrees if n >= 1]

    def form(k, pool=degrees, size=24):
        return random_cochain(alg, pool[k % len(pool)], rng, size)

    def d2(omega):
        return differential(differential(omega)).is_zero()

    def leibniz_d(omega, tau):
        sign = -1 if omega.degree % 2 else 1
        lhs = differential(cochain_product(omega, tau))
        rhs = cochain_product(differential(omega), tau) + sign * cochain_product(omega, differential(tau))
        return lhs == rhs

    def cartan(a, omega):
        return lie_derivative(a, omega) == cartan_lie_derivative(a, omega)

    def i_anticommute(a, b, omega):
        if omega.degree < 2:
            return True
        return (insertion(a, insertion(b, omega)) + insertion(b, insertion(a, omega))).is_zero()

    def i_leibniz(a, omega, tau):
        if omega.degree == 0 or tau.degree == 0:
            return True
        sign = -1 if omega.degree % 2 else 1
        lhs = insertion(a, cochain_product(omega, tau))
        rhs = cochain_product(insertion(a, omega), tau) + sign * cochain_product(omega, insertion(a, tau))
        return lhs == rhs

    def l_i(a, b, omega):
        if omega.degree == 0:
            return True
        lhs = lie_derivative(a, insertion(b, omega)) - insertion(b, lie_derivative(a, omega))
        return lhs == insertion(commutator(alg, a, b), omega)

    def l_l(a, b, omega):
        lhs = (lie_derivative(a, lie_derivative(b, omega))
               - lie_derivative(b, lie_derivative(a, omega)))
        return lhs == lie_derivative(commutator(alg, a, b), omega)

    def l_d(a, omega):
        return lie_derivative(a, differential(omega)) == differential(lie_derivative(a, omega))

    def homotopy_id(omega):
        hd = homotopy(differential(omega))
        dh = differential(homotopy(omega))
        return hd + dh == omega

    def homotopy_l(a, omega):
        return homotopy(lie_derivative(a, omega)) == lie_derivative(a, homotopy(omega))

    def s_d(omega):
        return antisymmetrize(differential(omega)) == ce_differential(antisymmetrize(omega))

    def c_d(omega):
        return cyclic_sum(differential(omega)) == hochschild_b(cyclic_sum(omega))

    el = lambda: random_element(alg, rng)
    b_degrees = [n for n in range(1, max_degree + 1)]
    suites = [
        ("d^2 = 0", lambda k: {"omega": form(k)}, d2),
        ("d(w.t) = dw.t + (-1)^|w| w.dt",
         lambda k: {"omega": form(k, [0, 1, 2], 8), "tau": form(k + 1, [0, 1, 2], 8)}, leibniz_d),
        ("L_A = i_A d + d i_A", lambda k: {"a": el(), "omega": form(k)}, cartan),
        ("i_A i_B + i_B i_A = 0", lambda k: {"a": el(), "b": el(), "omega": form(k)}, i_anticommute),
        ("i_A(w.t) = i_A w.t + (-1)^|w| w.i_A t",
         lambda k: {"a": el(), "omega": form(k, [1, 2], 8), "tau": form(k + 1, [1, 2], 8)}, i_leibniz),
        ("[L_A, i_B] = i_[A,B]", lambda k: {"a": el(), "b": el(), "omega": form(k)}, l_i),
        ("[L_A, L_B] = L_[A,B]", lambda k: {"a": el(), "b": el(), "omega": form(k)}, l_l),
        ("L_A d = d L_A", lambda k: {"a": el(), "omega": form(k)}, l_d),
        ("S d = delta_CE S", lambda k: {"omega": form(k, b_degrees[:3] or [1], 16)}, s_d),
        ("C d = b C", lambda k: {"omega": form(k, b_degrees)}, c_d),
    ]
    if alg.is_unital:
        suites += [
            ("dh + hd = id", lambda k: {"omega": form(k, positive)}, homotopy_id),
            ("h L_A = L_A h", lambda k: {"a": el(), "omega": form(k, positive)}, homotopy_l),
        ]
    return [_run(name, alg, samples, draw, check) for name, draw, check in suites]


# -- cross-module oracles -----------------------------------------------------

def _linear_coefficient(values):
    """The t^1 coefficient of the polynomial taking ``values[t]`` at t = 0, 1, .., len-1."""
    pts = range(len(values))
    total = Fraction(0)
    for t, v in enumerate(values):
        denom = 1
        for s in pts:
            if s != t:
                denom *= t - s
        # derivative at 0 of prod_{s != t} (x - s)
        deriv = Fraction(0)
        for u in pts:
            if u == t:
                continue
            prod = 1
            for s in pts:
                if s not in (t, u):
                    prod *= -s
            deriv += prod
        total += v * deriv / denom
    return total


def _bigrades(total, m_min=0):
    return [(m, n) for s in range(total + 1) for m in range(m_min, s + 1) for n in [s - m]]


def oracle_suite(alg, seed=0, samples=100, max_degree=4):
    """Independent routes to the same operator must agree exactly."""
    rng = make_rng(seed)
    small = [n for n in range(1, max_degree + 1)]
    grades = _bigrades(max_degree)
    grades_m = _bigrades(max_degree, 1)

    def form(k, pool, size=24):
        return random_cochain(alg, pool[k % len(pool)], rng, size)

    def bigraded(k, pool, size=24):
        m, n = pool[k % len(pool)]
        return bx.make_bigraded(random_cochain(alg, m + n, rng, size), m, n)

    el = lambda: random_element(alg, rng)

    def s_group(omega):
        return antisymmetrize(omega) == perm.apply_to_cochain(perm.S_element(omega.degree), omega)

    def c_group(omega):
        n = omega.degree
        rot = perm.GroupAlgebraElement(n, {tuple((k + s) % n + 1 for k in range(n)): 1 for s in range(n)})
        signed = perm.GroupAlgebraElement(n, {p: perm.signature(p) for p in rot.terms})
        return cyclic_sum(omega) == perm.apply_to_cochain(signed, omega)

    def h_group(omega):
        if omega.n == 0:
            return bx.H_op(omega).is_zero()
        via = perm.apply_to_cochain(perm.Hk_element(1, omega.n), omega.xi, offset=omega.m)
        return bx.H_op(omega).xi == via

    def delta_eval(omega, a):
        got = bx.evaluate_at(bx.delta(omega), a)
        want = insertion(a, bx.evaluate_at(omega, a))
        if omega.n == 0:
            return got.is_zero()
        return got == want

    def d_eval(omega, a):
        return bx.evaluate_at(bx.d_big(omega), a) == differential(bx.evaluate_at(omega, a))

    def ell_eval(omega, a, args):
        els = [Element(alg, [Fraction(x) for x in v]) for v in args]
        lhs = evaluate(bx.evaluate_at(bx.ell(omega), a), els)
        rest = els[1:]
        values = [evaluate(bx.evaluate_at(omega, a + t * els[0]), rest) for t in range(omega.m + 1)]
        return lhs == _linear_coefficient(values)

    def draw_ell(k):
        omega = bigraded(k, grades_m)
        args = [[str(c) for c in el().coords] for _ in range(omega.n + 1)]
        return {"omega": omega, "a": el(), "args": args}

    suites = [
        ("S via group algebra", lambda k: {"omega": form(k, small)}, s_group),
        ("C via group algebra", lambda k: {"omega": form(k, small)}, c_group),
        ("H via group algebra", lambda k: {"omega": bigraded(k, grades)}, h_group),
        ("delta vs evaluation", lambda k: {"omega": bigraded(k, grades), "a": el()}, delta_eval),
        ("d vs evaluation", lambda k: {"omega": bigraded(k, grades), "a": el()}, d_eval),
        ("l vs interpolation", draw_ell, ell_eval),
    ]
    return [_run(name, alg, samples, draw, check) for name, draw, check in suites]


# -- the bicomplex homotopies ---------------------------------------------------

def bicomplex_suite(alg, seed=0, samples=100, max_total=5, invariant_samples=True):
    """delta^2 = 0, d^2 = 0, (delta l + l delta) = m + H, the delta-homotopy, and the unit homotopy on P."""
    rng = make_rng(seed)
    grades = _bigrades(max_total)
    grades_m = _bigrades(max_total, 1)
    grades_n = [(m, n) for m, n in grades if n >= 1]

    def bigraded(k, pool, size=20):
        m, n = pool[k % len(pool)]
        return bx.make_bigraded(random_cochain(alg, m + n, rng, size), m, n)

    def squares(omega):
        return bx.delta(bx.delta(omega)).is_zero() and bx.d_big(bx.d_big(omega)).is_zero()

    def homotopy_formula(omega):
        lhs = bx.delta(bx.ell(omega))
        if omega.n >= 1:
            lhs = lhs + bx.ell(bx.delta(omega))
        return lhs == omega.m * omega + bx.H_op(omega)

    def preimage(omega):
        return bx.delta(bx.delta_preimage(omega)) == omega

    def draw_exact(k):
        m, n = grades_m[k % len(grades_m)]
        tau = bx.make_bigraded(random_cochain(alg, m + n, rng, 20), m - 1, n + 1)
        return {"omega": bx.delta(tau)}

    def product_formula(omega):
        x = omega
        for p in range(omega.n - 1):
            x = bx.H_op(x) - p * x
        return x == bx.antisymmetrize_form(omega)

    suites = [
        ("delta^2 = 0 and d^2 = 0", lambda k: {"omega": bigraded(k, grades)}, squares),
        ("delta l + l delta = m + H", lambda k: {"omega": bigraded(k, grades_m)}, homotopy_formula),
        ("delta delta' = id on exact", draw_exact, preimage),
        ("prod (H - p) = S on form slots",
         lambda k: {"omega": bigraded(k, [(m, n) for m, n in grades if n >= 1])}, product_formula),
    ]
    if alg.is_unital:
        def contraction(omega):
            return bx.d_big(bx.h_big(omega)) + bx.h_big(bx.d_big(omega)) == omega
        suites.append(("d h + h d = id on P^{m,n}, n >= 1",
                       lambda k: {"omega": bigraded(k, grades_n)}, contraction))
    return [_run(name, alg, samples, draw, check) for name, draw, check in suites]


def invariant_bicomplex_suite(alg, seed=0, samples=100, max_total=5):
    """On I: d and delta anticommute, l and H preserve I, and delta' of invariant closed forms is invariant."""
    rng = make_rng(seed)
    cells = []
    for m, n in _bigrades(max_total):
        elems = bx.subspace_elements(alg, m, n)
        if elems:
            cells.append(((m, n), elems))

    def draw(k):
        (m, n), elems = cells[k % len(cells)]
        omega = bx.zero(alg, m, n)
        for e in elems:
            omega = omega + rng.randint(-3, 3) * e
        if omega.is_zero():
            omega = elems[k % len(elems)]
        return {"omega": omega}

    def anticommute(omega):
        if not omega.invariant_flag:
            return False
        s = bx.d_big(bx.delta(omega)) + bx.delta(bx.d_big(omega)) if omega.n >= 1 else bx.delta(bx.d_big(omega))
        return s.is_zero()

    def preserved(omega):
        ok = bx.H_op(omega).invariant_flag
        if omega.m >= 1:
            ok = ok and bx.ell(omega).invariant_flag
        return ok

    def invariant_preimage(omega):
        source = omega
        if omega.m < 1:
            return True
        closed = bx.delta(bx.ell(source))  # delta-exact, hence closed, and invariant
        eta = bx.delta_preimage(closed)
        return eta.invariant_flag and bx.delta(eta) == closed

    suites = [
        ("d delta + delta d = 0 on I", draw, anticommute),
        ("l, H preserve I", draw, preserved),
        ("delta' preserves I", draw, invariant_preimage),
    ]
    return [_run(name, alg, samples, d, c) for name, d, c in suites]


# -- group algebra ------------------------------------------------------------

def lemma_table(n_max=6):
    rows = []
    for n in range(2, n_max + 1):
        for k in range(1, n):
            rows.append({"n": n, "k": k, "holds": perm.lemma_recursion_check(n, k)})
    products = [{"n": n, "holds": perm.lemma_product_check(n)} for n in range(2, n_max + 1)]
    return rows, products


def group_algebra_suite(seed=0, samples=20, n_max=5):
    rng = make_rng(seed)

    def rand(n):
        import itertools
        perms = list(itertools.permutations(range(1, n + 1)))
        terms = {}
        for _ in range(4):
            terms[perms[rng.randrange(len(perms))]] = rng.randint(-3, 3)
        return perm.GroupAlgebraElement(n, terms)

    def draw(k):
        n = 1 + k % n_max
        return {"n": n, "x": rand(n), "y": rand(n), "z": rand(n)}

    def assoc(n, x, y, z):
        return (x * y) * z == x * (y * z)

    def sign_mult(n, x, y, z):
        return all(perm.signature(p.compose(q)) == perm.signature(p) * perm.signature(q)
                   for p in x.terms for q in y.terms)

    from .algebra import matrix
    alg = matrix(2)

    def action(n, x, y, z):
        omega = random_cochain(alg, n, rng, 16)
        lhs = perm.apply_to_cochain(x * y, omega)
        return lhs == perm.apply_to_cochain(x, perm.apply_to_cochain(y, omega))

    results = []
    for name, check in [("associativity", assoc), ("signature is multiplicative", sign_mult),
                        ("left action on cochains", action)]:
        res = CheckResult(name, "Q[S_n]", samples, 0)
        for k in range(samples):
            s = draw(k)
            if not check(**s):
                res = CheckResult(name, "Q[S_n]", k + 1, 1,
                                  {key: (v.to_json() if hasattr(v, "to_json") else v) for key, v in s.items()})
                break
        results.append(res)
    return results


# -- filtration ------------------------------------------------------------------

def filtration_suite(alg, seed=0, samples=20, n_max=3):
    """F^p decreasing, d F^p inside F^p, F^p . F^q inside F^{p+q}."""
    from .spectral import filtration_subspace
    from .linalg import Subspace
    rng = make_rng(seed)
    results = []
    fails = []
    for n in range(n_max + 1):
        for p in range(n + 1):
            hi, lo = filtration_subspace(alg, p + 1, n), filtration_subspace(alg, p, n)
            if not lo.contains_subspace(hi):
                fails.append({"kind": "decreasing", "p": p, "n": n})
            if n < n_max:
                target = filtration_subspace(alg, p, n + 1)
                for v in lo.vectors:
                    if differential(Cochain.from_vector(alg, n, v)).to_vector() not in target:
                        fails.append({"kind": "d-stable", "p": p, "n": n})
                        break
    results.append(CheckResult("F^p decreasing and d-stable", alg.ident, 1, len(fails),
                               fails[0] if fails else None))

    def rand_in(space, n):
        vec = {}
        for v in space.vectors:
            c = rng.randint(-2, 2)
            for i, x in v.items():
                vec[i] = vec.get(i, 0) + c * x
        return Cochain.from_vector(alg, n, {i: x for i, x in vec.items() if x})

    pairs = [(n1, p1, n2, p2) for n1 in range(n_max + 1) for n2 in range(n_max + 1 - n1)
             for p1 in range(n1 + 1) for p2 in range(n2 + 1) if n1 + n2 <= n_max]
    failure = None
    for k in range(samples):
        n1, p1, n2, p2 = pairs[k % len(pairs)]
        w = rand_in(filtration_subspace(alg, p1, n1), n1)
        t = rand_in(filtration_subspace(alg, p2, n2), n2)
        prod = cochain_product(w, t).to_vector()
        if prod not in filtration_subspace(alg, p1 + p2, n1 + n2):
            failure = {"omega": w.to_json(), "tau": t.to_json(), "p": p1, "q": p2}
            break
    results.append(CheckResult("F^p . F^q in F^{p+q}", alg.ident, samples, 0 if failure is None else 1, failure))
    return results


def summarize(results):
    return {"passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}


def dumps(obj):
    return json.dumps(obj, sort_keys=True)
