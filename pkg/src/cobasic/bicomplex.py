"""Polynomial maps A -> C^n(A) and the bicomplex (P, d, delta).

An element of P^{m,n} is a degree-m polynomial map A -> C^n(A).  It is
stored as its representative xi in C^{m+n}(A), symmetric in the first m
arguments, so that ``omega_A(A_1..A_n) = xi(A, .., A, A_1, .., A_n)``.
Every operator here works on xi directly; :func:`evaluate_at` gives the
polynomial-map view used as an oracle in the tests.

Normalizations fixed by the evaluation oracles:

* ``delta``: push each form argument into the symmetric block with the
  contraction sign, then average over the m+1 symmetric slots.
* ``ell``: ``xi_l(B_1..B_{m-1}; A_1..A_{n+1}) = m xi(A_1, B_1..B_{m-1}; A_2..A_{n+1})``.
"""

import itertools
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .cochains import Cochain, _acc, _coords, lie_all, tuple_index
from .errors import DegreeMismatch, NoUnit, NotClosed, ZeroPolynomialDegree
from .linalg import Subspace, kernel_of_columns


@lru_cache(maxsize=4096)
def _arrangements(block):
    """Distinct rearrangements of a tuple."""
    return tuple(sorted(set(itertools.permutations(block))))


def symmetrize_first(coeffs, m):
    """Average over all permutations of the first m slots."""
    if m <= 1:
        return dict(coeffs)
    out = {}
    for key, c in coeffs.items():
        head, tail = key[:m], key[m:]
        orbit = _arrangements(head)
        share = c / len(orbit)
        for h in orbit:
            _acc(out, h + tail, share)
    return {k: v for k, v in out.items() if v}


def is_symmetric_in_first(coeffs, m):
    for key, c in coeffs.items():
        for k in range(m - 1):
            if key[k] != key[k + 1]:
                swapped = key[:k] + (key[k + 1], key[k]) + key[k + 2:]
                if coeffs.get(swapped) != c:
                    return False
    return True


class BigradedCochain:
    """An element of P^{m,n}, held as its representative xi of degree m+n.

    ``n == -1`` is allowed for the zero results of delta on P^{m,0}.
    """

    __slots__ = ("m", "n", "xi", "_inv")

    def __init__(self, m, n, xi):
        self.m = m
        self.n = n
        self.xi = xi
        self._inv = None

    @property
    def algebra(self):
        return self.xi.algebra

    @property
    def total_degree(self):
        return 2 * self.m + self.n

    @property
    def invariant_flag(self):
        """True iff L_{e_j} xi = 0 for every basis element, i.e. xi lies in I^{m,n}."""
        if self._inv is None:
            self._inv = not lie_all(self.xi)
        return self._inv

    def is_zero(self):
        return self.xi.is_zero()

    def _same(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise DegreeMismatch("P^{%d,%d} vs P^{%d,%d}" % (self.m, self.n, other.m, other.n))

    def __add__(self, other):
        self._same(other)
        return BigradedCochain(self.m, self.n, self.xi + other.xi)

    def __sub__(self, other):
        self._same(other)
        return BigradedCochain(self.m, self.n, self.xi - other.xi)

    def __neg__(self):
        return BigradedCochain(self.m, self.n, -self.xi)

    def __rmul__(self, c):
        return BigradedCochain(self.m, self.n, c * self.xi)

    __mul__ = __rmul__

    def __truediv__(self, c):
        return BigradedCochain(self.m, self.n, self.xi / c)

    def __eq__(self, other):
        if not isinstance(other, BigradedCochain):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.m, self.n) == (other.m, other.n) and self.xi == other.xi

    def __hash__(self):
        return hash((self.m, self.n, self.xi))

    def __repr__(self):
        return "BigradedCochain(m=%d, n=%d, terms=%d)" % (self.m, self.n, len(self.xi.coeffs))

    def to_json(self):
        data = self.xi.to_json()
        data["m"] = self.m
        data["n"] = self.n
        return data

    @classmethod
    def from_json(cls, algebra, data):
        xi = Cochain.from_json(algebra, data)
        return make_bigraded(xi, int(data["m"]), int(data["n"]))


def make_bigraded(xi, m, n):
    """Symmetrize xi over its first m arguments (averaging) and read it as an element of P^{m,n}."""
    if xi.degree != m + n or m < 0 or n < 0:
        raise DegreeMismatch("a cochain of degree %d cannot represent P^{%d,%d}" % (xi.degree, m, n))
    coeffs = symmetrize_first(xi.coeffs, m)
    return BigradedCochain(m, n, Cochain._raw(xi.algebra, m + n, coeffs))


def _wrap(alg, m, n, coeffs):
    return BigradedCochain(m, n, Cochain._raw(alg, m + n, coeffs))


def zero(alg, m, n):
    return _wrap(alg, m, n, {})


def evaluate_at(omega, a):
    """The cochain ``omega_A = xi(A, .., A, -)`` of degree n."""
    alg = omega.algebra
    x = _coords(alg, a)
    m = omega.m
    out = {}
    for key, c in omega.xi.coeffs.items():
        w = c
        for i in key[:m]:
            w *= x[i]
            if not w:
                break
        if w:
            _acc(out, key[m:], w)
    return Cochain._raw(alg, omega.n, out)


def _delta_coeffs(coeffs, m, n):
    out = {}
    for key, c in coeffs.items():
        head, form = key[:m], key[m:]
        for k in range(n):
            _acc(out, head + (form[k],) + form[:k] + form[k + 1:], c if k % 2 == 0 else -c)
    return symmetrize_first({k: v for k, v in out.items() if v}, m + 1)


def delta(omega):
    """``(delta omega)_A = i_A omega_A``, from P^{m,n} to P^{m+1,n-1}."""
    m, n = omega.m, omega.n
    if n <= 0:
        return zero(omega.algebra, m + 1, -1)
    return _wrap(omega.algebra, m + 1, n - 1, _delta_coeffs(omega.xi.coeffs, m, n))


def _d_big_coeffs(alg, coeffs, m):
    producers = alg.producers
    out = {}
    # sum_{k=1}^n (-1)^k omega(P; .., A_k A_{k+1}, ..)
    for key, c in coeffs.items():
        head, form = key[:m], key[m:]
        for k in range(len(form)):
            sign = -c if k % 2 == 0 else c
            for a, b, s in producers[form[k]]:
                _acc(out, head + form[:k] + (a, b) + form[k + 1:], sign * s)
    return {k: v for k, v in out.items() if v}


def d_big(omega):
    """Compose with d: apply the differential to the n form arguments."""
    alg = omega.algebra
    if omega.n < 0:
        return omega
    return _wrap(alg, omega.m, omega.n + 1, _d_big_coeffs(alg, omega.xi.coeffs, omega.m))


def ell(omega):
    """``(l omega)_A(A_1..A_{n+1}) = d/dt omega_{A + t A_1}(A_2..A_{n+1}) at t = 0``."""
    m, n = omega.m, omega.n
    if m == 0:
        raise ZeroPolynomialDegree("l lowers the polynomial degree and needs m >= 1")
    out = {}
    for key, c in omega.xi.coeffs.items():
        _acc(out, key[1:m] + (key[0],) + key[m:], m * c)
    return _wrap(omega.algebra, m - 1, n + 1, {k: v for k, v in out.items() if v})


def _h_coeffs(coeffs, m, n):
    out = {}
    for key, c in coeffs.items():
        head, form = key[:m], key[m:]
        for p in range(2, n + 2):
            # omega_A(A_2..A_{p-1}, A_1, A_p..A_n) read at the permuted slots
            new = (form[p - 2],) + form[:p - 2] + form[p - 1:]
            _acc(out, head + new, c if p % 2 == 0 else -c)
    return {k: v for k, v in out.items() if v}


def H_op(omega):
    """``(H omega)_A(A_1..A_n) = sum_{p=2}^{n+1} (-1)^p omega_A(A_2..A_{p-1}, A_1, A_p..A_n)``."""
    if omega.n <= 0:
        return zero(omega.algebra, omega.m, omega.n)
    return _wrap(omega.algebra, omega.m, omega.n, _h_coeffs(omega.xi.coeffs, omega.m, omega.n))


def h_big(omega):
    """The unit homotopy acting on the form arguments: ``-omega_A(1, A_1, ..)``."""
    alg = omega.algebra
    if alg.unit is None:
        raise NoUnit("the homotopy needs a unit")
    if omega.n <= 0:
        raise DegreeMismatch("the homotopy acts on P^{m,n} with n >= 1")
    m = omega.m
    unit = alg.unit
    out = {}
    for key, c in omega.xi.coeffs.items():
        u = unit[key[m]]
        if u:
            _acc(out, key[:m] + key[m + 1:], -u * c)
    return _wrap(alg, m, omega.n - 1, {k: v for k, v in out.items() if v})


def antisymmetrize_form(omega):
    """The antisymmetrizer S acting on the n form arguments."""
    from .cochains import antisymmetrize
    xi = antisymmetrize(omega.xi, offset=omega.m, n=omega.n)
    return BigradedCochain(omega.m, omega.n, xi)


# -- the explicit delta-homotopy ---------------------------------------------

def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p, q):
    size = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(size)]


def Q_polynomial(m, n):
    """Coefficients (ascending powers) of Q^{m,n} with ``delta l Q(H) omega = omega`` on closed omega.

    With ``a_r = m + n - r - 1`` and ``omega_r = prod_{p=2}^{r} (H - (n-p)) omega``,
    each step ``omega_r = delta l omega_r / a_r - omega_{r+1} / a_r`` telescopes;
    ``omega_n`` is antisymmetric in the form slots so ``delta l omega_n = (m+n) omega_n``.
    """
    if m < 1:
        raise ZeroPolynomialDegree("Q^{m,n} needs m >= 1")
    if n == 0:
        return [Fraction(1, m)]
    total = [Fraction(0)]
    prod = [Fraction(1)]  # prod_{p=2}^{r} (x - (n-p))
    denom = Fraction(1)
    for r in range(1, n + 1):
        if r >= 2:
            prod = _poly_mul(prod, [Fraction(-(n - r)), Fraction(1)])
        if r < n:
            denom *= m + n - r - 1
            coeff = Fraction((-1) ** (r + 1)) / denom
        else:
            coeff = Fraction((-1) ** (n - 1)) / (denom * (m + n))
        total = _poly_add(total, [coeff * c for c in prod])
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return total


def apply_polynomial_in_H(coeffs, omega):
    """``Q(H) omega`` by Horner's rule."""
    out = coeffs[-1] * omega
    for c in reversed(coeffs[:-1]):
        out = H_op(out) + c * omega
    return out


def delta_preimage(omega):
    """A preimage ``eta = l Q^{m,n}(H) omega`` with ``delta eta = omega`` for delta-closed omega, m >= 1."""
    if omega.m < 1:
        raise ZeroPolynomialDegree("delta-exactness holds only for m >= 1")
    if not delta(omega).is_zero():
        raise NotClosed("omega is not delta-closed")
    return ell(apply_polynomial_in_H(Q_polynomial(omega.m, omega.n), omega))


# -- subspaces of P and I -----------------------------------------------------

def _orbit_vector(dim, head, form):
    return {tuple_index(h + form, dim): Fraction(1) for h in _arrangements(head)}


@lru_cache(maxsize=None)
def bigraded_subspace(alg, m, n, invariant=True):
    """P^{m,n} (or I^{m,n} when ``invariant``) as a subspace of C^{m+n} coordinates."""
    dim = alg.dim
    heads = list(itertools.combinations_with_replacement(range(dim), m))
    basis = [_orbit_vector(dim, h, f) for h in heads for f in itertools.product(range(dim), repeat=n)]
    ambient = dim ** (m + n)
    if not invariant:
        return Subspace.span(basis, ambient)
    columns = [lie_all(Cochain.from_vector(alg, m + n, v)) for v in basis]
    kern = kernel_of_columns(columns, len(basis))
    return Subspace.span([linalg.combine(x, basis) for x in kern.vectors], ambient)


def subspace_elements(alg, m, n, invariant=True):
    space = bigraded_subspace(alg, m, n, invariant)
    return [BigradedCochain(m, n, Cochain.from_vector(alg, m + n, v)) for v in space.vectors]


def _vec(omega):
    return omega.xi.to_vector()


DeltaModD = namedtuple("DeltaModD", "z b h")


@lru_cache(maxsize=None)
def delta_mod_d_spaces(alg, m, n):
    """``(Z, B)`` for the delta-cohomology modulo d of I, as subspaces of C^{m+n}."""
    ambient = alg.dim ** (m + n)
    alphas = subspace_elements(alg, m, n)
    cols = [delta(a).xi.coeffs for a in alphas]
    if n >= 2:
        betas = subspace_elements(alg, m + 1, n - 2)
        cols += [d_big(b).xi.coeffs for b in betas]
    kern = kernel_of_columns(cols, len(cols))
    k = len(alphas)
    avecs = [_vec(a) for a in alphas]
    z_vectors = [linalg.combine({i: c for i, c in x.items() if i < k}, avecs) for x in kern.vectors]
    z = Subspace.span(z_vectors, ambient)
    b_vectors = []
    if m >= 1:
        b_vectors += [_vec(delta(g)) for g in subspace_elements(alg, m - 1, n + 1)]
    if n >= 1:
        b_vectors += [_vec(d_big(g)) for g in subspace_elements(alg, m, n - 1)]
    b = Subspace.span(b_vectors, ambient)
    return z, b


def delta_mod_d_dims(alg, m, n):
    """``(dim Z, dim B, dim H)`` of the delta-cohomology of I modulo d in bidegree (m, n)."""
    z, b = delta_mod_d_spaces(alg, m, n)
    h = linalg.quotient_dim(z, b)
    return DeltaModD(z.dim, b.dim, h)


def basic_image_dim(alg, n):
    """Dimension of the image of C_B^n in H^{0,n}(delta|d)."""
    from .cohomology import basic_subspace
    z, b = delta_mod_d_spaces(alg, 0, n)
    cb = basic_subspace(alg, n)
    if not z.contains_subspace(cb):
        raise NotClosed("basic cochains should be delta-cocycles")
    return linalg.sum_(b, cb).dim - b.dim
