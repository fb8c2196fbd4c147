"""The graded differential algebra C(A) of multilinear forms on an algebra.

A cochain of degree n is a sparse map from n-tuples of basis indices to
rationals; ``omega(e_I1, ..., e_In) = coeffs[I]``.  Every operator below
works by rewriting index tuples, so cost scales with the number of
nonzero coefficients and no dense tensor is ever built.

Sign conventions:

* ``d omega(A_1..A_{n+1}) = sum_{k=1}^n (-1)^k omega(.., A_k A_{k+1}, ..)``
* ``i_A omega(A_1..A_{n-1}) = sum_{k=0}^{n-1} (-1)^k omega(A_1..A_k, A, ..)``
* ``L_A omega(A_1..A_n) = sum_k omega(.., [A_k, A], ..)``
* the group action is ``(pi omega)(A_1..A_n) = omega(A_pi(1), .., A_pi(n))``.
* ``hochschild_b`` is the Hochschild coboundary of C(A, A*) with its
  overall sign flipped, which is the sign that makes ``C d = b C`` hold
  with the ``d`` above (checked at degrees 1-4 on M_2).
"""

import itertools
import random
from fractions import Fraction
from math import factorial

from .algebra import Element, format_scalar, scalar
from .errors import (
    AlgebraMismatch,
    CapacityExceeded,
    DegreeMismatch,
    DegreeZero,
    IngestionError,
    NoUnit,
    NotAntisymmetric,
)
from . import linalg


class Cochain:
    """An n-linear form on an algebra.  Treat as immutable."""

    __slots__ = ("algebra", "degree", "coeffs")

    def __init__(self, algebra, degree, coeffs=None):
        self.algebra = algebra
        self.degree = degree
        clean = {}
        if coeffs:
            for key, c in coeffs.items():
                key = tuple(key)
                if len(key) != degree:
                    raise DegreeMismatch("index %r does not have length %d" % (key, degree))
                for i in key:
                    if not 0 <= i < algebra.dim:
                        raise IndexError("basis index %d out of range" % i)
                c = scalar(c)
                if c:
                    clean[key] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, algebra, degree, coeffs):
        # trusted constructor: drops zeros, no validation
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.degree = degree
        obj.coeffs = {k: c for k, c in coeffs.items() if c}
        return obj

    @classmethod
    def scalar(cls, algebra, value):
        return cls(algebra, 0, {(): value})

    @classmethod
    def zero(cls, algebra, degree):
        return cls._raw(algebra, degree, {})

    @classmethod
    def basis_form(cls, algebra, index):
        return cls._raw(algebra, len(index), {tuple(index): Fraction(1)})

    def _check(self, other):
        if not isinstance(other, Cochain):
            raise TypeError("expected a Cochain")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("cochains on different algebras")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add degrees %d and %d" % (self.degree, other.degree))
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Cochain._raw(self.algebra, self.degree, out)

    def __neg__(self):
        return Cochain._raw(self.algebra, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = scalar(c)
        return Cochain._raw(self.algebra, self.degree, {k: c * x for k, x in self.coeffs.items()})

    def __mul__(self, c):
        if isinstance(c, Cochain):
            return cochain_product(self, c)
        return self.__rmul__(c)

    def __truediv__(self, c):
        return self.__rmul__(1 / scalar(c))

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return "Cochain(deg=%d, nnz=%d)" % (self.degree, len(self.coeffs))

    def __call__(self, *elements):
        return evaluate(self, elements)

    # coordinates ----------------------------------------------------------

    def to_vector(self):
        n = self.algebra.dim
        return {tuple_index(k, n): c for k, c in self.coeffs.items()}

    @classmethod
    def from_vector(cls, algebra, degree, vec):
        n = algebra.dim
        return cls._raw(algebra, degree, {index_tuple(i, degree, n): c for i, c in vec.items()})

    def to_json(self):
        return {
            "degree": self.degree,
            "coeffs": [{"idx": list(k), "c": format_scalar(c)}
                       for k, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, algebra, data):
        try:
            coeffs = {}
            for entry in data["coeffs"]:
                key = tuple(int(i) for i in entry["idx"])
                coeffs[key] = coeffs.get(key, 0) + scalar(str(entry["c"]))
            return cls(algebra, int(data["degree"]), coeffs)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise IngestionError("malformed cochain JSON: %s" % exc) from None


def tuple_index(key, n):
    """Position of an index tuple in the lexicographic order of [0, n)^len(key)."""
    i = 0
    for k in key:
        i = i * n + k
    return i


def index_tuple(i, degree, n):
    out = [0] * degree
    for pos in range(degree - 1, -1, -1):
        i, out[pos] = divmod(i, n)
    return tuple(out)


def all_indices(alg, degree):
    return itertools.product(range(alg.dim), repeat=degree)


def evaluate(omega, elements):
    """``omega(A_1, ..., A_n)`` for algebra elements (or coordinate sequences)."""
    if len(elements) != omega.degree:
        raise DegreeMismatch("need %d arguments, got %d" % (omega.degree, len(elements)))
    coords = [e.coords if isinstance(e, Element) else tuple(e) for e in elements]
    total = Fraction(0)
    for key, c in omega.coeffs.items():
        term = c
        for pos, i in enumerate(key):
            x = coords[pos][i]
            if not x:
                break
            term *= x
        else:
            total += term
    return total


def _coords(alg, a):
    if isinstance(a, Element):
        if a.algebra is not alg and a.algebra != alg:
            raise AlgebraMismatch("element of a different algebra")
        return a.coords
    coords = tuple(scalar(x) for x in a)
    if len(coords) != alg.dim:
        raise AlgebraMismatch("element has wrong dimension")
    return coords


def _acc(out, key, c):
    v = out.get(key)
    out[key] = c if v is None else v + c


# -- the graded algebra ------------------------------------------------------

def cochain_product(omega, tau):
    """Concatenation product ``(omega . tau)(A_1..A_{n+m}) = omega(A_1..A_n) tau(A_{n+1}..)``."""
    omega._check(tau)
    out = {}
    for k1, c1 in omega.coeffs.items():
        for k2, c2 in tau.coeffs.items():
            out[k1 + k2] = c1 * c2
    return Cochain._raw(omega.algebra, omega.degree + tau.degree, out)


def differential(omega):
    """The differential d, of degree +1; d vanishes on C^0."""
    alg = omega.algebra
    producers = alg.producers
    out = {}
    for key, c in omega.coeffs.items():
        for k in range(len(key)):
            sign = -c if k % 2 == 0 else c  # (-1)^(k+1) with 1-based slot k+1
            head, tail = key[:k], key[k + 1:]
            for a, b, s in producers[key[k]]:
                _acc(out, head + (a, b) + tail, sign * s)
    return Cochain._raw(alg, omega.degree + 1, out)


def insertion(a, omega):
    """The contraction i_A, an antiderivation of degree -1 (zero on C^0)."""
    alg = omega.algebra
    coords = _coords(alg, a)
    out = {}
    if omega.degree == 0:
        # C^{-1} = 0; degree -1 keeps the antiderivation rule well-typed
        return Cochain._raw(alg, -1, {})
    for key, c in omega.coeffs.items():
        for k, i in enumerate(key):
            x = coords[i]
            if x:
                _acc(out, key[:k] + key[k + 1:], c * x if k % 2 == 0 else -c * x)
    return Cochain._raw(alg, omega.degree - 1, out)


def lie_derivative(a, omega):
    """``L_A omega(A_1..A_n) = sum_k omega(.., [A_k, A], ..)``."""
    alg = omega.algebra
    ad = alg.ad_right(_coords(alg, a))
    # transpose: for each output index m, the i with [e_i, A] having e_m-coefficient
    into = {}
    for i, row in ad.items():
        for m, c in row.items():
            into.setdefault(m, []).append((i, c))
    out = {}
    for key, c in omega.coeffs.items():
        for k, m in enumerate(key):
            for i, s in into.get(m, ()):
                _acc(out, key[:k] + (i,) + key[k + 1:], c * s)
    return Cochain._raw(alg, omega.degree, out)


def cartan_lie_derivative(a, omega):
    """``i_A d + d i_A``; equal to :func:`lie_derivative` (Cartan formula)."""
    return insertion(a, differential(omega)) + differential(insertion(a, omega))


def homotopy(omega):
    """Contracting homotopy ``h omega(A_1..A_{n-1}) = -omega(1, A_1, .., A_{n-1})``."""
    alg = omega.algebra
    if alg.unit is None:
        raise NoUnit("the homotopy h needs a unit")
    if omega.degree == 0:
        raise DegreeZero("h is defined on degrees >= 1")
    unit = alg.unit
    out = {}
    for key, c in omega.coeffs.items():
        u = unit[key[0]]
        if u:
            _acc(out, key[1:], -u * c)
    return Cochain._raw(alg, omega.degree - 1, out)


# -- permutations of arguments ----------------------------------------------

def permutation_sign(perm):
    """Signature of a 0-based permutation given as an image sequence."""
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def permute_arguments(omega, perm, offset=0, coefficient=1):
    """``coefficient * (pi omega)`` where pi permutes the argument block starting at ``offset``.

    ``perm`` is 0-based: ``perm[k] = pi(k+1) - 1``, and
    ``(pi omega)(.., A_{offset+1}.., ..) = omega(.., A_{offset+pi(1)}, .., A_{offset+pi(n)}, ..)``.
    """
    n = len(perm)
    if omega.degree < offset + n:
        raise DegreeMismatch("block [%d, %d) exceeds degree %d" % (offset, offset + n, omega.degree))
    out = {}
    for key, c in omega.coeffs.items():
        block = key[offset:offset + n]
        new = [0] * n
        for k in range(n):
            new[perm[k]] = block[k]
        _acc(out, key[:offset] + tuple(new) + key[offset + n:], coefficient * c)
    return Cochain._raw(omega.algebra, omega.degree, out)


def _signed_pull(omega, perms, offset, n):
    """``(sum sign(pi) pi omega)[J] = sum sign(pi) omega[J o pi]`` evaluated key by key."""
    coeffs = omega.coeffs
    targets = set()
    for key in coeffs:
        block = key[offset:offset + n]
        for perm, _ in perms:
            new = [0] * n
            for k in range(n):
                new[perm[k]] = block[k]
            targets.add(key[:offset] + tuple(new) + key[offset + n:])
    out = {}
    for key in targets:
        block = key[offset:offset + n]
        head, tail = key[:offset], key[offset + n:]
        total = 0
        for perm, sign in perms:
            c = coeffs.get(head + tuple(block[perm[k]] for k in range(n)) + tail)
            if c:
                total = total + c if sign > 0 else total - c
        if total:
            out[key] = total
    return Cochain._raw(omega.algebra, omega.degree, out)


def antisymmetrize(omega, offset=0, n=None):
    """``(S omega)(A_1..A_n) = sum_pi sign(pi) omega(A_pi(1), .., A_pi(n))``.

    Acts on the argument block of length ``n`` starting at ``offset``
    (default: all arguments).
    """
    if n is None:
        n = omega.degree - offset
    work = factorial(n) ** 2 * max(1, len(omega.coeffs))
    if work > 50 * linalg.capacity():
        raise CapacityExceeded("antisymmetrization of %d terms over S_%d is too large"
                               % (len(omega.coeffs), n))
    perms = [(p, permutation_sign(p)) for p in itertools.permutations(range(n))]
    return _signed_pull(omega, perms, offset, n)


def cyclic_sum(omega):
    """``(C omega)(A_1..A_n) = sum over rotations gamma of sign(gamma) omega(A_gamma(1), ..)``."""
    n = omega.degree
    if n == 0:
        raise DegreeZero("the cyclic operator is undefined on C^0")
    perms = []
    for s in range(n):
        perm = tuple((k + s) % n for k in range(n))
        perms.append((perm, permutation_sign(perm)))
    return _signed_pull(omega, perms, 0, n)


def is_antisymmetric(omega):
    n = omega.degree
    for key, c in omega.coeffs.items():
        if len(set(key)) < n:
            return False
        for k in range(n - 1):
            swapped = key[:k] + (key[k + 1], key[k]) + key[k + 2:]
            if omega.coeffs.get(swapped, 0) != -c:
                return False
    return True


def ce_differential(omega):
    """Chevalley-Eilenberg differential with trivial coefficients on an antisymmetric form.

    ``(delta omega)(x_1..x_{n+1}) = sum_{i<j} (-1)^{i+j} omega([x_i, x_j], x_1..^i..^j..)``
    """
    if not is_antisymmetric(omega):
        raise NotAntisymmetric("the Chevalley-Eilenberg differential needs an antisymmetric form")
    alg = omega.algebra
    n = omega.degree
    out = {}
    if n == 0:
        return Cochain._raw(alg, 1, {})
    bp = alg.bracket_producers
    positions = list(itertools.combinations(range(n + 1), 2))
    for key, c in omega.coeffs.items():
        rest = key[1:]
        for a, b, s in bp[key[0]]:
            for i, j in positions:
                # 0-based positions, sign (-1)^{(i+1)+(j+1)}
                new = list(rest)
                new.insert(i, a)
                new.insert(j, b)
                _acc(out, tuple(new), c * s if (i + j) % 2 == 0 else -c * s)
    return Cochain._raw(alg, n + 1, out)


def hochschild_b(xi):
    """Hochschild coboundary on C^{n+1}(A) viewed as n-cochains with values in A*.

    ``(b xi)(a_0..a_{n+1}) = -[sum_{j=0}^n (-1)^j xi(.., a_j a_{j+1}, ..)
    + (-1)^{n+1} xi(a_{n+1} a_0, a_1, .., a_n)]``
    """
    alg = xi.algebra
    m = xi.degree
    if m == 0:
        raise DegreeZero("b acts on cochains of degree >= 1")
    producers = alg.producers
    wrap_sign = -1 if m % 2 == 0 else 1  # -(-1)^{n+1} with n = m - 1
    out = {}
    for key, c in xi.coeffs.items():
        for j in range(m):
            head, tail = key[:j], key[j + 1:]
            sj = -c if j % 2 == 0 else c
            for a, b, s in producers[key[j]]:
                _acc(out, head + (a, b) + tail, sj * s)
        rest = key[1:]
        for a, b, s in producers[key[0]]:
            # a = a_{n+1}, b = a_0
            _acc(out, (b,) + rest + (a,), wrap_sign * s * c)
    return Cochain._raw(alg, m + 1, out)


# -- stacked basis operators (used to build matrices) ------------------------

def contract_all(omega):
    """All basis contractions at once: ``{(j,) + J: (i_{e_j} omega)[J]}``."""
    out = {}
    for key, c in omega.coeffs.items():
        for k, i in enumerate(key):
            _acc(out, (i,) + key[:k] + key[k + 1:], c if k % 2 == 0 else -c)
    return {k: c for k, c in out.items() if c}


def contract_all_raw(coeffs):
    out = {}
    for key, c in coeffs.items():
        for k, i in enumerate(key):
            _acc(out, (i,) + key[:k] + key[k + 1:], c if k % 2 == 0 else -c)
    return {k: c for k, c in out.items() if c}


def iterated_contractions(coeffs, times, prefix_len=0):
    """Stack all ``times``-fold compositions of basis contractions.

    Keys of the result are ``(j_1, .., j_times) + J``; contractions act on
    the part of each key after the already-stacked prefix.
    """
    cur = coeffs
    for t in range(times):
        p = prefix_len + t
        out = {}
        for key, c in cur.items():
            pre, body = key[:p], key[p:]
            for k, i in enumerate(body):
                _acc(out, pre + (i,) + body[:k] + body[k + 1:], c if k % 2 == 0 else -c)
        cur = {k: c for k, c in out.items() if c}
    return cur


def lie_all(omega):
    """All basis Lie derivatives at once: ``{(j,) + J: (L_{e_j} omega)[J]}``."""
    bp = omega.algebra.bracket_producers
    out = {}
    for key, c in omega.coeffs.items():
        for k, m in enumerate(key):
            for i, j, s in bp[m]:
                _acc(out, (j,) + key[:k] + (i,) + key[k + 1:], c * s)
    return {k: c for k, c in out.items() if c}


# -- random sampling ---------------------------------------------------------

def random_scalar(rng, num=5, den=4):
    q = rng.randint(1, den)
    return Fraction(rng.randint(-num, num), q)


def random_element(alg, rng):
    return Element(alg, [random_scalar(rng) for _ in range(alg.dim)])


def random_cochain(alg, degree, rng, max_terms=48):
    """A random rational cochain; dense when C^degree has at most ``max_terms`` coordinates."""
    total = alg.dim ** degree
    if total <= max_terms:
        keys = list(all_indices(alg, degree))
    else:
        keys = {tuple(rng.randrange(alg.dim) for _ in range(degree)) for _ in range(max_terms)}
        keys = sorted(keys)
    return Cochain._raw(alg, degree, {k: random_scalar(rng) for k in keys})


def make_rng(seed):
    return random.Random(seed)


# names used in the operator tables
differential_d = differential
insertion_i = insertion
lie_derivative_L = lie_derivative
antisymmetrize_S = antisymmetrize
cyclic_C = cyclic_sum
homotopy_h = homotopy
