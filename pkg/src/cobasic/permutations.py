"""Exact arithmetic in the group algebra Q[S_n].

Permutations are tuples of 1-based images.  The product is composition,
``(pi * sigma)(k) = pi(sigma(k))``, and the action on cochains is
``(pi omega)(A_1..A_n) = omega(A_pi(1), .., A_pi(n))``.  With these two
conventions the action is a left action:
``apply(x * y, omega) == apply(x, apply(y, omega))``.
"""

import itertools
from fractions import Fraction
from math import factorial

from .algebra import scalar
from .cochains import Cochain, permute_arguments
from .errors import BadIndex, CapacityExceeded, DegreeMismatch, SizeMismatch

DEFAULT_MAX_N = 6
HARD_MAX_N = 8


def _check_size(n, large=False):
    limit = HARD_MAX_N if large else DEFAULT_MAX_N
    if n > limit:
        raise CapacityExceeded(
            "S_%d exceeds the brute-force limit n <= %d%s"
            % (n, limit, "" if large else " (pass large=True for n <= 8)"))


class Permutation(tuple):
    """A bijection of {1..n}, stored as its image sequence."""

    def __new__(cls, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise BadIndex("%r is not a permutation of 1..%d" % (images, len(images)))
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @property
    def n(self):
        return len(self)

    def __call__(self, k):
        return self[k - 1]

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        if len(other) != len(self):
            raise SizeMismatch("cannot compose S_%d with S_%d" % (len(self), len(other)))
        return Permutation._trusted(tuple(self[o - 1] for o in other))

    def inverse(self):
        inv = [0] * len(self)
        for k, img in enumerate(self):
            inv[img - 1] = k + 1
        return Permutation._trusted(tuple(inv))

    @classmethod
    def _trusted(cls, images):
        return super().__new__(cls, images)

    def zero_based(self):
        return tuple(i - 1 for i in self)

    def __repr__(self):
        return "Permutation(%s)" % (list(self),)


def signature(pi):
    """+1 or -1; counts inversions."""
    inv = 0
    for i in range(len(pi)):
        for j in range(i + 1, len(pi)):
            if pi[i] > pi[j]:
                inv += 1
    return -1 if inv % 2 else 1


def gamma(p, n):
    """The cycle ``(1, .., p, .., n) -> (2, .., p, 1, p+1, .., n)``."""
    if not 1 <= p <= n:
        raise BadIndex("gamma_p needs 1 <= p <= n, got p=%d, n=%d" % (p, n))
    images = [k + 1 for k in range(1, p)] + [1] + list(range(p + 1, n + 1))
    return Permutation(images)


class GroupAlgebraElement:
    """A finite formal sum ``sum c_pi pi`` in Q[S_n]."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for pi, c in (terms or {}).items():
            if not isinstance(pi, Permutation):
                pi = Permutation(pi)
            if len(pi) != n:
                raise SizeMismatch("permutation of size %d in Q[S_%d]" % (len(pi), n))
            c = scalar(c)
            if c:
                clean[pi] = clean.get(pi, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = {k: v for k, v in terms.items() if v}
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw(n, {Permutation.identity(n): Fraction(1)})

    @classmethod
    def of(cls, pi, c=1):
        return cls._raw(len(pi), {Permutation(pi): scalar(c)})

    def _same(self, other):
        if not isinstance(other, GroupAlgebraElement):
            raise TypeError("expected a group algebra element")
        if other.n != self.n:
            raise SizeMismatch("Q[S_%d] vs Q[S_%d]" % (self.n, other.n))

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement._raw(self.n, out)

    def __neg__(self):
        return GroupAlgebraElement._raw(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = scalar(c)
        return GroupAlgebraElement._raw(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_multiply(self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement) and self.n == other.n
                and self.terms == other.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, pi):
        return self.terms.get(Permutation(pi), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self):
        from .algebra import format_scalar
        return {"n": self.n,
                "terms": [{"perm": list(p), "c": format_scalar(c)} for p, c in self.sorted_terms()]}

    def __repr__(self):
        return "GroupAlgebraElement(n=%d, terms=%d)" % (self.n, len(self.terms))


def ga_multiply(x, y):
    x._same(y)
    out = {}
    for p, a in x.terms.items():
        for q, b in y.terms.items():
            r = tuple(p[i - 1] for i in q)
            out[r] = out.get(r, 0) + a * b
    return GroupAlgebraElement._raw(x.n, {Permutation._trusted(k): v for k, v in out.items()})


def _all_permutations(n):
    return (Permutation._trusted(p) for p in itertools.permutations(range(1, n + 1)))


def S_element(n, large=False):
    """The antisymmetrizer ``sum_pi sign(pi) pi``."""
    _check_size(n, large)
    return GroupAlgebraElement._raw(
        n, {p: Fraction(signature(p)) for p in _all_permutations(n)})


def Hk_element(k, n, large=False):
    """``H_(k) = sum sign(pi) pi`` over pi with pi^-1(k+1) < .. < pi^-1(n)."""
    if not 1 <= k <= n:
        raise BadIndex("H_(k) needs 1 <= k <= n, got k=%d, n=%d" % (k, n))
    _check_size(n, large)
    terms = {}
    for p in _all_permutations(n):
        inv = p.inverse()
        tail = [inv[q - 1] for q in range(k + 1, n + 1)]
        if all(a < b for a, b in zip(tail, tail[1:])):
            terms[p] = Fraction(signature(p))
    return GroupAlgebraElement._raw(n, terms)


def H_element(n):
    """``H = H_(1)`` written as the alternating sum of the cycles gamma_p."""
    out = {}
    for p in range(1, n + 1):
        g = gamma(p, n)
        out[g] = out.get(g, 0) + Fraction((-1) ** (p + 1))
    return GroupAlgebraElement._raw(n, out)


def polynomial_in(x, roots):
    """``prod_r (x - r id)`` for the listed scalars r."""
    out = GroupAlgebraElement.identity(x.n)
    ident = GroupAlgebraElement.identity(x.n)
    for r in roots:
        out = ga_multiply(out, x - r * ident)
    return out


def lemma_recursion_check(n, k, large=False):
    """Does ``H H_(k) = k H_(k) + H_(k+1)`` hold in Q[S_n]?"""
    if not 1 <= k <= n - 1:
        raise BadIndex("need 1 <= k <= n-1, got k=%d, n=%d" % (k, n))
    h = Hk_element(1, n, large)
    hk = Hk_element(k, n, large)
    return ga_multiply(h, hk) == k * hk + Hk_element(k + 1, n, large)


def lemma_product_check(n, large=False):
    """Do ``prod_{p<n}(H - p) = S`` and ``prod_{p<n-1}(H - p) = S`` both hold?"""
    if n < 2:
        raise BadIndex("the product formula needs n >= 2")
    h = H_element(n)
    s = S_element(n, large)
    short = polynomial_in(h, range(n - 1))
    full = ga_multiply(short, h - (n - 1) * GroupAlgebraElement.identity(n))
    return short == s and full == s


def apply_to_cochain(x, omega, offset=0):
    """Let ``x`` act on the argument block ``[offset+1, offset+n]`` of ``omega``."""
    if omega.degree < offset + x.n:
        raise DegreeMismatch("block of size %d at offset %d exceeds degree %d"
                             % (x.n, offset, omega.degree))
    out = {}
    for p, c in x.sorted_terms():
        part = permute_arguments(omega, p.zero_based(), offset, c)
        for key, v in part.coeffs.items():
            out[key] = out.get(key, 0) + v
    return Cochain._raw(omega.algebra, omega.degree, out)
