"""Finite-dimensional associative algebras over Q given by structure constants.

Basis conventions of the built-in algebras (frozen, reports depend on them):

* ``field``: one basis element ``1``.
* ``matrix(n)``: matrix units ``E_ab`` in row-major order, index ``a*n + b``.
* ``upper_triangular(n)``: the ``E_ab`` with ``a <= b``, row-major.
* ``direct_sum(A, B)``: basis of ``A`` followed by basis of ``B``; the unit
  is the sum of the two units.
"""

import hashlib
import json
from fractions import Fraction
from functools import cached_property

from .errors import (
    AssociativityViolation,
    BadParameter,
    DimensionMismatch,
    IndexOutOfRange,
    IngestionError,
    UnitViolation,
    UnknownAlgebraName,
)


def scalar(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError("not an exact scalar: %r" % (x,))


def format_scalar(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class Element:
    """An element of an algebra, stored as a dense coordinate tuple."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = tuple(scalar(c) for c in coords)
        if len(coords) != algebra.dim:
            raise DimensionMismatch(
                "element has %d coordinates, algebra has dim %d"
                % (len(coords), algebra.dim))
        self.algebra = algebra
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, Element) or other.algebra != self.algebra:
            raise DimensionMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def __rmul__(self, c):
        c = scalar(c)
        return Element(self.algebra, [c * a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        return (isinstance(other, Element) and other.algebra == self.algebra
                and other.coords == self.coords)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def support(self):
        return [(i, c) for i, c in enumerate(self.coords) if c]

    def __repr__(self):
        terms = ["%s*%s" % (format_scalar(c), self.algebra.basis_names[i])
                 for i, c in self.support()]
        return "Element(%s)" % (" + ".join(terms) or "0")


class Algebra:
    """Structure constants ``e_i e_j = sum_k c_ij^k e_k`` plus an optional unit.

    Instances are treated as immutable.  Use :func:`build_algebra` (which
    validates) rather than calling the constructor directly.
    """

    def __init__(self, dim, structure, unit=None, basis_names=None, name=None):
        self.dim = dim
        self.structure = structure  # {(i, j): ((k, c), ...)}
        self.unit = unit  # tuple of Fractions or None
        self.basis_names = list(basis_names or ["e%d" % i for i in range(dim)])
        self.name = name

    # -- derived tables ----------------------------------------------------

    @cached_property
    def producers(self):
        """``producers[k]`` lists ``(i, j, c)`` with ``c`` the e_k-coefficient of e_i e_j."""
        table = [[] for _ in range(self.dim)]
        for (i, j), terms in sorted(self.structure.items()):
            for k, c in terms:
                table[k].append((i, j, c))
        return [tuple(t) for t in table]

    @cached_property
    def brackets(self):
        """``brackets[i][j]`` is ``[e_i, e_j]`` as a dict ``{k: c}``."""
        table = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), terms in self.structure.items():
            for k, c in terms:
                row = table[i][j]
                row[k] = row.get(k, 0) + c
                row = table[j][i]
                row[k] = row.get(k, 0) - c
        for row in table:
            for entry in row:
                for k in [k for k, c in entry.items() if not c]:
                    del entry[k]
        return table

    @cached_property
    def bracket_producers(self):
        """``bracket_producers[k]`` lists ``(i, j, c)`` with [e_i, e_j] having e_k-coefficient c."""
        table = [[] for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in sorted(self.brackets[i][j].items()):
                    table[k].append((i, j, c))
        return [tuple(t) for t in table]

    def ad_right(self, coords):
        """Matrix of ``x -> [x, A]``: returns ``{i: {k: c}}`` with [e_i, A] = sum_k c e_k."""
        out = {}
        for i in range(self.dim):
            acc = {}
            for j, a in enumerate(coords):
                if not a:
                    continue
                for k, c in self.brackets[i][j].items():
                    acc[k] = acc.get(k, 0) + a * c
            acc = {k: c for k, c in acc.items() if c}
            if acc:
                out[i] = acc
        return out

    @property
    def is_unital(self):
        return self.unit is not None

    def basis(self, i):
        if not 0 <= i < self.dim:
            raise IndexOutOfRange("basis index %d out of range" % i)
        return Element(self, [1 if k == i else 0 for k in range(self.dim)])

    def element(self, coords):
        return Element(self, coords)

    def zero(self):
        return Element(self, [0] * self.dim)

    def one(self):
        if self.unit is None:
            raise UnitViolation(-1, "algebra has no unit")
        return Element(self, self.unit)

    def product_of_basis(self, i, j):
        return self.structure.get((i, j), ())

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Algebra) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return "Algebra(%s, dim=%d)" % (self.name or "custom", self.dim)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        structure = []
        for (i, j), terms in sorted(self.structure.items()):
            for k, c in terms:
                structure.append({"i": i, "j": j, "k": k, "c": format_scalar(c)})
        out = {"dim": self.dim, "basis": list(self.basis_names)}
        if self.unit is not None:
            out["unit"] = [format_scalar(c) for c in self.unit]
        out["structure"] = structure
        return out

    @cached_property
    def digest(self):
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @property
    def ident(self):
        return self.name or "custom-" + self.digest


def multiply(alg, x, y):
    if len(x.coords) != alg.dim or len(y.coords) != alg.dim:
        raise DimensionMismatch("operands do not belong to this algebra")
    acc = [Fraction(0)] * alg.dim
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if not b:
                continue
            for k, c in alg.structure.get((i, j), ()):
                acc[k] += a * b * c
    return Element(alg, acc)


def commutator(alg, x, y):
    return multiply(alg, x, y) - multiply(alg, y, x)


def _basis_product(alg, u, v):
    # u, v are dicts {index: coefficient}
    acc = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in alg.structure.get((i, j), ()):
                acc[k] = acc.get(k, 0) + a * b * c
    return {k: c for k, c in acc.items() if c}


def validate_associativity(alg):
    for i in range(alg.dim):
        for j in range(alg.dim):
            ij = _basis_product(alg, {i: 1}, {j: 1})
            for k in range(alg.dim):
                lhs = _basis_product(alg, ij, {k: 1})
                rhs = _basis_product(alg, {i: 1}, _basis_product(alg, {j: 1}, {k: 1}))
                if lhs != rhs:
                    raise AssociativityViolation((i, j, k), lhs, rhs)


def validate_unit(alg):
    if alg.unit is None:
        return
    u = {k: c for k, c in enumerate(alg.unit) if c}
    for i in range(alg.dim):
        if _basis_product(alg, u, {i: 1}) != {i: 1}:
            raise UnitViolation(i, "1 * e_%d != e_%d" % (i, i))
        if _basis_product(alg, {i: 1}, u) != {i: 1}:
            raise UnitViolation(i, "e_%d * 1 != e_%d" % (i, i))


def build_algebra(dim, structure, unit=None, basis_names=None, name=None):
    """Validate and build an algebra.

    ``structure`` maps ``(i, j)`` to either a dict ``{k: c}`` or an iterable of
    ``(k, c)`` pairs.  ``unit`` is a coordinate vector or None.
    """
    if not isinstance(dim, int) or dim < 1:
        raise BadParameter("dimension must be a positive integer")
    table = {}
    for key, terms in structure.items():
        i, j = key
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexOutOfRange("product index (%d, %d) out of range" % (i, j))
        if isinstance(terms, dict):
            terms = terms.items()
        acc = {}
        for k, c in terms:
            if not 0 <= k < dim:
                raise IndexOutOfRange("output index %d out of range" % k)
            acc[k] = acc.get(k, 0) + scalar(c)
        acc = tuple(sorted((k, c) for k, c in acc.items() if c))
        if acc:
            table[(i, j)] = acc
    if unit is not None:
        unit = tuple(scalar(c) for c in unit)
        if len(unit) != dim:
            raise DimensionMismatch("unit has %d coordinates, expected %d" % (len(unit), dim))
    if basis_names is not None and len(basis_names) != dim:
        raise DimensionMismatch("need %d basis names" % dim)
    alg = Algebra(dim, table, unit, basis_names, name)
    validate_associativity(alg)
    validate_unit(alg)
    return alg


# -- the zoo -----------------------------------------------------------------

def field():
    return build_algebra(1, {(0, 0): {0: 1}}, [1], ["1"], name="field")


def matrix(n):
    if not isinstance(n, int) or n < 1:
        raise BadParameter("matrix size must be a positive integer")
    idx = lambda a, b: a * n + b
    structure = {}
    for a in range(n):
        for b in range(n):
            for d in range(n):
                structure[(idx(a, b), idx(b, d))] = {idx(a, d): 1}
    unit = [1 if (k // n == k % n) else 0 for k in range(n * n)]
    names = ["E%d%d" % (a, b) for a in range(n) for b in range(n)]
    return build_algebra(n * n, structure, unit, names, name="matrix:%d" % n)


def upper_triangular(n):
    if not isinstance(n, int) or n < 1:
        raise BadParameter("upper_triangular size must be a positive integer")
    pairs = [(a, b) for a in range(n) for b in range(n) if a <= b]
    index = {p: k for k, p in enumerate(pairs)}
    structure = {}
    for (a, b) in pairs:
        for (c, d) in pairs:
            if b == c:
                structure[(index[a, b], index[c, d])] = {index[a, d]: 1}
    unit = [1 if a == b else 0 for a, b in pairs]
    names = ["E%d%d" % p for p in pairs]
    return build_algebra(len(pairs), structure, unit, names,
                         name="upper_triangular:%d" % n)


def direct_sum(a, b):
    off = a.dim
    structure = {}
    for (i, j), terms in a.structure.items():
        structure[(i, j)] = dict(terms)
    for (i, j), terms in b.structure.items():
        structure[(i + off, j + off)] = {k + off: c for k, c in terms}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = list(a.unit) + list(b.unit)
    names = [s + "_1" for s in a.basis_names] + [s + "_2" for s in b.basis_names]
    name = "direct_sum:%s,%s" % (a.ident, b.ident)
    return build_algebra(a.dim + b.dim, structure, unit, names, name=name)


def builtin(name, *params):
    """Look up a zoo algebra: ``builtin("matrix", 2)``, ``builtin("direct_sum", A, B)``."""
    name = name.replace("-", "_")
    if name in ("field", "K"):
        if params:
            raise BadParameter("field takes no parameters")
        return field()
    if name in ("matrix", "upper_triangular"):
        if len(params) != 1:
            raise BadParameter("%s takes one size parameter" % name)
        try:
            n = int(params[0])
        except (TypeError, ValueError):
            raise BadParameter("bad size %r" % (params[0],)) from None
        return matrix(n) if name == "matrix" else upper_triangular(n)
    if name == "direct_sum":
        if len(params) != 2:
            raise BadParameter("direct_sum takes two algebras")
        parts = [p if isinstance(p, Algebra) else parse_selector(p) for p in params]
        return direct_sum(*parts)
    raise UnknownAlgebraName("unknown algebra %r" % name)


def _split_top(s):
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_selector(sel):
    """Parse ``field``, ``matrix:2``, ``upper_triangular:3`` or
    ``direct_sum:(A),(B)`` (parentheses optional for simple operands)."""
    sel = sel.strip()
    if sel.startswith("(") and sel.endswith(")"):
        sel = sel[1:-1]
    name, _, rest = sel.partition(":")
    if not rest:
        return builtin(name)
    if name.replace("-", "_") == "direct_sum":
        return builtin(name, *_split_top(rest))
    return builtin(name, *rest.split(","))


# -- JSON ingestion ----------------------------------------------------------

def algebra_from_json(data, name=None):
    try:
        dim = data["dim"]
        structure = {}
        for entry in data.get("structure", []):
            key = (int(entry["i"]), int(entry["j"]))
            structure.setdefault(key, []).append((int(entry["k"]), scalar(str(entry["c"]))))
        unit = data.get("unit")
        if unit is not None:
            unit = [scalar(str(c)) for c in unit]
        basis = data.get("basis")
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise IngestionError("malformed algebra JSON: %s" % exc) from None
    if not isinstance(dim, int):
        raise IngestionError("'dim' must be an integer")
    return build_algebra(dim, structure, unit, basis, name=name)


def load_algebra(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IngestionError("cannot read algebra file %s: %s" % (path, exc)) from None
    return algebra_from_json(data)
