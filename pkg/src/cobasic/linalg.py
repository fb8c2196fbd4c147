"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: Fraction}`` without zero entries.  Elimination
is done on primitive integer rows (fraction-free, content-normalized); the
only rational arithmetic happens when the final reduced echelon form is
normalized to leading coefficient 1.

Every subspace is stored by its reduced row-echelon basis, which is unique,
so two equal subspaces compare equal coefficient by coefficient.
"""

import os
from contextlib import contextmanager
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd, lcm

from .errors import AmbientMismatch, CapacityExceeded, NotASubspace

DEFAULT_CAPACITY = 5_000_000
_capacity_override = None


def capacity():
    """Maximum number of stored nonzero entries per matrix or echelon form."""
    if _capacity_override is not None:
        return _capacity_override
    env = os.environ.get("COBASIC_CAPACITY")
    if env:
        return int(env)
    return DEFAULT_CAPACITY


@contextmanager
def capacity_limit(n):
    global _capacity_override
    old = _capacity_override
    _capacity_override = n
    try:
        yield
    finally:
        _capacity_override = old


def _guard(nnz, what="matrix"):
    if nnz > capacity():
        raise CapacityExceeded("%s holds %d nonzeros (limit %d)" % (what, nnz, capacity()))


# -- integer row helpers -----------------------------------------------------

def _primitive(row):
    """Scale a rational row to a primitive integer row with positive leading entry."""
    den = 1
    for x in row.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    out = {}
    for k, x in row.items():
        if x:
            out[k] = int(x * den) if den != 1 else int(x)
    return _normalize(out)


def _normalize(row):
    if not row:
        return row
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: x // g for k, x in row.items()}
    return row


class _Echelon:
    """Integer semi-echelon form: distinct leading columns, nothing else."""

    def __init__(self):
        self.pivots = {}
        self.nnz = 0

    def reduce_lead(self, v):
        """Eliminate pivot columns from ``v`` until its leading column is free.

        Returns ``(v, lead)``; ``lead`` is None when ``v`` reduced to zero.
        """
        pivots = self.pivots
        heap = list(v)
        heapify(heap)
        steps = 0
        while heap:
            c = heappop(heap)
            if c not in v:
                continue
            p = pivots.get(c)
            if p is None:
                return v, c
            a, b = p[c], v[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                v = {k: a * x for k, x in v.items()}
            for k, x in p.items():
                y = v.get(k)
                if y is None:
                    v[k] = -b * x
                    heappush(heap, k)
                else:
                    y -= b * x
                    if y:
                        v[k] = y
                    else:
                        del v[k]
            steps += 1
            if steps % 32 == 0:
                v = _content_free(v)
        return v, None

    def insert(self, v):
        v, lead = self.reduce_lead(v)
        if lead is None:
            return False
        v = _normalize(_content_free(v))
        self.pivots[lead] = v
        self.nnz += len(v)
        _guard(self.nnz, "echelon form")
        return True

    def reduced(self):
        """Fully reduced rows ``{pivot: {col: Fraction}}`` with leading entry 1."""
        red = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c])
            for k in [k for k in row if k != c and k in red]:
                x = row.get(k)
                if not x:
                    continue
                r = red[k]
                a = r[k]
                g = gcd(a, x)
                a //= g
                b = x // g
                if a != 1:
                    row = {j: a * y for j, y in row.items()}
                for j, y in r.items():
                    z = row.get(j, 0) - b * y
                    if z:
                        row[j] = z
                    else:
                        row.pop(j, None)
            red[c] = _content_free(row)
        out = {}
        for c, row in red.items():
            lead = row[c]
            out[c] = {k: Fraction(x, lead) for k, x in row.items()}
        return out


def _content_free(v):
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            return v
    if g > 1:
        return {k: x // g for k, x in v.items()}
    return v


# -- matrices ---------------------------------------------------------------

class SparseMatrix:
    """A ``rows x cols`` rational matrix stored as a list of row dicts."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        data = [dict() for _ in range(rows)]
        if entries:
            for (r, c), x in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
                x = Fraction(x)
                if x:
                    data[r][c] = x
        self._data = data
        _guard(self.nnz)

    @classmethod
    def from_rows(cls, rows, cols):
        m = cls(0, cols)
        data = []
        for row in rows:
            clean = {}
            for c, x in row.items():
                if not 0 <= c < cols:
                    raise IndexError("column %d outside width %d" % (c, cols))
                if x:
                    clean[c] = Fraction(x)
            data.append(clean)
        m._data = data
        m.rows = len(data)
        _guard(m.nnz)
        return m

    @classmethod
    def from_dense(cls, dense, cols=None):
        if cols is None:
            cols = len(dense[0]) if dense else 0
        return cls.from_rows([{c: x for c, x in enumerate(r) if x} for r in dense], cols)

    @classmethod
    def from_columns(cls, columns, rows):
        data = [dict() for _ in range(rows)]
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    data[r][c] = Fraction(x)
        m = cls(0, len(columns))
        m._data = data
        m.rows = rows
        _guard(m.nnz)
        return m

    @classmethod
    def identity(cls, n):
        return cls.from_rows([{i: 1} for i in range(n)], n)

    @property
    def entries(self):
        return {(r, c): x for r, row in enumerate(self._data) for c, x in row.items()}

    @property
    def nnz(self):
        return sum(len(r) for r in self._data)

    def row(self, r):
        return dict(self._data[r])

    def row_dicts(self):
        return [dict(r) for r in self._data]

    def column_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for r, row in enumerate(self._data):
            for c, x in row.items():
                cols[c][r] = x
        return cols

    def transpose(self):
        return SparseMatrix.from_rows(self.column_dicts(), self.rows)

    def apply(self, v):
        out = {}
        for r, row in enumerate(self._data):
            s = 0
            for c, x in row.items():
                y = v.get(c)
                if y:
                    s += x * y
            if s:
                out[r] = Fraction(s)
        return out

    def to_dense(self):
        return [[row.get(c, Fraction(0)) for c in range(self.cols)] for row in self._data]

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._data == other._data)

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz)


def _echelon_of(rows):
    # short rows first keeps fill-in low; the reduced form does not depend on order
    ech = _Echelon()
    for row in sorted((r for r in rows if r), key=len):
        ech.insert(_primitive(row))
    return ech


def rref(m):
    """Return ``(rank, E)`` with ``E`` the unique reduced row-echelon form (zero rows dropped)."""
    red = _echelon_of(m._data).reduced()
    rows = [red[c] for c in sorted(red)]
    return len(rows), SparseMatrix.from_rows(rows, m.cols)


def rank(m):
    return len(_echelon_of(m._data).pivots)


def rank_of_vectors(vectors):
    return len(_echelon_of(vectors).pivots)


# -- subspaces --------------------------------------------------------------

class Subspace:
    """A subspace of Q^ambient_dim held as its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim, reduced_rows):
        # reduced_rows: {pivot: row} already in reduced form with leading 1
        self.ambient_dim = ambient_dim
        self._pivots = tuple(sorted(reduced_rows))
        self._rows = tuple(reduced_rows[c] for c in self._pivots)

    @classmethod
    def span(cls, vectors, ambient_dim):
        for v in vectors:
            for c in v:
                if not 0 <= c < ambient_dim:
                    raise AmbientMismatch("coordinate %d outside ambient dim %d" % (c, ambient_dim))
        return cls(ambient_dim, _echelon_of(vectors).reduced())

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, {})

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, {i: {i: Fraction(1)} for i in range(ambient_dim)})

    @property
    def dim(self):
        return len(self._rows)

    @property
    def pivots(self):
        return self._pivots

    @property
    def vectors(self):
        return [dict(r) for r in self._rows]

    @property
    def basis(self):
        return SparseMatrix.from_rows(self._rows, self.ambient_dim)

    def residual(self, v):
        """``v`` minus its component along this subspace's pivot coordinates."""
        out = dict(v)
        for p, row in zip(self._pivots, self._rows):
            x = out.get(p)
            if x:
                for c, y in row.items():
                    z = out.get(c, 0) - x * y
                    if z:
                        out[c] = z
                    else:
                        out.pop(c, None)
        return out

    def __contains__(self, v):
        return not self.residual(v)

    def contains_subspace(self, other):
        _same_ambient(self, other)
        return all(not self.residual(r) for r in other._rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.ambient_dim, self._pivots))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)


def _same_ambient(u, v):
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch("ambient dimensions %d and %d differ" % (u.ambient_dim, v.ambient_dim))


def _components(rows):
    """Group row indices by connected component of the row/column incidence graph."""
    parent = {}

    def find(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        if first not in parent:
            parent[first] = first
        r0 = find(first)
        for c in it:
            if c not in parent:
                parent[c] = r0
            else:
                r1 = find(c)
                if r1 != r0:
                    parent[r1] = r0
    groups = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(next(iter(row))), []).append(i)
    return parent, find, groups


def kernel_vectors(rows, ncols):
    """Basis (not canonical) of ``{x : row . x = 0 for every row}``."""
    _guard(sum(len(r) for r in rows))
    parent, find, groups = _components(rows)
    out = []
    touched = set(parent)
    for c in range(ncols):
        if c not in touched:
            out.append({c: Fraction(1)})
    by_root = {}
    for c in parent:
        by_root.setdefault(find(c), []).append(c)
    for root, idxs in groups.items():
        ech = _echelon_of(rows[i] for i in idxs)
        red = ech.reduced()
        cols = by_root[root]
        for f in sorted(c for c in cols if c not in red):
            vec = {f: Fraction(1)}
            for p, row in red.items():
                x = row.get(f)
                if x:
                    vec[p] = -x
            out.append(vec)
    return out


def kernel(m):
    """``{v : m v = 0}``."""
    return Subspace.span(kernel_vectors(m._data, m.cols), m.cols)


def kernel_of_columns(columns, ncols=None):
    """Kernel of the map whose ``c``-th column is ``columns[c]`` (dicts with arbitrary row keys)."""
    if ncols is None:
        ncols = len(columns)
    rows = {}
    for c, col in enumerate(columns):
        for key, x in col.items():
            if x:
                rows.setdefault(key, {})[c] = x
    return Subspace.span(kernel_vectors(list(rows.values()), ncols), ncols)


def image(m):
    return Subspace.span(m.column_dicts(), m.rows)


def sum_(u, v):
    _same_ambient(u, v)
    return Subspace.span(list(u._rows) + list(v._rows), u.ambient_dim)


def intersect(u, v):
    _same_ambient(u, v)
    if not u.dim or not v.dim:
        return Subspace.zero(u.ambient_dim)
    if u.dim > v.dim:
        u, v = v, u
    coeffs = kernel_of_columns([v.residual(r) for r in u._rows])
    vecs = []
    for x in coeffs.vectors:
        w = {}
        for i, a in x.items():
            for c, y in u._rows[i].items():
                w[c] = w.get(c, 0) + a * y
        vecs.append({c: y for c, y in w.items() if y})
    return Subspace.span(vecs, u.ambient_dim)


def preimage(m, w):
    """``{v : m v in w}`` for a ``SparseMatrix`` m and a subspace w of its target."""
    if w.ambient_dim != m.rows:
        raise AmbientMismatch("target subspace lives in dim %d, matrix has %d rows" % (w.ambient_dim, m.rows))
    cols = [w.residual(col) for col in m.column_dicts()]
    return kernel_of_columns(cols, m.cols)


def quotient_dim(u, v):
    """``dim u - dim v`` for ``v`` a subspace of ``u`` (checked)."""
    _same_ambient(u, v)
    if not u.contains_subspace(v):
        raise NotASubspace("second argument is not contained in the first")
    return u.dim - v.dim


def membership(vec, u):
    return vec in u


def combine(coeffs, vectors):
    """``sum_i coeffs[i] * vectors[i]`` for sparse dict vectors."""
    out = {}
    for i, a in coeffs.items():
        if not a:
            continue
        for c, x in vectors[i].items():
            out[c] = out.get(c, 0) + a * x
    return {c: x for c, x in out.items() if x}
