"""Horizontal, invariant and basic subcomplexes of C(A) and their cohomology.

Subspaces of C^n(A) are expressed in the lexicographic coordinates of
index tuples (see :func:`cobasic.cochains.tuple_index`).  Computations are
cached per ``(algebra, degree)``; algebras hash by their structure digest.
"""

import csv
import io
import itertools
from dataclasses import asdict, dataclass, field as _field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import linalg
from .cochains import (
    Cochain,
    all_indices,
    contract_all_raw,
    differential,
    lie_all,
)
from .errors import NoUnit, SubcomplexViolation, TheoremViolation
from .linalg import Subspace, kernel_of_columns

VARIANTS = ("full", "invariant", "basic")


def _basis_coeffs(alg, n):
    for key in all_indices(alg, n):
        yield {key: Fraction(1)}


def _vec_to_coeffs(alg, n, vec):
    return Cochain.from_vector(alg, n, vec).coeffs


def _coeffs_to_vec(alg, coeffs):
    from .cochains import tuple_index
    return {tuple_index(k, alg.dim): c for k, c in coeffs.items()}


@lru_cache(maxsize=None)
def horizontal_subspace(alg, n):
    """C_H^n: forms killed by every contraction i_{e_j}."""
    if n == 0:
        return Subspace.full(1)
    cols = [contract_all_raw(c) for c in _basis_coeffs(alg, n)]
    return kernel_of_columns(cols, alg.dim ** n)


@lru_cache(maxsize=None)
def invariant_subspace(alg, n):
    """C_I^n: forms killed by every Lie derivative L_{e_j}."""
    if n == 0:
        return Subspace.full(1)
    cols = [lie_all(Cochain._raw(alg, n, c)) for c in _basis_coeffs(alg, n)]
    return kernel_of_columns(cols, alg.dim ** n)


@lru_cache(maxsize=None)
def basic_subspace(alg, n):
    """C_B^n = C_H^n ∩ C_I^n, found as the horizontal part of the invariant basis."""
    inv = invariant_subspace(alg, n)
    if n == 0:
        return inv
    basis = [_vec_to_coeffs(alg, n, v) for v in inv.vectors]
    coeffs = kernel_of_columns([contract_all_raw(b) for b in basis], len(basis))
    vecs = [linalg.combine(x, inv.vectors) for x in coeffs.vectors]
    return Subspace.span(vecs, alg.dim ** n)


def subcomplex(alg, variant, n):
    if variant == "full":
        return Subspace.full(alg.dim ** n)
    if variant == "invariant":
        return invariant_subspace(alg, n)
    if variant == "basic":
        return basic_subspace(alg, n)
    raise ValueError("unknown variant %r (expected one of %s)" % (variant, ", ".join(VARIANTS)))


def subspace_cochains(alg, n, space):
    return [Cochain.from_vector(alg, n, v) for v in space.vectors]


def _in_variant(alg, variant, cochain):
    if variant == "full":
        return True
    if lie_all(cochain):
        return False
    if variant == "basic" and contract_all_raw(cochain.coeffs):
        return False
    return True


@lru_cache(maxsize=None)
def _differential_data(alg, variant, n):
    """``(images, cocycles)`` for d restricted to the variant's degree-n subspace.

    ``images`` are the vectors d(v) in C^{n+1}; ``cocycles`` a canonical basis
    of the kernel, as vectors of C^n.
    """
    space = subcomplex(alg, variant, n)
    if variant == "full":
        images = [differential(Cochain._raw(alg, n, c)).coeffs for c in _basis_coeffs(alg, n)]
    else:
        images = [differential(Cochain.from_vector(alg, n, v)).coeffs for v in space.vectors]
    coeffs = kernel_of_columns(images, len(images))
    if variant == "full":
        cocycles = coeffs
    else:
        cocycles = Subspace.span([linalg.combine(x, space.vectors) for x in coeffs.vectors],
                                 alg.dim ** n)
    return tuple(images), cocycles


def check_subcomplex(alg, variant, n):
    """Raise unless d maps the degree-n subspace into the degree-(n+1) one."""
    images, _ = _differential_data(alg, variant, n)
    for img in images:
        if not _in_variant(alg, variant, Cochain._raw(alg, n + 1, img)):
            raise SubcomplexViolation("d leaves the %s subcomplex in degree %d" % (variant, n))


@dataclass
class CohomologyRow:
    n: int
    dimC: int
    dimCH: int
    dimCI: int
    dimCB: int
    dimV: int
    dimZ: int
    dimB: int
    dimH: int


@dataclass
class CohomologyReport:
    algebra: str
    variant: str
    rows: list = _field(default_factory=list)

    @property
    def dims(self):
        return [r.dimH for r in self.rows]

    def to_json(self):
        return {"algebra": self.algebra, "variant": self.variant,
                "rows": [asdict(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data):
        return cls(data["algebra"], data["variant"], [CohomologyRow(**r) for r in data["rows"]])

    def to_csv(self):
        buf = io.StringIO()
        names = list(CohomologyRow.__dataclass_fields__)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["algebra", "variant"] + names)
        for r in self.rows:
            writer.writerow([self.algebra, self.variant] + [getattr(r, k) for k in names])
        return buf.getvalue()


def cohomology_dims(alg, variant, n_max):
    """Dimensions of H^n of the chosen subcomplex for 0 <= n <= n_max."""
    report = CohomologyReport(alg.ident, variant)
    prev_rank = 0
    for n in range(n_max + 1):
        if n:
            check_subcomplex(alg, variant, n - 1)
        space = subcomplex(alg, variant, n)
        images, cocycles = _differential_data(alg, variant, n)
        dim_z = cocycles.dim
        rank_n = space.dim - dim_z
        report.rows.append(CohomologyRow(
            n=n,
            dimC=alg.dim ** n,
            dimCH=horizontal_subspace(alg, n).dim,
            dimCI=invariant_subspace(alg, n).dim,
            dimCB=basic_subspace(alg, n).dim,
            dimV=space.dim,
            dimZ=dim_z,
            dimB=prev_rank,
            dimH=dim_z - prev_rank,
        ))
        prev_rank = rank_n
    return report


def coboundaries(alg, variant, n):
    """d of the degree-(n-1) subspace, as a subspace of C^n."""
    if n == 0:
        return Subspace.zero(1)
    images, _ = _differential_data(alg, variant, n - 1)
    return Subspace.span([_coeffs_to_vec(alg, img) for img in images], alg.dim ** n)


def representatives(alg, variant, n):
    """Cocycles whose classes form a basis of H^n of the variant.

    Chosen greedily along the canonical (reduced echelon) basis of the
    cocycle space, skipping anything already spanned by coboundaries and
    earlier picks.
    """
    _, cocycles = _differential_data(alg, variant, n)
    bnd = coboundaries(alg, variant, n)
    ech = linalg._Echelon()
    for v in bnd.vectors:
        ech.insert(linalg._primitive(v))
    out = []
    for z in cocycles.vectors:
        if ech.insert(linalg._primitive(z)):
            out.append(Cochain.from_vector(alg, n, z))
    return out


def basic_representatives(alg, n):
    return representatives(alg, "basic", n)


# -- invariant polynomials (independent pipeline) ----------------------------

def monomials(dim, n):
    """Exponent multisets of degree n as sorted index tuples, lexicographic."""
    return list(itertools.combinations_with_replacement(range(dim), n))


@lru_cache(maxsize=None)
def invariant_polynomials(alg, n):
    """Ad*-invariant homogeneous polynomials of degree n on the Lie algebra of ``alg``.

    Computed in the polynomial ring: p is invariant iff
    ``sum_i [x, e_j]_i dp/dx_i = 0`` for every basis element e_j.  Returned
    as a subspace of the monomial coordinate space (dimension
    binomial(dim + n - 1, n)), coordinates ordered as :func:`monomials`.
    """
    mons = monomials(alg.dim, n)
    if n == 0:
        return Subspace.full(1)
    # [e_k, e_j] = sum_i c e_i, i.e. x_k contributes c * x_k d/dx_i for generator j
    brackets = alg.brackets
    columns = []
    for mon in mons:
        expo = {}
        for i in mon:
            expo[i] = expo.get(i, 0) + 1
        col = {}
        for j in range(alg.dim):
            for i, a in expo.items():
                # d/dx_i lowers x_i once, times multiplicity a
                for k in range(alg.dim):
                    c = brackets[k][j].get(i)
                    if not c:
                        continue
                    new = list(mon)
                    new.remove(i)
                    new.append(k)
                    key = (j, tuple(sorted(new)))
                    col[key] = col.get(key, 0) + a * c
        columns.append({k: v for k, v in col.items() if v})
    return kernel_of_columns(columns, len(mons))


def multinomial(mon):
    counts = {}
    for i in mon:
        counts[i] = counts.get(i, 0) + 1
    out = factorial(len(mon))
    for c in counts.values():
        out //= factorial(c)
    return out


def polynomial_to_symmetric(alg, n, vec):
    """The symmetric n-form xi with ``xi(x, .., x) = p(x)`` for a monomial vector ``vec``."""
    mons = monomials(alg.dim, n)
    out = {}
    for idx, c in vec.items():
        mon = mons[idx]
        value = Fraction(c) / multinomial(mon)
        for key in set(itertools.permutations(mon)):
            out[key] = value
    return Cochain._raw(alg, n, out)


def invariant_polynomial_dims(alg, n_max):
    return [invariant_polynomials(alg, k).dim for k in range(n_max + 1)]


def theorem1_check(alg, n_max):
    """Compare dim H_B^{2k} with dim I^k_S and check odd basic cohomology vanishes."""
    if not alg.is_unital:
        raise NoUnit("the comparison with invariant polynomials needs a unital algebra")
    report = cohomology_dims(alg, "basic", n_max)
    basic = report.dims
    poly = invariant_polynomial_dims(alg, n_max // 2)
    mismatches = []
    for n, h in enumerate(basic):
        expected = poly[n // 2] if n % 2 == 0 else 0
        if h != expected:
            mismatches.append(n)
    result = {
        "algebra": alg.ident,
        "n_max": n_max,
        "basic_dims": basic,
        "invariant_polynomial_dims": poly,
        "holds": not mismatches,
    }
    if mismatches:
        raise TheoremViolation("H_B and invariant polynomials disagree in degrees %s" % mismatches,
                               tables=result)
    return result


def dim_polynomials(dim, n):
    return comb(dim + n - 1, n)
