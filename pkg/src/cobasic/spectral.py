"""The spectral sequence of the filtration of C(A) by the Cartan operation.

``F^p(C^n) = {omega : i_{A_1} .. i_{A_{n-p+1}} omega = 0}``.  Pages are
computed from the closed formula for a filtered complex,

    E_r^{p,q} = Z_r / (F^{p+1} ∩ d^{-1} F^{p+r} + d F^{p-r+1} ∩ F^p),
    Z_r = F^p ∩ d^{-1} F^{p+r},      n = p + q,

so every cell is a quotient of two explicit subspaces of C^n.  The
preimages ``d^{-1} F^s`` are kernels of (stacked contractions) o d, which
avoids building subspaces of C^{n+1}.
"""

import itertools
from dataclasses import dataclass, field as _field
from functools import lru_cache

from . import linalg
from .cochains import (
    Cochain,
    all_indices,
    antisymmetrize,
    ce_differential,
    differential,
    iterated_contractions,
)
from .errors import ConvergenceViolation, NoUnit
from .linalg import Subspace, kernel_of_columns


def _basis_images(alg, n):
    """d(e^I) for the basis forms of C^n, in lexicographic order."""
    return [differential(Cochain._raw(alg, n, {key: 1})).coeffs for key in all_indices(alg, n)]


@lru_cache(maxsize=None)
def filtration_subspace(alg, p, n):
    """F^p(C^n): killed by every (n-p+1)-fold composition of basis contractions."""
    ambient = alg.dim ** n
    times = n - p + 1
    if times <= 0:
        return Subspace.zero(ambient)
    if times > n:
        return Subspace.full(ambient)
    cols = [iterated_contractions({key: 1}, times) for key in all_indices(alg, n)]
    return kernel_of_columns(cols, ambient)


@lru_cache(maxsize=None)
def pre_filtration(alg, s, n):
    """``d^{-1} F^s(C^{n+1})`` inside C^n."""
    ambient = alg.dim ** n
    times = n + 1 - s + 1
    if times > n + 1:
        return Subspace.full(ambient)
    images = _basis_images(alg, n)
    if times <= 0:
        return kernel_of_columns(images, ambient)
    return kernel_of_columns([iterated_contractions(img, times) for img in images], ambient)


@lru_cache(maxsize=None)
def _image_of(alg, s, n):
    """``d F^s(C^{n-1})`` as a subspace of C^n."""
    ambient = alg.dim ** n
    if n == 0:
        return Subspace.zero(ambient)
    src = filtration_subspace(alg, s, n - 1)
    imgs = [differential(Cochain.from_vector(alg, n - 1, v)).to_vector() for v in src.vectors]
    return Subspace.span(imgs, ambient)


@lru_cache(maxsize=None)
def _cell(alg, r, p, n):
    """``(numerator, denominator)`` subspaces of E_r^{p, n-p} inside C^n."""
    pre = pre_filtration(alg, p + r, n)
    fp = filtration_subspace(alg, p, n)
    num = linalg.intersect(fp, pre)
    den = linalg.sum_(
        linalg.intersect(filtration_subspace(alg, p + 1, n), pre),
        linalg.intersect(_image_of(alg, p - r + 1, n), fp),
    )
    return num, den


def cell_dim(alg, r, p, q):
    num, den = _cell(alg, r, p, p + q)
    return linalg.quotient_dim(num, den)


def _dr_rank(alg, r, p, q):
    """Rank of d_r: E_r^{p,q} -> E_r^{p+r, q-r+1}."""
    n = p + q
    num, _ = _cell(alg, r, p, n)
    tnum, tden = _cell(alg, r, p + r, n + 1)
    imgs = [differential(Cochain.from_vector(alg, n, v)).to_vector() for v in num.vectors]
    image = linalg.sum_(Subspace.span(imgs, tden.ambient_dim), tden)
    if not tnum.contains_subspace(image):
        raise ConvergenceViolation("d_r leaves its target page at (%d, %d), r=%d" % (p, q, r))
    return image.dim - tden.dim


@dataclass
class SpectralPage:
    r: int
    table: dict = _field(default_factory=dict)
    d_r_ranks: dict = _field(default_factory=dict)
    stabilized: bool = False

    def row(self, q):
        return [self.table[(p, q)] for p in sorted(p for p, qq in self.table if qq == q)]

    def column(self, p):
        return [self.table[(p, q)] for q in sorted(q for pp, q in self.table if pp == p)]

    def to_json(self):
        cells = [{"p": p, "q": q, "dim": self.table[(p, q)], "dr_rank": self.d_r_ranks.get((p, q), 0)}
                 for p, q in sorted(self.table)]
        return {"r": self.r, "cells": cells, "stabilized": self.stabilized}

    @classmethod
    def from_json(cls, data):
        table = {(c["p"], c["q"]): c["dim"] for c in data["cells"]}
        ranks = {(c["p"], c["q"]): c["dr_rank"] for c in data["cells"]}
        return cls(data["r"], table, ranks, data["stabilized"])


def _window(total_max):
    return [(p, n - p) for n in range(total_max + 1) for p in range(n + 1)]


def _table(alg, r, total_max):
    return {(p, q): cell_dim(alg, r, p, q) for p, q in _window(total_max)}


def infinity_table(alg, total_max):
    """E_infinity on the window: the page index total_max + 2 is past every nonzero d_r."""
    return _table(alg, total_max + 2, total_max)


def page_dims(alg, r, total_max):
    """E_r^{p,q} for p, q >= 0 and p + q <= total_max, with the ranks of d_r out of each cell."""
    table = _table(alg, r, total_max)
    ranks = {(p, q): _dr_rank(alg, r, p, q) for p, q in _window(total_max)}
    return SpectralPage(r, table, ranks, table == infinity_table(alg, total_max))


@lru_cache(maxsize=None)
def lie_cohomology_dims(alg, q_max):
    """Dimensions of H^q(A_Lie) with trivial coefficients, from the CE complex on antisymmetric forms."""
    dim = alg.dim
    ranks = []
    for q in range(q_max + 1):
        subsets = list(itertools.combinations(range(dim), q))
        targets = {s: i for i, s in enumerate(itertools.combinations(range(dim), q + 1))}
        cols = []
        for s in subsets:
            form = antisymmetrize(Cochain._raw(alg, q, {s: 1})) if q else Cochain._raw(alg, 0, {(): 1})
            img = ce_differential(form)
            cols.append({targets[k]: c for k, c in img.coeffs.items() if k in targets})
        ranks.append(len(subsets) - kernel_of_columns(cols, len(subsets)).dim)
    out = []
    for q in range(q_max + 1):
        size = len(list(itertools.combinations(range(dim), q)))
        out.append(size - ranks[q] - (ranks[q - 1] if q else 0))
    return out


def convergence_check(alg, total_max):
    """Iterate pages until they agree with E_infinity and check it is K in bidegree (0, 0)."""
    if not alg.is_unital:
        raise NoUnit("convergence to K needs a unital algebra")
    final = infinity_table(alg, total_max)
    pages = [_table(alg, r, total_max) for r in range(total_max + 3)]
    stable = {}
    for cell in final:
        r0 = len(pages) - 1
        while r0 > 0 and pages[r0 - 1][cell] == final[cell]:
            r0 -= 1
        stable[cell] = r0
    bad = {c: v for c, v in final.items() if v != (1 if c == (0, 0) else 0)}
    report = {
        "algebra": alg.ident,
        "total_max": total_max,
        "E_infinity": {"%d,%d" % c: v for c, v in sorted(final.items())},
        "stabilization_page": {"%d,%d" % c: v for c, v in sorted(stable.items())},
        "holds": not bad,
    }
    if bad:
        raise ConvergenceViolation("E_infinity is not K concentrated in (0,0): %s" % bad)
    return report
