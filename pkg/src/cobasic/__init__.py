"""Exact computation of basic cohomology of finite-dimensional associative algebras."""

__version__ = "0.1.0"

from .algebra import Algebra, Element, build_algebra, builtin, direct_sum, field, matrix, upper_triangular
from .cochains import Cochain

__all__ = [
    "Algebra", "Element", "Cochain", "build_algebra", "builtin", "direct_sum",
    "field", "matrix", "upper_triangular", "__version__",
]
