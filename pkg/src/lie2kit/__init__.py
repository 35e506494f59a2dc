"""Exact computations with crossed modules of Lie algebras, strict Lie 2-algebras,
Lie-algebra bibundles, 2-term complexes and finite groupoids.

Every scalar is a :class:`fractions.Fraction`; nothing is approximated.
"""

from .errors import (
    DimensionError,
    InvalidStructureError,
    Lie2KitError,
    MismatchError,
    NotAnIdealError,
    NotClosedError,
    NotComposableError,
    SizeGuardError,
)
from .exactla import Matrix, Subspace
from .liealg import LieAlgebra, LieHom, verify_lie_algebra
from .report import Report

__version__ = "0.1.0"
