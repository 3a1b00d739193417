"""Exact integer computations around binomial rings, cobar/bar complexes and cochains of spaces."""

__version__ = "0.1.0"

from .exact_linalg import CochainComplex, CohomologyGroup, ComplexMap, IntMatrix, cohomology, is_quasi_iso
from .binomial import NumPoly, RatPoly

__all__ = [
    "__version__",
    "IntMatrix",
    "CochainComplex",
    "CohomologyGroup",
    "ComplexMap",
    "cohomology",
    "is_quasi_iso",
    "NumPoly",
    "RatPoly",
]
