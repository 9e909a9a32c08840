"""Brute-force constructions used to validate the closed-form eigenmatrices."""

from qschemes.oracle.fields import FiniteField, get_conjugate_field, get_field
from qschemes.oracle.schemes import (
    GrassmannScheme,
    SchemeInstance,
    TabulatedScheme,
    TranslationScheme,
    build_scheme,
    load_scheme,
    save_scheme,
)
from qschemes.oracle.validate import (
    IntersectionMatrixSet,
    OracleReport,
    connectivity,
    intersection_matrices,
    oracle_check,
    spectrum_multiset,
    validate_eigenmatrix,
)

__all__ = [
    "FiniteField",
    "GrassmannScheme",
    "IntersectionMatrixSet",
    "OracleReport",
    "SchemeInstance",
    "TabulatedScheme",
    "TranslationScheme",
    "build_scheme",
    "connectivity",
    "get_conjugate_field",
    "get_field",
    "intersection_matrices",
    "load_scheme",
    "oracle_check",
    "save_scheme",
    "spectrum_multiset",
    "validate_eigenmatrix",
]
