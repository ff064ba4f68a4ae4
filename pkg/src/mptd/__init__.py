"""Multiplicity preserving triangular decomposition of two-polynomial systems."""

from mptd.decomp import (
    Decomposition, MultZeroReport, PendingSystem, SignedComponent, TriSet,
    bivariate_decompose, remove_negatives, report_multiplicities, signed_decompose,
    split_contents, triangular_gcd,
)
from mptd.estimator import TriangularDecomposer, check_points, check_system
from mptd.oracle import CrossCheck, OracleError, OracleReport, cross_check, multiplicities_by_shear, sylvester_resultant
from mptd.parse import ParseError, parse_poly, parse_vars
from mptd.polyring import Poly, PolyError, VarOrder, gcd, pseudo_divide_extended
from mptd.prs import CommonFactorError, PrsSequence, prs_extended

__all__ = [
    "CommonFactorError", "CrossCheck", "Decomposition", "MultZeroReport", "OracleError",
    "OracleReport", "ParseError", "PendingSystem", "Poly", "PolyError", "PrsSequence",
    "SignedComponent", "TriSet", "TriangularDecomposer", "VarOrder", "bivariate_decompose",
    "check_points", "check_system", "cross_check", "gcd", "multiplicities_by_shear",
    "parse_poly", "parse_vars", "prs_extended", "pseudo_divide_extended", "remove_negatives",
    "report_multiplicities", "signed_decompose", "split_contents", "sylvester_resultant",
    "triangular_gcd",
]
