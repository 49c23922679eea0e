"""Exact enumeration of planar disk configurations by codimension and degree.

Four mutually verifying computation routes: a truncated-series solver
for the defining functional equations (under pluggable codimension-weight
conventions), an independent array recurrence, closed-form multinomials,
and a brute-force diagram oracle for the flat case, plus algebraic and
asymptotic consistency checks over the results.
"""

from .dp import cross_validate, dp_count, dp_table
from .formulas import (asymptotic_estimate, asymptotic_log, asymptotic_ratio,
                       codim1_count, flat_count, fuss_convolution,
                       multinomial, simple_count)
from .oracle import ChordDiagram, enumerate_flat, validate_diagram
from .series import BiSeries, BoxMismatchError
from .solver import (CONVENTIONS, LINEAR, ODD, CodimWeight, SystemSolution,
                     cached_solution, count_configurations, solve_simple,
                     solve_system)
from .tables import CountTable
from .verify import (P_MIN, Q_REFERENCE, R_COEFFS, ZPolynomial,
                     growth_constant, residual_bivariate,
                     route_agreement_document, row_sum_check, run_suite)

__version__ = "0.1.0"

__all__ = [
    "BiSeries", "BoxMismatchError", "ChordDiagram", "CodimWeight",
    "CountTable", "CONVENTIONS", "LINEAR", "ODD", "P_MIN", "Q_REFERENCE",
    "R_COEFFS", "SystemSolution", "ZPolynomial", "asymptotic_estimate",
    "asymptotic_log", "asymptotic_ratio", "cached_solution", "codim1_count",
    "count_configurations", "cross_validate", "dp_count", "dp_table",
    "enumerate_flat", "flat_count", "fuss_convolution", "growth_constant",
    "multinomial", "residual_bivariate", "route_agreement_document",
    "row_sum_check", "run_suite", "simple_count", "solve_simple",
    "solve_system", "validate_diagram",
]
