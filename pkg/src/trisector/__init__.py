"""Exact certification of the topological transition set of a
line-line-circle trisector family, over the rationals.

Modules, bottom up: ``polyring`` (sparse rational polynomials, term orders,
univariate tools), ``groebner`` (Buchberger and ideal operations),
``family`` (the two-surface system at a parameter point), ``infinity``
(the point at infinity and its branches), ``pipeline`` (walls, chambers,
report), ``benchmark`` (three-line control cases) and ``cli``.
"""

from .family import ParameterPoint, build_trisector, certify_affine_smooth
from .groebner import BudgetExceeded, Ideal, buchberger
from .infinity import classify_branches, tangent_form
from .pipeline import CertificationReport, assemble_transition_report
from .polyring import Polynomial, VarContext, rational, ring

__all__ = [
    "BudgetExceeded",
    "CertificationReport",
    "Ideal",
    "ParameterPoint",
    "Polynomial",
    "VarContext",
    "assemble_transition_report",
    "buchberger",
    "build_trisector",
    "certify_affine_smooth",
    "classify_branches",
    "rational",
    "ring",
    "tangent_form",
]
