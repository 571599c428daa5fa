"""Exact Groebner-Shirshov bases over parametric coefficient fields."""

from .coeffs import Coefficient, ConstraintSet, NotProvablyNonzero, ParamPoly
from .families import FamilyPresentation, FamilyReport, builtin_catalog, verify_all, verify_family
from .ncpoly import NCPolynomial
from .presentation import Presentation, PresentationError, load_presentation, parse_polynomial, parse_presentation
from .rewrite import ReductionSystem, irr_words, normal_form
from .shirshov import CompletionResult, Limits, certify, complete, interreduce, pbw_check
from .words import Alphabet

__all__ = [
    "Alphabet",
    "Coefficient",
    "CompletionResult",
    "ConstraintSet",
    "FamilyPresentation",
    "FamilyReport",
    "Limits",
    "NCPolynomial",
    "NotProvablyNonzero",
    "ParamPoly",
    "Presentation",
    "PresentationError",
    "ReductionSystem",
    "builtin_catalog",
    "certify",
    "complete",
    "interreduce",
    "irr_words",
    "load_presentation",
    "normal_form",
    "parse_polynomial",
    "parse_presentation",
    "pbw_check",
    "verify_all",
    "verify_family",
]
