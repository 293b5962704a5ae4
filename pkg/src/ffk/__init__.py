"""Knot invariants over finite fields: Alexander polynomials, invertible-module counts
and brute-force local systems."""

from .alexander import AlexPoly, alexander_polynomial
from .diagram import Diagram, Handedness, mirror, parse_pd
from .errors import (BudgetExceeded, DegenerateDiagram, FFKError, InconsistentDiagram,
                     InvalidParameter, MalformedNotation, NotStabilized)
from .finitefield import FieldCtx, make_field
from .locsys import enumerate_cocycles, orbifold_count, stable_class_count
from .presentation import dehn_presentation, wirtinger_presentation
from .torsor import GroupSpec, count_torsors, make_group, twisted_relations
from .ztorsion import count_invertible_modules, smith_normal_form

__all__ = [
    "AlexPoly", "BudgetExceeded", "DegenerateDiagram", "Diagram", "FFKError", "FieldCtx",
    "GroupSpec", "Handedness", "InconsistentDiagram", "InvalidParameter", "MalformedNotation",
    "NotStabilized", "alexander_polynomial", "count_invertible_modules", "count_torsors",
    "dehn_presentation", "enumerate_cocycles", "make_field", "make_group", "mirror",
    "orbifold_count", "parse_pd", "smith_normal_form", "stable_class_count",
    "twisted_relations", "wirtinger_presentation",
]
