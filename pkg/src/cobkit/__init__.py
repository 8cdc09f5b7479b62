"""Exact linking-matrix computations for surgery presentations of 3-cobordisms."""

from __future__ import annotations

from .composition import bullet, compose, identity_presentation, s_invariant
from .linalg import IntMatrix, RatMatrix, determinant, signature_symmetric, smith_normal_form
from .triplet import (
    HomologySummary,
    TripletPresentation,
    classify,
    h1_cobordism,
    h1_filling,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "HomologySummary",
    "IntMatrix",
    "RatMatrix",
    "TripletPresentation",
    "bullet",
    "classify",
    "compose",
    "determinant",
    "h1_cobordism",
    "h1_filling",
    "identity_presentation",
    "s_invariant",
    "signature_symmetric",
    "smith_normal_form",
    "validate",
]
