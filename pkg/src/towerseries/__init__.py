"""Lazy derivative towers and formal power series."""

from .coeffs import BINARY64, RATIONAL, rational
from .errors import (
    BadHead,
    BadLinearTerm,
    FieldMismatch,
    NegativeOrder,
    NonProductiveDefinition,
    NonzeroInnerConstant,
    SingularDivision,
    TowerSeriesError,
    Unbounded,
    ZeroDenominator,
)
from .stream import Stream, cons, fix, take

__version__ = "0.1.0"

__all__ = [
    "BINARY64",
    "RATIONAL",
    "rational",
    "BadHead",
    "BadLinearTerm",
    "FieldMismatch",
    "NegativeOrder",
    "NonProductiveDefinition",
    "NonzeroInnerConstant",
    "SingularDivision",
    "TowerSeriesError",
    "Unbounded",
    "ZeroDenominator",
    "Stream",
    "cons",
    "fix",
    "take",
]
