"""Exact truncated multivariate q-series, a catalog of q-series identities
with machine verification, and partition-statistic oracles."""
from .errors import (
    ExponentOutOfWindow,
    IllFormedMap,
    InvalidBinding,
    InvalidParameters,
    NonTerminating,
    NotInvertible,
    OffsetTooSmall,
    QTruncError,
    RangeTooSmall,
    TableMismatch,
    UnknownVariable,
)
from .series import Mono, TruncatedSeries, Var, VarTable, grading, laurent, poly, qtable

__version__ = "0.1.0"

__all__ = [
    "ExponentOutOfWindow", "IllFormedMap", "InvalidBinding", "InvalidParameters", "Mono",
    "NonTerminating", "NotInvertible", "OffsetTooSmall", "QTruncError", "RangeTooSmall",
    "TableMismatch", "TruncatedSeries", "UnknownVariable", "Var", "VarTable", "grading",
    "laurent", "poly", "qtable",
]
