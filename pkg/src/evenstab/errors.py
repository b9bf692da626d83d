"""Exception types shared across the package.

The CLI maps these onto distinct exit codes (see :mod:`evenstab.cli`):
parse errors -> 2, validation errors -> 3, budget errors -> 4, internal
inconsistencies -> 5.
"""

from __future__ import annotations

__all__ = [
    "EvenstabError",
    "ParseError",
    "ValidationError",
    "BudgetExceededError",
    "InternalInconsistencyError",
]


class EvenstabError(Exception):
    """Base class for package errors."""


class ParseError(EvenstabError):
    """Malformed input file or argument syntax."""


class ValidationError(EvenstabError):
    """Structurally parsed but semantically invalid data (bad matrix,
    non-self-orthogonal rows, invalid partition, ...)."""


class BudgetExceededError(EvenstabError):
    """An exhaustive enumeration would exceed the configured budget."""


class InternalInconsistencyError(EvenstabError):
    """Two independent computations of the same quantity disagree."""
