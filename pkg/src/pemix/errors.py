"""Exception hierarchy shared by the library and the command line tools.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies rather than bare ValueError.
"""

from __future__ import annotations

__all__ = [
    "PemixError",
    "InvalidInputError",
    "InsufficientDataError",
]


class PemixError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(PemixError):
    """Input is malformed or violates a precondition (CLI exit code 2)."""


class InsufficientDataError(PemixError):
    """Input is well formed but too short for the request (CLI exit code 3)."""
