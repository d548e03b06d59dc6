"""Typed errors raised across the library.

Every failure path surfaces as one of these classes so callers (and the
CLI) can map failures to distinct outcomes instead of matching message
strings.
"""

from __future__ import annotations


class SyntropyError(Exception):
    """Base class for all library errors."""


class UnknownLanguageError(SyntropyError):
    """Raised when a language name has no registered grammar backend."""

    def __init__(self, name: str):
        super().__init__(f"no grammar backend registered for language {name!r}")
        self.name = name


class DuplicateLanguageError(SyntropyError):
    """Raised when a language name is registered twice."""

    def __init__(self, name: str):
        super().__init__(f"language {name!r} is already registered")
        self.name = name


class EmptySourceError(SyntropyError):
    """Raised when an empty source string is handed to a parser."""


class ParseFailureError(SyntropyError):
    """Raised when a backend cannot produce a usable tree.

    Carries the language and a human-readable diagnostic from the backend.
    """

    def __init__(self, language: str, diagnostic: str):
        super().__init__(f"{language}: {diagnostic}")
        self.language = language
        self.diagnostic = diagnostic


class InvalidTreeError(SyntropyError):
    """Raised when a tree under construction violates a structural invariant."""


class InvalidNodeError(SyntropyError):
    """Raised when a node id does not belong to the tree it is used with."""


class EmptyDistributionError(SyntropyError):
    """Raised when a distribution is requested over an empty multiset."""


class SupportMismatchError(SyntropyError):
    """Raised when distributions or multisets disagree about their support."""


class InvalidEpsilonError(SyntropyError):
    """Raised when a non-positive smoothing constant is supplied."""


class UnsmoothedZeroError(SyntropyError):
    """Raised when a directed metric hits q(u) = 0 where p(u) > 0."""


class MetricDomainError(SyntropyError):
    """Raised when metric inputs fall outside the defined domain."""


class InsufficientDataError(SyntropyError):
    """Raised when fewer rows are available than a computation requires."""


class EmptyReportError(SyntropyError):
    """Raised when a dataset run produces no scoreable tasks."""


class DatasetFormatError(SyntropyError):
    """Raised for malformed dataset files; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
