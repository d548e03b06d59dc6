"""Grammar backend registry.

Backends are registered per language name before any parsing starts; the
default registry ships with the Python and SQL backends and new grammars
are drop-in (anything with ``name``, ``version`` and ``parse``). Parsing
through the registry applies the shared contract: empty input is rejected
up front, and strict mode refuses trees that contain error-recovery nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from ..errors import (
    DuplicateLanguageError,
    EmptySourceError,
    ParseFailureError,
    UnknownLanguageError,
)
from .python_backend import PythonBackend
from .sql_backend import SqlBackend
from .tree import ParseTree


@runtime_checkable
class GrammarBackend(Protocol):
    name: str
    version: str

    def parse(self, source: str) -> ParseTree: ...


@dataclass(frozen=True)
class LanguageId:
    name: str
    grammar_version: str


class GrammarRegistry:
    def __init__(self) -> None:
        self._backends: dict[str, GrammarBackend] = {}

    def register(self, backend: GrammarBackend) -> LanguageId:
        if not backend.name:
            raise ValueError("backend must declare a non-empty language name")
        if backend.name in self._backends:
            raise DuplicateLanguageError(backend.name)
        self._backends[backend.name] = backend
        return LanguageId(backend.name, backend.version)

    def backend(self, name: str) -> GrammarBackend:
        try:
            return self._backends[name]
        except KeyError:
            raise UnknownLanguageError(name) from None

    def languages(self) -> list[LanguageId]:
        return [
            LanguageId(b.name, b.version)
            for b in sorted(self._backends.values(), key=lambda b: b.name)
        ]

    def grammar_versions(self) -> dict[str, str]:
        return {b.name: b.version for b in self._backends.values()}

    def parse(self, language: str, source: str, strict: bool = False) -> ParseTree:
        backend = self.backend(language)
        if not source:
            raise EmptySourceError(f"empty source for language {language!r}")
        tree = backend.parse(source)
        if strict and tree.has_error_nodes:
            raise ParseFailureError(language, "tree contains error-recovery nodes (strict mode)")
        return tree


_default: GrammarRegistry | None = None


def default_registry() -> GrammarRegistry:
    """Process-wide registry preloaded with the bundled python/sql backends."""
    global _default
    if _default is None:
        registry = GrammarRegistry()
        registry.register(PythonBackend())
        registry.register(SqlBackend())
        _default = registry
    return _default


def register_grammar(backend: GrammarBackend) -> LanguageId:
    return default_registry().register(backend)


def parse(language: str, source: str, strict: bool = False) -> ParseTree:
    return default_registry().parse(language, source, strict=strict)
