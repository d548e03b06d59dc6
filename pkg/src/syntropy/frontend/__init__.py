"""Parsing front end: language-agnostic trees plus grammar backends."""

from .python_backend import PythonBackend
from .registry import (
    GrammarBackend,
    GrammarRegistry,
    LanguageId,
    default_registry,
    parse,
    register_grammar,
)
from .sql_backend import SqlBackend
from .tree import Node, NodeId, ParseTree, node_count

__all__ = [
    "GrammarBackend",
    "GrammarRegistry",
    "LanguageId",
    "Node",
    "NodeId",
    "ParseTree",
    "PythonBackend",
    "SqlBackend",
    "default_registry",
    "node_count",
    "parse",
    "register_grammar",
]
