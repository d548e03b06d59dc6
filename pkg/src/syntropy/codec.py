"""Depth-bounded subtree enumeration and canonical symbol encoding.

Every node of a tree contributes exactly one symbol: the canonical
serialization of the subtree rooted there, cut off ``depth`` levels below
it. Two encodings are supported:

* structural — node types and child ordering only;
* value — additionally, each non-frontier node carries its exact source
  text when it is a leaf, or an internal-node sentinel otherwise.

Nodes sitting exactly at the depth frontier appear as bare types with no
child list and no value slot, so a cut-off node and a true leaf never
collide; the depth-1 case therefore degenerates to the pair
``(type(v), (type(c1), ..., type(ck)))`` with an optional value slot.

The serialization length-prefixes every name and lexeme, so arbitrary
node-type strings and source text cannot forge a collision, and every
symbol decodes back to the shape it came from (:func:`decode_symbol`).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import InvalidNodeError
from .frontend.tree import NodeId, ParseTree

SubtreeSymbol = str

_SENTINEL = "*"  # value slot marker for internal nodes


class EncodingScheme(enum.Enum):
    STRUCT_ONLY = "structural"
    STRUCT_VALUE = "value"

    @classmethod
    def from_name(cls, name: str) -> "EncodingScheme":
        for scheme in cls:
            if scheme.value == name:
                return scheme
        raise ValueError(f"unknown encoding scheme {name!r}")


@dataclass(frozen=True)
class SubtreeMultiset:
    """Symbol -> occurrence count for one code sample."""

    counts: Mapping[SubtreeSymbol, int]
    total: int

    @classmethod
    def from_counts(cls, counts: Mapping[SubtreeSymbol, int]) -> "SubtreeMultiset":
        if any(c < 1 for c in counts.values()):
            raise ValueError("multiset counts must be >= 1")
        return cls(counts=dict(counts), total=sum(counts.values()))

    def __len__(self) -> int:
        return len(self.counts)


def _check_depth(depth: int) -> None:
    if depth < 1:
        raise ValueError(f"depth bound must be >= 1, got {depth}")


def encode_subtree(
    tree: ParseTree, node_id: NodeId, depth: int, scheme: EncodingScheme
) -> SubtreeSymbol:
    """Canonical symbol for the subtree at ``node_id`` cut ``depth`` levels down."""
    _check_depth(depth)
    if not 0 <= node_id < len(tree.nodes):
        raise InvalidNodeError(f"node id {node_id} not in tree of {len(tree.nodes)} nodes")
    parts: list[str] = []
    _write(tree, node_id, depth, scheme, parts)
    return "".join(parts)


def _write(
    tree: ParseTree, nid: NodeId, remaining: int, scheme: EncodingScheme, parts: list[str]
) -> None:
    node = tree.nodes[nid]
    parts.append(f"({len(node.node_type)}:{node.node_type}")
    if remaining > 0:
        if scheme is EncodingScheme.STRUCT_VALUE:
            if node.children:
                parts.append(_SENTINEL)
            else:
                lexeme = tree.lexeme(nid)
                parts.append(f"={len(lexeme)}:{lexeme}")
        parts.append("[")
        for child in node.children:
            _write(tree, child, remaining - 1, scheme, parts)
        parts.append("]")
    parts.append(")")


def extract_symbols(tree: ParseTree, depth: int, scheme: EncodingScheme) -> SubtreeMultiset:
    """One symbol per tree node; total occurrences equal the node count."""
    _check_depth(depth)
    counts: Counter[str] = Counter()
    for nid in range(len(tree.nodes)):
        counts[encode_subtree(tree, nid, depth, scheme)] += 1
    return SubtreeMultiset(counts=dict(counts), total=len(tree.nodes))


def decode_symbol(symbol: SubtreeSymbol, scheme: EncodingScheme):
    """Inverse of :func:`encode_subtree`, as nested tuples.

    Frontier nodes decode to ``(type,)``; interior nodes to
    ``(type, children)`` under the structural scheme and
    ``(type, lexeme_or_None, children)`` under the value scheme, where
    None is the internal-node sentinel.
    """
    shape, pos = _read(symbol, 0, scheme)
    if pos != len(symbol):
        raise ValueError(f"trailing data at offset {pos} in symbol")
    return shape


def _read(symbol: str, pos: int, scheme: EncodingScheme):
    if symbol[pos] != "(":
        raise ValueError(f"expected '(' at offset {pos}")
    pos += 1
    name, pos = _read_field(symbol, pos)
    if symbol[pos] == ")":
        return (name,), pos + 1  # frontier node
    lexeme: str | None = None
    has_value_slot = False
    if symbol[pos] == _SENTINEL:
        has_value_slot = True
        pos += 1
    elif symbol[pos] == "=":
        has_value_slot = True
        lexeme, pos = _read_field(symbol, pos + 1)
    if has_value_slot != (scheme is EncodingScheme.STRUCT_VALUE):
        raise ValueError("symbol does not match the requested encoding scheme")
    if symbol[pos] != "[":
        raise ValueError(f"expected '[' at offset {pos}")
    pos += 1
    children = []
    while symbol[pos] != "]":
        child, pos = _read(symbol, pos, scheme)
        children.append(child)
    pos += 1
    if symbol[pos] != ")":
        raise ValueError(f"expected ')' at offset {pos}")
    if scheme is EncodingScheme.STRUCT_VALUE:
        return (name, lexeme, tuple(children)), pos + 1
    return (name, tuple(children)), pos + 1


def _read_field(symbol: str, pos: int) -> tuple[str, int]:
    colon = symbol.index(":", pos)
    length = int(symbol[pos:colon])
    start = colon + 1
    return symbol[start : start + length], start + length
