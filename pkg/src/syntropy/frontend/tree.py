"""Language-agnostic parse trees.

A :class:`ParseTree` is a rooted, ordered tree of typed nodes over an
immutable source string. Spans are byte ranges into the UTF-8 encoding of
the source, so lexeme equality is byte equality and no normalization is
applied. Trees are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from ..errors import InvalidNodeError, InvalidTreeError

NodeId = int


@dataclass(frozen=True)
class Node:
    """One tree node: a grammar production name, a byte span, child ids."""

    node_type: str
    span: tuple[int, int]
    children: tuple[NodeId, ...] = ()

    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ParseTree:
    """Immutable parse tree over a retained source string.

    ``has_error_nodes`` is set by backends that recover from malformed
    input by emitting error-sentinel nodes; such trees are usable but
    callers running in strict mode reject them.
    """

    root: NodeId
    nodes: tuple[Node, ...]
    source: str
    language: str = ""
    has_error_nodes: bool = False
    # populated by build(); kept out of comparisons
    _parents: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def build(
        cls,
        nodes: list[Node] | tuple[Node, ...],
        root: NodeId,
        source: str,
        language: str = "",
        has_error_nodes: bool = False,
    ) -> "ParseTree":
        """Validate structural invariants and freeze the tree.

        Checks: at least one node, a single root, every non-root node has
        exactly one parent and is reachable from the root, spans lie within
        the source bytes, and every parent span covers its children's spans.

        Raises:
            InvalidTreeError: if any invariant fails.
        """
        nodes = tuple(nodes)
        n = len(nodes)
        if n < 1:
            raise InvalidTreeError("tree must contain at least one node")
        if not 0 <= root < n:
            raise InvalidTreeError(f"root id {root} out of range for {n} nodes")

        source_len = len(source.encode("utf-8"))
        parents = [-1] * n
        for nid, node in enumerate(nodes):
            start, end = node.span
            if not (0 <= start <= end <= source_len):
                raise InvalidTreeError(
                    f"node {nid} span {node.span} outside source of {source_len} bytes"
                )
            if not node.node_type:
                raise InvalidTreeError(f"node {nid} has an empty node_type")
            for cid in node.children:
                if not 0 <= cid < n:
                    raise InvalidTreeError(f"node {nid} references missing child {cid}")
                if parents[cid] != -1:
                    raise InvalidTreeError(f"node {cid} has more than one parent")
                if cid == root:
                    raise InvalidTreeError("root node may not appear as a child")
                parents[cid] = nid
                cstart, cend = nodes[cid].span
                if cstart < start or cend > end:
                    raise InvalidTreeError(
                        f"child {cid} span {nodes[cid].span} escapes parent span {node.span}"
                    )

        # reachability doubles as the acyclicity check: n reachable nodes
        # with unique parents cannot contain a cycle
        seen = 0
        stack = [root]
        visited = bytearray(n)
        while stack:
            nid = stack.pop()
            if visited[nid]:
                raise InvalidTreeError(f"node {nid} visited twice; tree contains a cycle")
            visited[nid] = 1
            seen += 1
            stack.extend(nodes[nid].children)
        if seen != n:
            raise InvalidTreeError(f"only {seen} of {n} nodes reachable from root")

        return cls(
            root=root,
            nodes=nodes,
            source=source,
            language=language,
            has_error_nodes=has_error_nodes,
            _parents=tuple(parents),
        )

    @cached_property
    def source_bytes(self) -> bytes:
        return self.source.encode("utf-8")

    def node(self, nid: NodeId) -> Node:
        if not 0 <= nid < len(self.nodes):
            raise InvalidNodeError(f"node id {nid} not in tree of {len(self.nodes)} nodes")
        return self.nodes[nid]

    def lexeme(self, nid: NodeId) -> str:
        """Exact source text covered by the node's byte span."""
        start, end = self.node(nid).span
        return self.source_bytes[start:end].decode("utf-8")

    def parent(self, nid: NodeId) -> NodeId | None:
        self.node(nid)
        pid = self._parents[nid]
        return None if pid < 0 else pid

    def preorder(self) -> Iterator[NodeId]:
        """Depth-first, children in stored order; iterative for deep trees."""
        stack = [self.root]
        while stack:
            nid = stack.pop()
            yield nid
            stack.extend(reversed(self.nodes[nid].children))

    def __len__(self) -> int:
        return len(self.nodes)


def node_count(tree: ParseTree) -> int:
    """Number of nodes reachable from the root (all of them, by construction)."""
    return len(tree.nodes)
