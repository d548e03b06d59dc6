"""Python grammar backend built on the stdlib ``ast`` parser.

Mapping from ``ast`` objects to tree nodes:

* node_type is the ``ast`` class name ("Module", "Assign", "Name", ...).
* ``expr_context`` markers (Load/Store/Del) are not emitted: they cover no
  source text, and attaching them under ``Name`` would turn every
  identifier into an internal node and hide its lexeme.
* operator-category nodes (Add, And, Not, Eq, ...) are emitted as leaves
  with a zero-length span anchored between their operands, interleaved in
  source order (left op right).
* position-less containers (arguments, comprehension, withitem,
  match_case) take the union of their children's spans.
* function/class names are plain strings in ``ast``; an ``identifier``
  leaf is synthesized for them by scanning the ``def``/``class`` prefix so
  the name participates in value-aware encodings. The scan skips exotic
  spellings (non-ASCII names) rather than guessing.
* every node's final span is widened to cover its children (decorators
  precede the ``def`` keyword in source, so ``ast``'s own spans do not
  nest), and children are stably sorted by span start because ``ast``
  field order is not source order.

The stdlib parser has no error recovery, so trees from this backend never
carry error nodes; malformed input raises ParseFailureError instead.
"""

from __future__ import annotations

import ast
import platform
import re

from ..errors import ParseFailureError
from .tree import Node, ParseTree

_SEP = rb"(?:[ \t\f]|\\\r?\n)+"
_NAME_PREFIX = {
    "FunctionDef": re.compile(rb"^def" + _SEP),
    "AsyncFunctionDef": re.compile(rb"^async" + _SEP + rb"def" + _SEP),
    "ClassDef": re.compile(rb"^class" + _SEP),
}
_NAME_TOKEN = re.compile(rb"[A-Za-z_][A-Za-z0-9_]*")


def _ordered_ast_children(node: ast.AST) -> list[ast.AST]:
    """Children in source order, with operator tokens interleaved."""
    if isinstance(node, ast.BinOp):
        return [node.left, node.op, node.right]
    if isinstance(node, ast.AugAssign):
        return [node.target, node.op, node.value]
    if isinstance(node, ast.UnaryOp):
        return [node.op, node.operand]
    if isinstance(node, ast.BoolOp):
        return [node.values[0], node.op, *node.values[1:]]
    if isinstance(node, ast.Compare):
        out: list[ast.AST] = [node.left]
        for op, comparator in zip(node.ops, node.comparators):
            out.append(op)
            out.append(comparator)
        return out
    return [c for c in ast.iter_child_nodes(node) if not isinstance(c, ast.expr_context)]


class _Rec:
    """Mutable node record used while spans are being resolved."""

    __slots__ = ("node_type", "own_span", "children", "span", "final_id")

    def __init__(self, node_type: str, own_span: tuple[int, int] | None):
        self.node_type = node_type
        self.own_span = own_span
        self.children: list[_Rec] = []
        self.span: tuple[int, int] | None = own_span
        self.final_id = -1


class PythonBackend:
    name = "python"
    version = f"cpython-{platform.python_version()}-ast"

    def parse(self, source: str) -> ParseTree:
        try:
            module = ast.parse(source)
        except (SyntaxError, ValueError, RecursionError, MemoryError) as exc:
            raise ParseFailureError("python", f"{type(exc).__name__}: {exc}") from exc
        if not module.body:
            raise ParseFailureError("python", "source contains no parseable statements")

        source_bytes = source.encode("utf-8")
        line_starts = self._line_starts(source_bytes)
        root = self._build_records(module, source_bytes, line_starts)
        nodes = self._freeze(root)
        return ParseTree.build(nodes, root=0, source=source, language=self.name)

    @staticmethod
    def _line_starts(source_bytes: bytes) -> list[int]:
        starts = [0]
        for i, byte in enumerate(source_bytes):
            if byte == 0x0A:
                starts.append(i + 1)
        return starts

    def _build_records(
        self, module: ast.AST, source_bytes: bytes, line_starts: list[int]
    ) -> _Rec:
        def own_span(node: ast.AST) -> tuple[int, int] | None:
            lineno = getattr(node, "lineno", None)
            end_lineno = getattr(node, "end_lineno", None)
            col = getattr(node, "col_offset", None)
            end_col = getattr(node, "end_col_offset", None)
            if None in (lineno, end_lineno, col, end_col):
                return None
            # ast column offsets are utf-8 byte offsets within the line
            return (line_starts[lineno - 1] + col, line_starts[end_lineno - 1] + end_col)

        # preorder discovery, then resolve spans children-first
        root = _Rec(type(module).__name__, own_span(module))
        order: list[tuple[_Rec, ast.AST]] = [(root, module)]
        stack: list[tuple[_Rec, ast.AST]] = [(root, module)]
        while stack:
            rec, node = stack.pop()
            for child in _ordered_ast_children(node):
                child_rec = _Rec(type(child).__name__, own_span(child))
                rec.children.append(child_rec)
                order.append((child_rec, child))
                stack.append((child_rec, child))

        for rec, node in reversed(order):
            self._resolve(rec, source_bytes)

        # safety net: a span-less child under a parent that was itself
        # span-less at resolve time (not produced by current ast shapes)
        fixup = [root]
        while fixup:
            rec = fixup.pop()
            for child in rec.children:
                if child.span is None:
                    child.span = (rec.span[0], rec.span[0])
            fixup.extend(rec.children)
        return root

    def _resolve(self, rec: _Rec, source_bytes: bytes) -> None:
        """Fix rec.span, anchor span-less children, synthesize name leaves, sort."""
        spans = [c.span for c in rec.children if c.span is not None]
        start_candidates = [s[0] for s in spans]
        end_candidates = [s[1] for s in spans]
        if rec.own_span is not None:
            start_candidates.append(rec.own_span[0])
            end_candidates.append(rec.own_span[1])
        if start_candidates:
            rec.span = (min(start_candidates), max(end_candidates))

        if rec.span is None:
            return  # childless position-less node; the parent anchors it

        name_leaf = self._name_leaf(rec, source_bytes)
        if name_leaf is not None:
            rec.children.append(name_leaf)

        prev_end = rec.span[0]
        pending: list[_Rec] = []
        for child in rec.children:
            if child.span is None:
                pending.append(child)
            else:
                # zero-length anchor just before the next positioned sibling,
                # so operator leaves sort between their operands
                for p in pending:
                    p.span = (child.span[0], child.span[0])
                pending.clear()
                prev_end = child.span[1]
        for p in pending:
            p.span = (prev_end, prev_end)

        rec.children.sort(key=lambda c: c.span)

    def _name_leaf(self, rec: _Rec, source_bytes: bytes) -> _Rec | None:
        prefix = _NAME_PREFIX.get(rec.node_type)
        if prefix is None or rec.own_span is None:
            return None
        head = source_bytes[rec.own_span[0] : rec.own_span[1]]
        m = prefix.match(head)
        if m is None:
            return None
        token = _NAME_TOKEN.match(head, m.end())
        if token is None:
            return None
        start = rec.own_span[0] + token.start()
        leaf = _Rec("identifier", (start, rec.own_span[0] + token.end()))
        return leaf

    @staticmethod
    def _freeze(root: _Rec) -> list[Node]:
        """Assign preorder ids and emit immutable nodes."""
        order: list[_Rec] = []
        stack = [root]
        while stack:
            rec = stack.pop()
            rec.final_id = len(order)
            order.append(rec)
            stack.extend(reversed(rec.children))
        return [
            Node(
                node_type=rec.node_type,
                span=rec.span,  # type: ignore[arg-type]
                children=tuple(c.final_id for c in rec.children),
            )
            for rec in order
        ]
