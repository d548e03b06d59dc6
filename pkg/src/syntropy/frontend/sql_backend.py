"""SQL grammar backend: a hand-written lexer and recursive-descent parser.

Covers the core of benchmark-style SQL: SELECT with joins, subqueries,
set operations, GROUP BY / HAVING / ORDER BY / LIMIT, plus INSERT, UPDATE,
DELETE and CREATE TABLE. Keywords and operators become typed leaf nodes
(node_type "SELECT", "=", ...), identifiers/numbers/strings become leaves
with their exact text, and pure punctuation (commas, parens, dots,
semicolons) is consumed without materializing nodes. Comments and
whitespace are lexer trivia and never appear in the tree.

Statements that fail to parse are wrapped in an ``error`` node covering
the skipped token run (through the next semicolon), which flags the tree;
a source whose statements are all error nodes is a parse failure outright.
"""

from __future__ import annotations

from ..errors import ParseFailureError
from .tree import Node, ParseTree

KEYWORDS = frozenset(
    """
    ALL AND AS ASC BETWEEN BY CASE CAST CHECK COLLATE CONSTRAINT CREATE
    CROSS DEFAULT DELETE DESC DISTINCT ELSE END ESCAPE EXCEPT EXISTS FALSE
    FOREIGN FROM FULL GROUP HAVING IF IN INNER INSERT INTERSECT INTO IS
    JOIN KEY LEFT LIKE LIMIT NATURAL NOT NULL OFFSET ON OR ORDER OUTER
    PRIMARY REFERENCES RIGHT SELECT SET TABLE THEN TRUE UNION UNIQUE UPDATE
    USING VALUES WHEN WHERE
    """.split()
)

_TWO_CHAR_OPS = ("||", "<=", ">=", "<>", "!=", "==")
_ONE_CHAR_OPS = "=<>+-*/%"
_PUNCT = "(),.;"

_COMPARISON_OPS = frozenset(["=", "==", "<", ">", "<=", ">=", "<>", "!="])
_JOIN_INTRO = frozenset(["JOIN", "INNER", "LEFT", "RIGHT", "FULL", "CROSS", "NATURAL"])


class _Token:
    __slots__ = ("kind", "text", "start", "end")

    def __init__(self, kind: str, text: str, start: int, end: int):
        self.kind = kind
        self.text = text
        self.start = start
        self.end = end

    @property
    def upper(self) -> str:
        return self.text.upper()

    def __repr__(self) -> str:  # debugging aid
        return f"_Token({self.kind}, {self.text!r})"


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "-" and source.startswith("--", i):
            nl = source.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        if ch == "/" and source.startswith("/*", i):
            close = source.find("*/", i + 2)
            i = n if close < 0 else close + 2
            continue
        if ch == "'":
            j = i + 1
            while j < n:
                if source[j] == "'":
                    if j + 1 < n and source[j + 1] == "'":
                        j += 2
                        continue
                    break
                j += 1
            if j >= n:
                tokens.append(_Token("error", source[i:], i, n))
                break
            tokens.append(_Token("string", source[i : j + 1], i, j + 1))
            i = j + 1
            continue
        if ch in "\"`[":
            close_ch = {"\"": "\"", "`": "`", "[": "]"}[ch]
            j = source.find(close_ch, i + 1)
            if j < 0:
                tokens.append(_Token("error", source[i:], i, n))
                break
            tokens.append(_Token("identifier", source[i : j + 1], i, j + 1))
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == ".":
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            tokens.append(_Token("number", source[i:j], i, j))
            i = j
            continue
        if ch.isalpha() or ch == "_" or ord(ch) >= 0x80:
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_$" or ord(source[j]) >= 0x80):
                j += 1
            text = source[i:j]
            kind = "keyword" if text.upper() in KEYWORDS else "identifier"
            tokens.append(_Token(kind, text, i, j))
            i = j
            continue
        two = source[i : i + 2]
        if two in _TWO_CHAR_OPS:
            tokens.append(_Token("operator", two, i, i + 2))
            i += 2
            continue
        if ch in _ONE_CHAR_OPS:
            tokens.append(_Token("operator", ch, i, i + 1))
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, i, i + 1))
            i += 1
            continue
        tokens.append(_Token("error", ch, i, i + 1))
        i += 1
    return tokens


class _N:
    """Build-time node; spans resolve bottom-up from children."""

    __slots__ = ("type", "children", "span")

    def __init__(self, type_: str, children: list["_N"], span: tuple[int, int] | None = None):
        self.type = type_
        self.children = children
        if span is None:
            span = (children[0].span[0], children[-1].span[1])
        self.span = span


class _ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(message)
        self.pos = pos


_LEAF_TYPE = {"identifier": "identifier", "number": "number", "string": "string", "error": "error"}


def _leaf(token: _Token) -> _N:
    if token.kind == "keyword":
        type_ = token.upper
    elif token.kind in ("operator", "punct"):
        type_ = token.text
    else:
        type_ = _LEAF_TYPE[token.kind]
    return _N(type_, [], (token.start, token.end))


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    # --- token helpers ---------------------------------------------------

    def peek(self, ahead: int = 0) -> _Token | None:
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else None

    def at_kw(self, *names: str, ahead: int = 0) -> bool:
        t = self.peek(ahead)
        return t is not None and t.kind == "keyword" and t.upper in names

    def at_punct(self, text: str, ahead: int = 0) -> bool:
        t = self.peek(ahead)
        return t is not None and t.kind == "punct" and t.text == text

    def at_op(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "operator" and t.text in texts

    def advance(self) -> _Token:
        t = self.peek()
        if t is None:
            raise _ParseError("unexpected end of input", self._pos())
        self.i += 1
        return t

    def take_kw(self, *names: str) -> _N:
        if not self.at_kw(*names):
            raise _ParseError(f"expected {'/'.join(names)}", self._pos())
        return _leaf(self.advance())

    def take_op(self) -> _N:
        return _leaf(self.advance())

    def expect_punct(self, text: str) -> _Token:
        if not self.at_punct(text):
            raise _ParseError(f"expected {text!r}", self._pos())
        return self.advance()

    def take_identifier(self) -> _N:
        t = self.peek()
        if t is None or t.kind != "identifier":
            raise _ParseError("expected identifier", self._pos())
        self.advance()
        return _leaf(t)

    def _pos(self) -> int:
        t = self.peek()
        if t is not None:
            return t.start
        return self.tokens[-1].end if self.tokens else 0

    # --- statements -------------------------------------------------------

    def parse_script(self) -> list[_N]:
        statements: list[_N] = []
        while self.peek() is not None:
            if self.at_punct(";"):
                self.advance()
                continue
            start = self.i
            try:
                statements.append(self.parse_statement())
                if self.peek() is not None and not self.at_punct(";"):
                    raise _ParseError("trailing tokens after statement", self._pos())
            except _ParseError:
                statements.append(self._recover(start))
        return statements

    def _recover(self, start: int) -> _N:
        self.i = start
        swallowed: list[_N] = []
        while self.peek() is not None:
            t = self.advance()
            swallowed.append(_leaf(t))
            if t.kind == "punct" and t.text == ";":
                break
        return _N("error", swallowed)

    def parse_statement(self) -> _N:
        if self.at_kw("SELECT") or self.at_punct("("):
            return self.parse_select_statement()
        if self.at_kw("INSERT"):
            return self.parse_insert()
        if self.at_kw("UPDATE"):
            return self.parse_update()
        if self.at_kw("DELETE"):
            return self.parse_delete()
        if self.at_kw("CREATE"):
            return self.parse_create()
        raise _ParseError("expected a statement", self._pos())

    # --- SELECT -----------------------------------------------------------

    def parse_select_statement(self) -> _N:
        children = [self.parse_select_core()]
        while self.at_kw("UNION", "INTERSECT", "EXCEPT"):
            children.append(self.take_kw("UNION", "INTERSECT", "EXCEPT"))
            if self.at_kw("ALL"):
                children.append(self.take_kw("ALL"))
            children.append(self.parse_select_core())
        if self.at_kw("ORDER"):
            children.append(self.parse_order_by())
        if self.at_kw("LIMIT"):
            children.append(self.parse_limit())
        return _N("select_statement", children)

    def parse_select_core(self) -> _N:
        if self.at_punct("("):
            self.expect_punct("(")
            inner = self.parse_select_statement()
            self.expect_punct(")")
            return _N("subquery", [inner])
        children = [self.take_kw("SELECT")]
        if self.at_kw("DISTINCT", "ALL"):
            children.append(self.take_kw("DISTINCT", "ALL"))
        children.append(self.parse_select_list())
        if self.at_kw("FROM"):
            children.append(self.parse_from())
        if self.at_kw("WHERE"):
            children.append(_N("where_clause", [self.take_kw("WHERE"), self.parse_expr()]))
        if self.at_kw("GROUP"):
            group = [self.take_kw("GROUP"), self.take_kw("BY"), self.parse_expr()]
            while self.at_punct(","):
                self.advance()
                group.append(self.parse_expr())
            children.append(_N("group_by_clause", group))
        if self.at_kw("HAVING"):
            children.append(_N("having_clause", [self.take_kw("HAVING"), self.parse_expr()]))
        return _N("select_core", children)

    def parse_select_list(self) -> _N:
        items = [self.parse_select_item()]
        while self.at_punct(","):
            self.advance()
            items.append(self.parse_select_item())
        return _N("select_list", items)

    def parse_select_item(self) -> _N:
        if self.at_op("*"):
            return _N("select_item", [self.take_op()])
        children = [self.parse_expr()]
        if self.at_kw("AS"):
            children.append(self.take_kw("AS"))
            children.append(self.take_identifier())
        else:
            t = self.peek()
            if t is not None and t.kind == "identifier":
                children.append(self.take_identifier())
        return _N("select_item", children)

    def parse_from(self) -> _N:
        children = [self.take_kw("FROM"), self.parse_table_or_subquery()]
        while True:
            if self.at_punct(","):
                self.advance()
                children.append(self.parse_table_or_subquery())
            elif self.at_kw(*_JOIN_INTRO):
                children.append(self.parse_join())
            else:
                break
        return _N("from_clause", children)

    def parse_join(self) -> _N:
        children: list[_N] = []
        while self.at_kw("NATURAL", "INNER", "LEFT", "RIGHT", "FULL", "OUTER", "CROSS"):
            children.append(self.take_kw("NATURAL", "INNER", "LEFT", "RIGHT", "FULL", "OUTER", "CROSS"))
        children.append(self.take_kw("JOIN"))
        children.append(self.parse_table_or_subquery())
        if self.at_kw("ON"):
            children.append(self.take_kw("ON"))
            children.append(self.parse_expr())
        elif self.at_kw("USING"):
            children.append(self.take_kw("USING"))
            self.expect_punct("(")
            children.append(self.take_identifier())
            while self.at_punct(","):
                self.advance()
                children.append(self.take_identifier())
            self.expect_punct(")")
        return _N("join_clause", children)

    def parse_table_or_subquery(self) -> _N:
        if self.at_punct("("):
            self.expect_punct("(")
            inner = self.parse_select_statement()
            self.expect_punct(")")
            children = [inner]
            node_type = "subquery"
        else:
            children = [self.take_identifier()]
            if self.at_punct("."):
                self.advance()
                children.append(self.take_identifier())
            node_type = "table_ref"
        if self.at_kw("AS"):
            children.append(self.take_kw("AS"))
            children.append(self.take_identifier())
        else:
            t = self.peek()
            if t is not None and t.kind == "identifier":
                children.append(self.take_identifier())
        return _N(node_type, children)

    def parse_order_by(self) -> _N:
        children = [self.take_kw("ORDER"), self.take_kw("BY"), self.parse_ordering_term()]
        while self.at_punct(","):
            self.advance()
            children.append(self.parse_ordering_term())
        return _N("order_by_clause", children)

    def parse_ordering_term(self) -> _N:
        children = [self.parse_expr()]
        if self.at_kw("ASC", "DESC"):
            children.append(self.take_kw("ASC", "DESC"))
        return _N("ordering_term", children)

    def parse_limit(self) -> _N:
        children = [self.take_kw("LIMIT"), self.parse_expr()]
        if self.at_kw("OFFSET"):
            children.append(self.take_kw("OFFSET"))
            children.append(self.parse_expr())
        elif self.at_punct(","):
            self.advance()
            children.append(self.parse_expr())
        return _N("limit_clause", children)

    # --- other statements ---------------------------------------------------

    def parse_insert(self) -> _N:
        children = [self.take_kw("INSERT"), self.take_kw("INTO"), self.parse_table_or_subquery()]
        if self.at_punct("("):
            self.advance()
            children.append(self.parse_column_ref())
            while self.at_punct(","):
                self.advance()
                children.append(self.parse_column_ref())
            self.expect_punct(")")
        if self.at_kw("VALUES"):
            values = [self.take_kw("VALUES"), self.parse_row_value()]
            while self.at_punct(","):
                self.advance()
                values.append(self.parse_row_value())
            children.append(_N("values_clause", values))
        else:
            children.append(self.parse_select_statement())
        return _N("insert_statement", children)

    def parse_row_value(self) -> _N:
        self.expect_punct("(")
        items = [self.parse_expr()]
        while self.at_punct(","):
            self.advance()
            items.append(self.parse_expr())
        self.expect_punct(")")
        return _N("row_value", items)

    def parse_update(self) -> _N:
        children = [self.take_kw("UPDATE"), self.parse_table_or_subquery(), self.take_kw("SET")]
        children.append(self.parse_assignment())
        while self.at_punct(","):
            self.advance()
            children.append(self.parse_assignment())
        if self.at_kw("WHERE"):
            children.append(_N("where_clause", [self.take_kw("WHERE"), self.parse_expr()]))
        return _N("update_statement", children)

    def parse_assignment(self) -> _N:
        target = self.parse_column_ref()
        if not self.at_op("=", "=="):
            raise _ParseError("expected '=' in assignment", self._pos())
        return _N("assignment", [target, self.take_op(), self.parse_expr()])

    def parse_delete(self) -> _N:
        children = [self.take_kw("DELETE"), self.take_kw("FROM"), self.parse_table_or_subquery()]
        if self.at_kw("WHERE"):
            children.append(_N("where_clause", [self.take_kw("WHERE"), self.parse_expr()]))
        return _N("delete_statement", children)

    def parse_create(self) -> _N:
        children = [self.take_kw("CREATE"), self.take_kw("TABLE")]
        if self.at_kw("IF"):
            children.append(self.take_kw("IF"))
            children.append(self.take_kw("NOT"))
            children.append(self.take_kw("EXISTS"))
        children.append(self.parse_table_or_subquery())
        self.expect_punct("(")
        children.append(self.parse_table_element())
        while self.at_punct(","):
            self.advance()
            children.append(self.parse_table_element())
        self.expect_punct(")")
        return _N("create_table_statement", children)

    def parse_table_element(self) -> _N:
        if self.at_kw("PRIMARY", "FOREIGN", "UNIQUE", "CHECK", "CONSTRAINT"):
            return self.parse_table_constraint()
        children = [self.take_identifier()]
        t = self.peek()
        if t is not None and t.kind == "identifier":
            children.append(self.parse_type_name())
        while True:
            if self.at_kw("PRIMARY"):
                children.append(self.take_kw("PRIMARY"))
                children.append(self.take_kw("KEY"))
            elif self.at_kw("NOT"):
                children.append(self.take_kw("NOT"))
                children.append(self.take_kw("NULL"))
            elif self.at_kw("NULL", "UNIQUE"):
                children.append(self.take_kw("NULL", "UNIQUE"))
            elif self.at_kw("DEFAULT"):
                children.append(self.take_kw("DEFAULT"))
                children.append(self.parse_unary())
            elif self.at_kw("REFERENCES"):
                children.append(self.parse_references())
            elif self.at_kw("CHECK"):
                children.append(self.take_kw("CHECK"))
                self.expect_punct("(")
                children.append(self.parse_expr())
                self.expect_punct(")")
            elif self.at_kw("COLLATE"):
                children.append(self.take_kw("COLLATE"))
                children.append(self.take_identifier())
            else:
                break
        return _N("column_def", children)

    def parse_type_name(self) -> _N:
        children = [self.take_identifier()]
        if self.at_punct("("):
            self.advance()
            children.append(self.parse_expr())
            while self.at_punct(","):
                self.advance()
                children.append(self.parse_expr())
            self.expect_punct(")")
        return _N("type_name", children)

    def parse_references(self) -> _N:
        children = [self.take_kw("REFERENCES"), self.take_identifier()]
        if self.at_punct("("):
            self.advance()
            children.append(self.take_identifier())
            while self.at_punct(","):
                self.advance()
                children.append(self.take_identifier())
            self.expect_punct(")")
        return _N("references_clause", children)

    def parse_table_constraint(self) -> _N:
        children: list[_N] = []
        if self.at_kw("CONSTRAINT"):
            children.append(self.take_kw("CONSTRAINT"))
            children.append(self.take_identifier())
        if self.at_kw("PRIMARY"):
            children.append(self.take_kw("PRIMARY"))
            children.append(self.take_kw("KEY"))
        elif self.at_kw("FOREIGN"):
            children.append(self.take_kw("FOREIGN"))
            children.append(self.take_kw("KEY"))
        elif self.at_kw("UNIQUE"):
            children.append(self.take_kw("UNIQUE"))
        elif self.at_kw("CHECK"):
            children.append(self.take_kw("CHECK"))
            self.expect_punct("(")
            children.append(self.parse_expr())
            self.expect_punct(")")
            return _N("table_constraint", children)
        else:
            raise _ParseError("expected a table constraint", self._pos())
        if self.at_punct("("):
            self.advance()
            children.append(self.take_identifier())
            while self.at_punct(","):
                self.advance()
                children.append(self.take_identifier())
            self.expect_punct(")")
        if self.at_kw("REFERENCES"):
            children.append(self.parse_references())
        return _N("table_constraint", children)

    # --- expressions -------------------------------------------------------

    def parse_expr(self) -> _N:
        return self.parse_or()

    def parse_or(self) -> _N:
        node = self.parse_and()
        while self.at_kw("OR"):
            node = _N("binary_expr", [node, self.take_kw("OR"), self.parse_and()])
        return node

    def parse_and(self) -> _N:
        node = self.parse_not()
        while self.at_kw("AND"):
            node = _N("binary_expr", [node, self.take_kw("AND"), self.parse_not()])
        return node

    def parse_not(self) -> _N:
        if self.at_kw("NOT") and not self.at_kw("EXISTS", ahead=1):
            op = self.take_kw("NOT")
            return _N("unary_expr", [op, self.parse_not()])
        return self.parse_predicate()

    def parse_predicate(self) -> _N:
        node = self.parse_additive()
        while True:
            if self.at_op(*_COMPARISON_OPS):
                node = _N("binary_expr", [node, self.take_op(), self.parse_additive()])
                continue
            negated = self.at_kw("NOT")
            look = 1 if negated else 0
            if self.at_kw("IS") and not negated:
                children = [node, self.take_kw("IS")]
                if self.at_kw("NOT"):
                    children.append(self.take_kw("NOT"))
                if self.at_kw("NULL"):
                    children.append(self.take_kw("NULL"))
                else:
                    children.append(self.parse_additive())
                node = _N("is_expr", children)
                continue
            if self.at_kw("LIKE", "GLOB", ahead=look):
                children = [node]
                if negated:
                    children.append(self.take_kw("NOT"))
                children.append(self.take_kw("LIKE", "GLOB"))
                children.append(self.parse_additive())
                if self.at_kw("ESCAPE"):
                    children.append(self.take_kw("ESCAPE"))
                    children.append(self.parse_additive())
                node = _N("like_expr", children)
                continue
            if self.at_kw("IN", ahead=look):
                children = [node]
                if negated:
                    children.append(self.take_kw("NOT"))
                children.append(self.take_kw("IN"))
                self.expect_punct("(")
                if self.at_kw("SELECT"):
                    children.append(_N("subquery", [self.parse_select_statement()]))
                else:
                    items = [self.parse_expr()]
                    while self.at_punct(","):
                        self.advance()
                        items.append(self.parse_expr())
                    children.append(_N("expr_list", items))
                self.expect_punct(")")
                node = _N("in_expr", children)
                continue
            if self.at_kw("BETWEEN", ahead=look):
                children = [node]
                if negated:
                    children.append(self.take_kw("NOT"))
                children.append(self.take_kw("BETWEEN"))
                children.append(self.parse_additive())
                children.append(self.take_kw("AND"))
                children.append(self.parse_additive())
                node = _N("between_expr", children)
                continue
            return node

    def parse_additive(self) -> _N:
        node = self.parse_multiplicative()
        while self.at_op("+", "-", "||"):
            node = _N("binary_expr", [node, self.take_op(), self.parse_multiplicative()])
        return node

    def parse_multiplicative(self) -> _N:
        node = self.parse_unary()
        while self.at_op("*", "/", "%"):
            node = _N("binary_expr", [node, self.take_op(), self.parse_unary()])
        return node

    def parse_unary(self) -> _N:
        if self.at_op("-", "+"):
            return _N("unary_expr", [self.take_op(), self.parse_unary()])
        if self.at_kw("NOT") and self.at_kw("EXISTS", ahead=1):
            return _N("exists_expr", [self.take_kw("NOT"), self.take_kw("EXISTS"), self._exists_body()])
        if self.at_kw("EXISTS"):
            return _N("exists_expr", [self.take_kw("EXISTS"), self._exists_body()])
        return self.parse_primary()

    def _exists_body(self) -> _N:
        self.expect_punct("(")
        inner = self.parse_select_statement()
        self.expect_punct(")")
        return _N("subquery", [inner])

    def parse_primary(self) -> _N:
        t = self.peek()
        if t is None:
            raise _ParseError("unexpected end of expression", self._pos())
        if t.kind in ("number", "string"):
            self.advance()
            return _leaf(t)
        if self.at_kw("NULL", "TRUE", "FALSE"):
            return self.take_kw("NULL", "TRUE", "FALSE")
        if self.at_kw("CASE"):
            return self.parse_case()
        if self.at_kw("CAST"):
            return self.parse_cast()
        if self.at_punct("("):
            self.advance()
            if self.at_kw("SELECT"):
                inner = self.parse_select_statement()
                self.expect_punct(")")
                return _N("subquery", [inner])
            items = [self.parse_expr()]
            while self.at_punct(","):
                self.advance()
                items.append(self.parse_expr())
            self.expect_punct(")")
            if len(items) == 1:
                return items[0]
            return _N("row_value", items)
        if t.kind == "identifier":
            if self.at_punct("(", ahead=1):
                name = self.take_identifier()
                self.expect_punct("(")
                children = [name]
                if not self.at_punct(")"):
                    args: list[_N] = []
                    if self.at_kw("DISTINCT"):
                        args.append(self.take_kw("DISTINCT"))
                    if self.at_op("*"):
                        args.append(self.take_op())
                    else:
                        args.append(self.parse_expr())
                        while self.at_punct(","):
                            self.advance()
                            args.append(self.parse_expr())
                    children.append(_N("argument_list", args))
                self.expect_punct(")")
                return _N("function_call", children)
            return self.parse_column_ref()
        raise _ParseError(f"unexpected token {t.text!r}", self._pos())

    def parse_column_ref(self) -> _N:
        parts = [self.take_identifier()]
        while self.at_punct("."):
            self.advance()
            if self.at_op("*"):
                parts.append(self.take_op())
                break
            parts.append(self.take_identifier())
        return _N("column_ref", parts)

    def parse_case(self) -> _N:
        children = [self.take_kw("CASE")]
        if not self.at_kw("WHEN"):
            children.append(self.parse_expr())
        while self.at_kw("WHEN"):
            when = [self.take_kw("WHEN"), self.parse_expr(), self.take_kw("THEN"), self.parse_expr()]
            children.append(_N("when_clause", when))
        if self.at_kw("ELSE"):
            children.append(self.take_kw("ELSE"))
            children.append(self.parse_expr())
        children.append(self.take_kw("END"))
        return _N("case_expr", children)

    def parse_cast(self) -> _N:
        children = [self.take_kw("CAST")]
        self.expect_punct("(")
        children.append(self.parse_expr())
        children.append(self.take_kw("AS"))
        children.append(self.parse_type_name())
        self.expect_punct(")")
        return _N("cast_expr", children)


class SqlBackend:
    name = "sql"
    version = "syntropy-sql-1.0"

    def parse(self, source: str) -> ParseTree:
        tokens = _lex(source)
        if not tokens:
            raise ParseFailureError("sql", "source contains no tokens")
        statements = _Parser(tokens).parse_script()
        if not statements:
            raise ParseFailureError("sql", "source contains no statements")
        if all(stmt.type == "error" for stmt in statements):
            raise ParseFailureError("sql", "no statement could be parsed")

        byte_at = self._byte_offsets(source)
        root = _N("source_file", statements)
        nodes: list[Node] = []
        has_errors = False
        order: list[_N] = []
        stack = [root]
        ids: dict[int, int] = {}
        while stack:
            n = stack.pop()
            ids[id(n)] = len(order)
            order.append(n)
            stack.extend(reversed(n.children))
        for n in order:
            if n.type == "error":
                has_errors = True
            nodes.append(
                Node(
                    node_type=n.type,
                    span=(byte_at[n.span[0]], byte_at[n.span[1]]),
                    children=tuple(ids[id(c)] for c in n.children),
                )
            )
        return ParseTree.build(
            nodes, root=0, source=source, language=self.name, has_error_nodes=has_errors
        )

    @staticmethod
    def _byte_offsets(source: str) -> list[int]:
        offsets = [0] * (len(source) + 1)
        off = 0
        for idx, ch in enumerate(source):
            offsets[idx] = off
            off += len(ch.encode("utf-8"))
        offsets[len(source)] = off
        return offsets
