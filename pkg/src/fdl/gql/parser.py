"""Recursive-descent parser for the graph query language.

Tokens carry their character offset in the input, so every ParseError points
at the exact position of the problem. Use of a variable that no pattern binds
is reported at parse time, not evaluation time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .ast import (
    FUNCTIONS,
    Agg,
    And,
    Call,
    Cmp,
    EdgeDir,
    EdgePattern,
    Expr,
    ExprItem,
    Literal,
    NodePattern,
    Not,
    Or,
    OrderKey,
    Param,
    PathPattern,
    QueryAst,
    ReturnItem,
    Prop,
    Var,
)
from .errors import ParseError

KEYWORDS = {
    "MATCH", "WHERE", "RETURN", "ORDER", "BY", "LIMIT",
    "ASC", "DESC", "AND", "OR", "NOT", "TRUE", "FALSE",
}

_PUNCT = ("<-[", "]->", "-[", "]-", "<=", ">=", "!=",
          "(", ")", ",", ":", ".", "=", "<", ">", "*")

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}

_VAR_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT NUMBER STRING PARAM PUNCT EOF
    text: str
    offset: int
    value: object = None


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            start = i
            i += 1
            chars: list[str] = []
            while i < n and text[i] != '"':
                if text[i] == "\\":
                    if i + 1 >= n or text[i + 1] not in _ESCAPES:
                        raise ParseError(i, "a valid escape (\\\" \\\\ \\n \\t \\r)",
                                         text[i:i + 2])
                    chars.append(_ESCAPES[text[i + 1]])
                    i += 2
                else:
                    chars.append(text[i])
                    i += 1
            if i >= n:
                raise ParseError(start, "a closing '\"'", "")
            i += 1
            tokens.append(_Token("STRING", text[start:i], start, "".join(chars)))
            continue
        if ch == "$":
            start = i
            i += 1
            if i >= n or not _is_ident_start(text[i]):
                raise ParseError(start, "a parameter name after '$'", text[start:start + 2])
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            tokens.append(_Token("PARAM", text[start:j], start, text[i:j]))
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            start = i
            j = i + 1 if ch == "-" else i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lexeme = text[start:j]
            value: object = float(lexeme) if is_float else int(lexeme)
            if isinstance(value, float) and not math.isfinite(value):
                raise ParseError(start, "a finite number", lexeme)
            tokens.append(_Token("NUMBER", lexeme, start, value))
            i = j
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], i))
            i = j
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(_Token("PUNCT", punct, i))
                i += len(punct)
                break
        else:
            raise ParseError(i, "a token", ch)
    tokens.append(_Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        # (name, offset) of every variable used outside a pattern, checked
        # against pattern bindings once the whole query is parsed.
        self.var_uses: list[tuple[str, int]] = []

    # -- token helpers ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token.kind == "IDENT" and token.text.upper() == word

    def take_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> None:
        if not self.take_keyword(word):
            token = self.peek()
            raise ParseError(token.offset, f"keyword {word}", token.text)

    def at_punct(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "PUNCT" and token.text == text

    def take_punct(self, text: str) -> bool:
        if self.at_punct(text):
            self.advance()
            return True
        return False

    def expect_punct(self, text: str) -> None:
        if not self.take_punct(text):
            token = self.peek()
            raise ParseError(token.offset, f"'{text}'", token.text)

    def expect_ident(self, what: str) -> _Token:
        token = self.peek()
        if token.kind != "IDENT" or token.text.upper() in KEYWORDS:
            raise ParseError(token.offset, what, token.text)
        return self.advance()

    # -- grammar ------------------------------------------------------------

    def parse_query(self) -> QueryAst:
        self.expect_keyword("MATCH")
        patterns = [self.parse_pattern()]
        while self.take_punct(","):
            patterns.append(self.parse_pattern())
        where = None
        if self.take_keyword("WHERE"):
            where = self.parse_expr()
        self.expect_keyword("RETURN")
        returns = [self.parse_return_item()]
        while self.take_punct(","):
            returns.append(self.parse_return_item())
        order: list[OrderKey] = []
        if self.take_keyword("ORDER"):
            self.expect_keyword("BY")
            order.append(self.parse_order_key())
            while self.take_punct(","):
                order.append(self.parse_order_key())
        limit = None
        if self.take_keyword("LIMIT"):
            token = self.peek()
            if token.kind != "NUMBER" or not isinstance(token.value, int) or token.value < 0:
                raise ParseError(token.offset, "a non-negative integer", token.text)
            self.advance()
            limit = token.value
        token = self.peek()
        if token.kind != "EOF":
            raise ParseError(token.offset, "end of query", token.text)
        ast = QueryAst(
            patterns=tuple(patterns),
            where=where,
            returns=tuple(returns),
            order=tuple(order),
            limit=limit,
        )
        bound = set(ast.bound_variables())
        for name, offset in self.var_uses:
            if name not in bound:
                raise ParseError(offset, "a variable bound by some pattern", name)
        return ast

    def parse_pattern(self) -> PathPattern:
        nodes = [self.parse_node_pattern()]
        edges: list[EdgePattern] = []
        while self.at_punct("-[") or self.at_punct("<-["):
            edges.append(self.parse_edge_pattern())
            nodes.append(self.parse_node_pattern())
        return PathPattern(nodes=tuple(nodes), edges=tuple(edges))

    def parse_node_pattern(self) -> NodePattern:
        self.expect_punct("(")
        token = self.expect_ident("a variable name")
        self._check_var_name(token)
        label = None
        if self.take_punct(":"):
            label = self.expect_ident("a label").text
        self.expect_punct(")")
        return NodePattern(var=token.text, label=label)

    def parse_edge_pattern(self) -> EdgePattern:
        if self.take_punct("-["):
            rel = None
            if self.take_punct(":"):
                rel = self.expect_ident("a relation type").text
            self.expect_punct("]->")
            return EdgePattern(rel_type=rel, direction=EdgeDir.LEFT_TO_RIGHT)
        self.expect_punct("<-[")
        rel = None
        if self.take_punct(":"):
            rel = self.expect_ident("a relation type").text
        self.expect_punct("]-")
        return EdgePattern(rel_type=rel, direction=EdgeDir.RIGHT_TO_LEFT)

    def parse_return_item(self) -> ReturnItem:
        token = self.peek()
        if (token.kind == "IDENT" and token.text.lower() == "count"
                and self.tokens[self.pos + 1].text == "("):
            self.advance()
            self.expect_punct("(")
            if self.take_punct("*"):
                arg = None
            else:
                var = self.expect_ident("a variable or '*' inside count()")
                self._check_var_name(var)
                self.var_uses.append((var.text, var.offset))
                arg = var.text
            self.expect_punct(")")
            return Agg(fn="count", arg=arg)
        return ExprItem(expr=self.parse_expr())

    def parse_order_key(self) -> OrderKey:
        expr = self.parse_expr()
        descending = False
        if self.take_keyword("DESC"):
            descending = True
        else:
            self.take_keyword("ASC")
        return OrderKey(expr=expr, descending=descending)

    # Expressions: OR < AND < NOT < comparison < atom.

    def parse_expr(self) -> Expr:
        expr = self.parse_and()
        while self.take_keyword("OR"):
            expr = Or(expr, self.parse_and())
        return expr

    def parse_and(self) -> Expr:
        expr = self.parse_not()
        while self.take_keyword("AND"):
            expr = And(expr, self.parse_not())
        return expr

    def parse_not(self) -> Expr:
        if self.take_keyword("NOT"):
            return Not(self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        left = self.parse_atom()
        for op in ("<=", ">=", "!=", "=", "<", ">"):
            if self.at_punct(op):
                self.advance()
                return Cmp(op=op, left=left, right=self.parse_atom())
        return left

    def parse_atom(self) -> Expr:
        token = self.peek()
        if token.kind == "NUMBER":
            self.advance()
            return Literal(token.value)
        if token.kind == "STRING":
            self.advance()
            return Literal(token.value)
        if token.kind == "PARAM":
            self.advance()
            return Param(str(token.value))
        if self.take_punct("("):
            expr = self.parse_expr()
            self.expect_punct(")")
            return expr
        if token.kind == "IDENT":
            upper = token.text.upper()
            if upper == "TRUE":
                self.advance()
                return Literal(True)
            if upper == "FALSE":
                self.advance()
                return Literal(False)
            if upper in KEYWORDS:
                raise ParseError(token.offset, "an expression", token.text)
            if self.tokens[self.pos + 1].text == "(":
                return self.parse_call()
            self.advance()
            self._check_var_name(token)
            if self.take_punct("."):
                prop = self.expect_ident("a property name")
                self.var_uses.append((token.text, token.offset))
                return Prop(var=token.text, name=prop.text)
            self.var_uses.append((token.text, token.offset))
            return Var(name=token.text)
        raise ParseError(token.offset, "an expression", token.text)

    def parse_call(self) -> Expr:
        name_token = self.advance()
        fn = name_token.text.lower()
        if fn not in FUNCTIONS:
            raise ParseError(
                name_token.offset,
                "a function name (" + ", ".join(sorted(FUNCTIONS)) + ")",
                name_token.text,
            )
        self.expect_punct("(")
        args = [self.parse_expr()]
        while self.take_punct(","):
            args.append(self.parse_expr())
        self.expect_punct(")")
        arity = FUNCTIONS[fn]
        if len(args) != arity:
            raise ParseError(
                name_token.offset,
                f"{arity} argument(s) to {fn}()",
                name_token.text,
            )
        return Call(fn=fn, args=tuple(args))

    def _check_var_name(self, token: _Token) -> None:
        if not _VAR_RE.fullmatch(token.text):
            raise ParseError(token.offset, "a variable matching [a-z][a-z0-9_]*", token.text)


def parse(text: str) -> QueryAst:
    """Parse a query; raises :class:`ParseError` with the failing offset."""
    return _Parser(text).parse_query()
