"""Canonical query printing: uppercase keywords, single spaces, minimal parens.

``parse(pretty(ast))`` reproduces the AST exactly, and pretty is a fixed
point on its own output.
"""

from __future__ import annotations

from .ast import (
    Agg,
    And,
    Call,
    Cmp,
    EdgeDir,
    EdgePattern,
    Expr,
    Literal,
    NodePattern,
    Not,
    Or,
    Param,
    PathPattern,
    Prop,
    QueryAst,
    ReturnItem,
    Var,
)

_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}

_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_CMP = 4
_PREC_ATOM = 5


def quote_string(value: str) -> str:
    out = []
    for ch in value:
        out.append(_STRING_ESCAPES.get(ch, ch))
    return '"' + "".join(out) + '"'


def format_literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return quote_string(value)
    return repr(value)  # int and float repr both re-parse exactly


def _precedence(expr: Expr) -> int:
    if isinstance(expr, Or):
        return _PREC_OR
    if isinstance(expr, And):
        return _PREC_AND
    if isinstance(expr, Not):
        return _PREC_NOT
    if isinstance(expr, Cmp):
        return _PREC_CMP
    return _PREC_ATOM


def expr_text(expr: Expr) -> str:
    if isinstance(expr, Literal):
        return format_literal(expr.value)
    if isinstance(expr, Param):
        return "$" + expr.name
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Prop):
        return f"{expr.var}.{expr.name}"
    if isinstance(expr, Call):
        return f"{expr.fn}({', '.join(expr_text(a) for a in expr.args)})"
    if isinstance(expr, Not):
        return "NOT " + _child(expr.operand, _PREC_NOT)
    if isinstance(expr, Cmp):
        return (f"{_child(expr.left, _PREC_ATOM)} {expr.op} "
                f"{_child(expr.right, _PREC_ATOM)}")
    if isinstance(expr, And):
        return f"{_child(expr.left, _PREC_AND)} AND {_child(expr.right, _PREC_AND + 1)}"
    if isinstance(expr, Or):
        return f"{_child(expr.left, _PREC_OR)} OR {_child(expr.right, _PREC_OR + 1)}"
    raise TypeError(f"not an expression: {expr!r}")


def _child(expr: Expr, min_prec: int) -> str:
    text = expr_text(expr)
    if _precedence(expr) < min_prec:
        return f"({text})"
    return text


def _node_text(node: NodePattern) -> str:
    if node.label is None:
        return f"({node.var})"
    return f"({node.var}:{node.label})"


def _edge_text(edge: EdgePattern) -> str:
    rel = f":{edge.rel_type}" if edge.rel_type else ""
    if edge.direction is EdgeDir.LEFT_TO_RIGHT:
        return f"-[{rel}]->"
    return f"<-[{rel}]-"


def pattern_text(pattern: PathPattern) -> str:
    parts = [_node_text(pattern.nodes[0])]
    for edge, node in zip(pattern.edges, pattern.nodes[1:]):
        parts.append(_edge_text(edge))
        parts.append(_node_text(node))
    return "".join(parts)


def return_item_text(item: ReturnItem) -> str:
    if isinstance(item, Agg):
        return f"{item.fn}({item.arg if item.arg is not None else '*'})"
    return expr_text(item.expr)


def pretty(ast: QueryAst) -> str:
    """Render the canonical text of a query."""
    parts = ["MATCH ", ", ".join(pattern_text(p) for p in ast.patterns)]
    if ast.where is not None:
        parts.append(" WHERE ")
        parts.append(expr_text(ast.where))
    parts.append(" RETURN ")
    parts.append(", ".join(return_item_text(item) for item in ast.returns))
    if ast.order:
        parts.append(" ORDER BY ")
        parts.append(", ".join(
            f"{expr_text(key.expr)} {'DESC' if key.descending else 'ASC'}"
            for key in ast.order
        ))
    if ast.limit is not None:
        parts.append(f" LIMIT {ast.limit}")
    return "".join(parts)
