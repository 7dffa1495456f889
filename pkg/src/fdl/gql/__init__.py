"""Graph query language: parser, canonical printer, and evaluator.

The grammar is documented in ``docs/query-language.md``. The language covers
node/edge patterns with labels and relation types, WHERE filters with the
built-in functions (distance, point, opens_during, lower, contains),
RETURN projections including count() aggregates, ORDER BY, and LIMIT.
"""

from .ast import (
    Agg,
    And,
    Call,
    Cmp,
    EdgeDir,
    EdgePattern,
    ExprItem,
    Literal,
    NodePattern,
    Not,
    Or,
    OrderKey,
    Param,
    PathPattern,
    Prop,
    QueryAst,
    Var,
)
from .errors import EvalError, MissingParameter, ParseError, TypeMismatch, UnknownWindow
from .evaluator import ResultTable, evaluate, fn_distance, fn_opens_during
from .parser import parse
from .printer import pretty

__all__ = [
    "Agg", "And", "Call", "Cmp", "EdgeDir", "EdgePattern", "ExprItem",
    "Literal", "NodePattern", "Not", "Or", "OrderKey", "Param", "PathPattern",
    "Prop", "QueryAst", "Var",
    "ParseError", "EvalError", "MissingParameter", "TypeMismatch", "UnknownWindow",
    "ResultTable", "evaluate", "fn_distance", "fn_opens_during",
    "parse", "pretty",
]
