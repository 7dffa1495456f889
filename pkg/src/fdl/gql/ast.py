"""Query AST dataclasses. All nodes are frozen so structural equality works."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union


# -- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    value: Union[str, int, float, bool]


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Prop:
    var: str
    name: str


@dataclass(frozen=True)
class Cmp:
    op: str  # one of = != < <= > >=
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["Expr", ...]


Expr = Union[Literal, Param, Var, Prop, Cmp, And, Or, Not, Call]

# Built-in functions and their arities.
FUNCTIONS = {
    "distance": 2,
    "point": 2,
    "opens_during": 2,
    "lower": 1,
    "contains": 2,
}


# -- patterns ---------------------------------------------------------------

class EdgeDir(Enum):
    LEFT_TO_RIGHT = "->"
    RIGHT_TO_LEFT = "<-"


@dataclass(frozen=True)
class NodePattern:
    var: str
    label: Optional[str] = None


@dataclass(frozen=True)
class EdgePattern:
    rel_type: Optional[str]
    direction: EdgeDir


@dataclass(frozen=True)
class PathPattern:
    """Alternating nodes and edges; always one more node than edges."""

    nodes: tuple[NodePattern, ...]
    edges: tuple[EdgePattern, ...]

    def variables(self) -> list[str]:
        """Variable names in first-occurrence order."""
        seen: list[str] = []
        for node in self.nodes:
            if node.var not in seen:
                seen.append(node.var)
        return seen


# -- query ------------------------------------------------------------------

@dataclass(frozen=True)
class Agg:
    """Aggregate return item; only count is supported. arg None means count(*)."""

    fn: str
    arg: Optional[str]


@dataclass(frozen=True)
class ExprItem:
    expr: Expr


ReturnItem = Union[Agg, ExprItem]


@dataclass(frozen=True)
class OrderKey:
    expr: Expr
    descending: bool = False


@dataclass(frozen=True)
class QueryAst:
    patterns: tuple[PathPattern, ...]
    where: Optional[Expr]
    returns: tuple[ReturnItem, ...]
    order: tuple[OrderKey, ...] = ()
    limit: Optional[int] = None

    def bound_variables(self) -> list[str]:
        seen: list[str] = []
        for pattern in self.patterns:
            for var in pattern.variables():
                if var not in seen:
                    seen.append(var)
        return seen

    def has_aggregates(self) -> bool:
        return any(isinstance(item, Agg) for item in self.returns)


def walk_expr(expr: Expr):
    """Yield every node of an expression tree, preorder."""
    yield expr
    if isinstance(expr, Cmp):
        yield from walk_expr(expr.left)
        yield from walk_expr(expr.right)
    elif isinstance(expr, (And, Or)):
        yield from walk_expr(expr.left)
        yield from walk_expr(expr.right)
    elif isinstance(expr, Not):
        yield from walk_expr(expr.operand)
    elif isinstance(expr, Call):
        for arg in expr.args:
            yield from walk_expr(arg)


def query_parameters(ast: QueryAst) -> set[str]:
    """Names of all $parameters referenced anywhere in the query."""
    names: set[str] = set()
    exprs: list[Expr] = []
    if ast.where is not None:
        exprs.append(ast.where)
    for item in ast.returns:
        if isinstance(item, ExprItem):
            exprs.append(item.expr)
    for key in ast.order:
        exprs.append(key.expr)
    for expr in exprs:
        for node in walk_expr(expr):
            if isinstance(node, Param):
                names.add(node.name)
    return names
