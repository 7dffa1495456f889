"""Evaluate parsed queries against a frozen graph.

Semantics: a result row is one assignment of pattern variables to nodes such
that every pattern edge is witnessed by at least one matching graph edge and
the WHERE filter evaluates to true. Comma-separated patterns join on shared
variable names. Rows are deduplicated per assignment (parallel edges do not
multiply rows), grouped when the RETURN clause aggregates, ordered, and cut
to LIMIT.

Missing properties evaluate to null; null never compares equal to anything
and disables a filter the way an unknown value should. Definite kind errors
(e.g. distance over non-geo values) raise :class:`TypeMismatch`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..graph import (
    Direction,
    GeoPoint,
    Graph,
    HoursOfOperation,
    InvalidProperty,
    encode_value,
)
from .ast import (
    Agg,
    And,
    Call,
    Cmp,
    EdgeDir,
    Expr,
    ExprItem,
    Literal,
    Not,
    Or,
    Param,
    PathPattern,
    Prop,
    QueryAst,
    Var,
    query_parameters,
)
from .errors import EvalError, MissingParameter, TypeMismatch, UnknownWindow
from .printer import return_item_text

EARTH_RADIUS_KM = 6371.0

# Named opening windows: day index, start minute, end minute.
WINDOWS: dict[str, tuple[tuple[int, int, int], ...]] = {
    "WEEKEND": ((5, 0, 1440), (6, 0, 1440)),
    "EVENING": tuple((day, 17 * 60, 21 * 60) for day in range(7)),
}


def fn_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle (haversine) distance in kilometers."""
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    sin_dlat = math.sin((lat2 - lat1) / 2.0)
    sin_dlon = math.sin((lon2 - lon1) / 2.0)
    h = sin_dlat * sin_dlat + math.cos(lat1) * math.cos(lat2) * sin_dlon * sin_dlon
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def fn_opens_during(hours: HoursOfOperation, window) -> bool:
    """True iff any stored interval overlaps the window with positive length.

    ``window`` is a named window (case-insensitive) or an explicit iterable
    of (day, start_minute, end_minute) triples.
    """
    if isinstance(window, str):
        intervals = WINDOWS.get(window.upper())
        if intervals is None:
            raise UnknownWindow(window)
    else:
        intervals = tuple(window)
    for day, open_min, close_min in hours.intervals:
        for w_day, w_start, w_end in intervals:
            if day == w_day and max(open_min, w_start) < min(close_min, w_end):
                return True
    return False


# -- value helpers -----------------------------------------------------------

def _value_kind(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "flag"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "text"
    if isinstance(value, GeoPoint):
        return "geo"
    if isinstance(value, HoursOfOperation):
        return "hours"
    if isinstance(value, list):
        return "text_list"
    return type(value).__name__


def _values_equal(a, b) -> bool:
    if a is None or b is None:
        return False
    if _value_kind(a) != _value_kind(b):
        return False
    return a == b


def _compare(op: str, a, b) -> bool:
    if op == "=":
        return _values_equal(a, b)
    if op == "!=":
        if a is None or b is None:
            return False
        return not _values_equal(a, b)
    if a is None or b is None:
        return False
    kind = _value_kind(a)
    if kind != _value_kind(b) or kind not in ("number", "text"):
        return False
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise EvalError(f"unknown comparison operator {op!r}")


def sort_key(value) -> tuple:
    """Total order over mixed result values; null sorts last."""
    if value is None:
        return (9, 0)
    if isinstance(value, bool):
        return (2, int(value))
    if isinstance(value, (int, float)):
        return (0, float(value))
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, GeoPoint):
        return (3, (value.lat, value.lon))
    if isinstance(value, HoursOfOperation):
        return (4, value.intervals)
    if isinstance(value, list):
        return (5, tuple(value))
    return (8, repr(value))


def _hashable(value):
    if isinstance(value, list):
        return ("__list__", tuple(value))
    return value


class _ExprEvaluator:
    def __init__(self, graph: Graph, params: dict) -> None:
        self.graph = graph
        self.params = params

    def eval(self, expr: Expr, env: dict[str, int]):
        if isinstance(expr, Literal):
            return expr.value
        if isinstance(expr, Param):
            return self.params[expr.name]
        if isinstance(expr, Var):
            return env[expr.name]
        if isinstance(expr, Prop):
            return self.graph.node(env[expr.var]).props.get(expr.name)
        if isinstance(expr, Cmp):
            return _compare(expr.op, self.eval(expr.left, env), self.eval(expr.right, env))
        if isinstance(expr, And):
            return self.eval(expr.left, env) is True and self.eval(expr.right, env) is True
        if isinstance(expr, Or):
            return self.eval(expr.left, env) is True or self.eval(expr.right, env) is True
        if isinstance(expr, Not):
            return self.eval(expr.operand, env) is not True
        if isinstance(expr, Call):
            return self._call(expr, env)
        raise EvalError(f"cannot evaluate {expr!r}")

    def _call(self, expr: Call, env: dict[str, int]):
        args = [self.eval(arg, env) for arg in expr.args]
        if any(arg is None for arg in args):
            return None
        fn = expr.fn
        if fn == "distance":
            for arg in args:
                if not isinstance(arg, GeoPoint):
                    raise TypeMismatch(f"distance() needs geo points, got {_value_kind(arg)}")
            return fn_distance(args[0], args[1])
        if fn == "point":
            for arg in args:
                if isinstance(arg, bool) or not isinstance(arg, (int, float)):
                    raise TypeMismatch(f"point() needs numbers, got {_value_kind(arg)}")
            try:
                return GeoPoint(float(args[0]), float(args[1]))
            except InvalidProperty as exc:
                raise TypeMismatch(str(exc)) from exc
        if fn == "opens_during":
            if not isinstance(args[0], HoursOfOperation):
                raise TypeMismatch(f"opens_during() needs hours, got {_value_kind(args[0])}")
            if not isinstance(args[1], str):
                raise TypeMismatch(f"opens_during() needs a window name, got {_value_kind(args[1])}")
            return fn_opens_during(args[0], args[1])
        if fn == "lower":
            if not isinstance(args[0], str):
                raise TypeMismatch(f"lower() needs text, got {_value_kind(args[0])}")
            return args[0].lower()
        if fn == "contains":
            container, item = args
            if not isinstance(item, str):
                raise TypeMismatch(f"contains() needs a text needle, got {_value_kind(item)}")
            if isinstance(container, str):
                return item in container
            if isinstance(container, list):
                return item in container
            raise TypeMismatch(f"contains() needs text or a text list, got {_value_kind(container)}")
        raise EvalError(f"unknown function {fn}()")


# -- pattern matching ---------------------------------------------------------

def _pattern_rows(pattern: PathPattern, graph: Graph) -> tuple[list[str], set[tuple]]:
    """Distinct assignments satisfying one path pattern.

    Returns the pattern's variables (first-occurrence order) and a set of id
    tuples in that order. Seeding uses the label index of the first node;
    each edge step expands along matching graph edges.
    """
    variables = pattern.variables()
    first = pattern.nodes[0]
    seeds = (graph.nodes_with_label(first.label) if first.label is not None
             else list(graph.nodes()))
    partials: list[dict[str, int]] = [{first.var: node.id} for node in seeds]
    for i, edge_pat in enumerate(pattern.edges):
        anchor_var = pattern.nodes[i].var
        node_pat = pattern.nodes[i + 1]
        direction = (Direction.OUT if edge_pat.direction is EdgeDir.LEFT_TO_RIGHT
                     else Direction.IN)
        grown: list[dict[str, int]] = []
        for partial in partials:
            for _, neighbor in graph.neighbors(partial[anchor_var], edge_pat.rel_type,
                                               direction):
                if node_pat.label is not None and node_pat.label not in neighbor.labels:
                    continue
                bound = partial.get(node_pat.var)
                if bound is not None:
                    if bound == neighbor.id:
                        grown.append(dict(partial))
                else:
                    extended = dict(partial)
                    extended[node_pat.var] = neighbor.id
                    grown.append(extended)
        partials = grown
    rows = {tuple(p[v] for v in variables) for p in partials}
    return variables, rows


def _join(tables: list[tuple[list[str], set[tuple]]]) -> tuple[list[str], list[tuple]]:
    """Natural join over shared variable names, hash-joined table by table."""
    joined_vars: list[str] = []
    joined_rows: list[tuple] = [()]
    for variables, rows in tables:
        shared = [v for v in variables if v in joined_vars]
        new_vars = [v for v in variables if v not in joined_vars]
        left_key = [joined_vars.index(v) for v in shared]
        right_key = [variables.index(v) for v in shared]
        new_positions = [variables.index(v) for v in new_vars]
        bucket: dict[tuple, list[tuple]] = {}
        for row in rows:
            bucket.setdefault(tuple(row[i] for i in right_key), []).append(row)
        merged: list[tuple] = []
        for row in joined_rows:
            key = tuple(row[i] for i in left_key)
            for other in bucket.get(key, ()):
                merged.append(row + tuple(other[i] for i in new_positions))
        joined_vars = joined_vars + new_vars
        joined_rows = merged
    return joined_vars, joined_rows


@dataclass(frozen=True)
class ResultTable:
    """Ordered rows under named columns; values are property values,
    node ids, aggregate numbers, or null."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def to_json(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [[None if v is None else encode_value(v) for v in row]
                     for row in self.rows],
        }


def evaluate(ast: QueryAst, graph: Graph, params: Optional[dict] = None) -> ResultTable:
    """Run a parsed query against a frozen graph."""
    if not graph.frozen:
        raise EvalError("queries run against frozen graphs only")
    params = dict(params or {})
    missing = sorted(query_parameters(ast) - params.keys())
    if missing:
        raise MissingParameter(missing[0])

    evaluator = _ExprEvaluator(graph, params)
    variables, joined = _join([_pattern_rows(p, graph) for p in ast.patterns])

    # Deterministic base order: ascending tuple of bound node ids.
    assignments = [dict(zip(variables, row)) for row in sorted(set(joined))]
    if ast.where is not None:
        assignments = [env for env in assignments
                       if evaluator.eval(ast.where, env) is True]

    columns = tuple(return_item_text(item) for item in ast.returns)
    if ast.has_aggregates():
        rows = _aggregate_rows(ast, assignments, evaluator)
    else:
        rows = [tuple(evaluator.eval(item.expr, env) for item in ast.returns)
                for env in assignments]
        rows = _order_rows(ast, rows, assignments, evaluator)
    if ast.limit is not None:
        rows = rows[:ast.limit]
    return ResultTable(columns=columns, rows=tuple(rows))


def _aggregate_rows(ast: QueryAst, assignments: list[dict],
                    evaluator: _ExprEvaluator) -> list[tuple]:
    group_items = [item for item in ast.returns if isinstance(item, ExprItem)]
    groups: dict[tuple, dict] = {}
    for env in assignments:
        values = tuple(evaluator.eval(item.expr, env) for item in group_items)
        key = tuple(_hashable(v) for v in values)
        entry = groups.setdefault(key, {"values": values, "count": 0})
        entry["count"] += 1
    ordered_keys = sorted(groups, key=lambda key: tuple(sort_key(v) for v in key))

    if ast.order:
        # Order keys must be grouping expressions; aggregates cannot be
        # ordering keys in this language.
        key_exprs = [item.expr for item in group_items]
        positions = []
        for order_key in ast.order:
            if order_key.expr not in key_exprs:
                raise EvalError(
                    "ORDER BY in an aggregate query must use one of the "
                    "grouped return expressions")
            positions.append((key_exprs.index(order_key.expr), order_key.descending))
        for index, descending in reversed(positions):
            ordered_keys.sort(key=lambda key: sort_key(groups[key]["values"][index]),
                              reverse=descending)

    rows = []
    for key in ordered_keys:
        entry = groups[key]
        row = []
        group_pos = 0
        for item in ast.returns:
            if isinstance(item, Agg):
                row.append(entry["count"])
            else:
                row.append(entry["values"][group_pos])
                group_pos += 1
        rows.append(tuple(row))
    return rows


def _order_rows(ast: QueryAst, rows: list[tuple], assignments: list[dict],
                evaluator: _ExprEvaluator) -> list[tuple]:
    if not ast.order:
        return rows
    keyed = list(zip(rows, assignments))
    for order_key in reversed(ast.order):
        keyed.sort(key=lambda pair: sort_key(evaluator.eval(order_key.expr, pair[1])),
                   reverse=order_key.descending)
    return [row for row, _ in keyed]
