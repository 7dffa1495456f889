"""Errors raised by the query parser and evaluator."""

from __future__ import annotations


class QueryError(Exception):
    """Base class for query language errors."""


class ParseError(QueryError):
    """Syntax or binding error with the character offset of the problem."""

    def __init__(self, offset: int, expected: str, found: str) -> None:
        self.offset = offset
        self.expected = expected
        self.found = found
        shown = found if found else "end of input"
        super().__init__(f"at offset {offset}: expected {expected}, found {shown}")


class EvalError(QueryError):
    """Base class for evaluation-time errors."""


class MissingParameter(EvalError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"query references ${name} but no such parameter was supplied")


class TypeMismatch(EvalError):
    def __init__(self, detail: str) -> None:
        super().__init__(detail)


class UnknownWindow(EvalError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(
            f"unknown time window {name!r}; defined windows are WEEKEND "
            "(Saturday 00:00 through Sunday 24:00, local clock) and EVENING "
            "(17:00-21:00 on any day)"
        )
