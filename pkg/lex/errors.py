from __future__ import annotations


class LexError(ValueError):
    """Base class for every domain error; the CLI maps it to exit status 2."""


class WordError(LexError):
    pass


class BudgetExceeded(LexError):
    pass


class UnsupportedMethod(LexError):
    pass


class CodeError(LexError):
    pass


class GlueError(LexError):
    pass


class RepairError(LexError):
    pass
