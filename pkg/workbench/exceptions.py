"""Error hierarchy of the workbench.

Every error carries the exit code the command line maps it to:
4 for malformed input, 3 for exhausted budgets, 2 for inconclusive answers.
"""

from __future__ import annotations

from typing import Any


class WorkbenchError(Exception):
    exit_code = 4

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        return self.message


class InputError(WorkbenchError):
    exit_code = 4


class TermSyntaxError(InputError):
    def __init__(self, message: str, *, line: int = 1, column: int = 1):
        super().__init__(f'{message} (line {line}, column {column})', line=line, column=column)
        self.line = line
        self.column = column


class UnknownSymbolError(InputError):
    pass


class ArityError(InputError):
    pass


class GrammarValidationError(InputError):
    pass


class PdsValidationError(InputError):
    pass


class OrdinalError(InputError):
    pass


class CertificateUnavailable(InputError):
    pass


class UnsupportedSilentRules(InputError):
    pass


class BudgetExceeded(WorkbenchError):
    exit_code = 3


class EnumerationRefused(BudgetExceeded):
    pass


class OracleInconclusive(WorkbenchError):
    exit_code = 2

    def __init__(self, message: str, *, pair: tuple[Any, Any] | None = None):
        super().__init__(message, pair=pair)
        self.pair = pair
