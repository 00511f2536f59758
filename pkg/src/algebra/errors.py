"""Excepciones del núcleo algebraico.

Cada excepción tiene un `kind` estable que se usa al serializar el error en el informe JSON.
"""

from typing import Any, Dict, Optional


class FpdlabError(Exception):
    kind = "error"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "message": str(self)}


class DimensionMismatchError(FpdlabError):
    kind = "dimension-mismatch"


class IncompatibleCoefficientsError(FpdlabError):
    kind = "incompatible-coefficients"


class RingMismatchError(FpdlabError):
    kind = "ring-mismatch"


class InvalidInputError(FpdlabError):
    kind = "invalid-input"


class PreconditionViolationError(FpdlabError):
    kind = "precondition-violation"


class IndexOutOfRangeError(FpdlabError):
    kind = "index-out-of-range"


class BudgetExceededError(FpdlabError):
    """Se superó algún límite de recursos. `diagnostic` guarda el estado parcial del cálculo."""

    kind = "budget-exceeded"

    def __init__(self, message: str, diagnostic: Optional[Dict[str, int]] = None):
        super().__init__(message)
        self.diagnostic = dict(diagnostic or {})

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["diagnostic"] = self.diagnostic
        return d


class ScriptSyntaxError(FpdlabError):
    kind = "syntax-error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"línea {line}, columna {column}: {message}")
        self.detail = message
        self.line = line
        self.column = column

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["line"] = self.line
        d["column"] = self.column
        return d


class UnboundNameError(FpdlabError):
    kind = "unbound-name"


class RebindingError(FpdlabError):
    kind = "rebinding"
