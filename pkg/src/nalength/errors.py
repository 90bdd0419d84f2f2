"""Exception hierarchy shared by all nalength modules.

Every error carries a short machine-readable ``code`` and the name of
the module that raised it, so CLI reports can surface module-qualified
codes like ``algebra.parse`` without string matching on messages.
"""

from __future__ import annotations


class NalengthError(Exception):
    code = "error"

    def __init__(self, message: str, *, module: str = "nalength", **details):
        super().__init__(message)
        self.message = message
        self.module = module
        self.details = details

    @property
    def qualified_code(self) -> str:
        return f"{self.module}.{self.code}"

    def to_json(self) -> dict:
        return {
            "error": self.qualified_code,
            "message": self.message,
            "details": {k: v for k, v in self.details.items()},
        }


class ParseError(NalengthError):
    code = "parse"


class ValidationError(NalengthError):
    code = "invalid"


class DimensionMismatch(ValidationError):
    code = "dimension-mismatch"


class PreconditionError(NalengthError):
    code = "precondition"


class NotGeneratingError(NalengthError):
    """Raised when an operation requires a generating set and the given
    set only generates a proper subalgebra (its dimension is attached)."""

    code = "not-generating"

    def __init__(self, message: str, *, generated_dim: int, **kw):
        super().__init__(message, generated_dim=generated_dim, **kw)
        self.generated_dim = generated_dim


class ResourceBudgetError(NalengthError):
    code = "budget"


class InvariantViolation(NalengthError):
    """A mathematical invariant that must hold by theorem failed.

    This always indicates a bug in the library or an input that violates
    a precondition the caller claimed to satisfy; it is never a normal
    negative result.
    """

    code = "invariant"
