"""Exception hierarchy. Every domain error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class CliffordError(Exception):
    code = "error"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def to_json(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.position is not None:
            out["position"] = self.position
        return out


class ParseError(CliffordError):
    code = "parse_error"


class UnknownIdentifier(ParseError):
    code = "unknown_identifier"


class FieldError(CliffordError):
    """Scalar arithmetic failure, e.g. a denominator divisible by p."""

    code = "field_error"


class ArityError(CliffordError):
    code = "arity_mismatch"


class SpecError(CliffordError):
    """An input violates a data invariant (inhomogeneous form, bad degree, ...)."""

    code = "invalid_spec"


class DegreeBoundError(CliffordError):
    code = "degree_bound"


class ResourceError(CliffordError):
    code = "resource_exceeded"


class UnverifiedRepresentation(CliffordError):
    code = "unverified_representation"


class ModuleError(CliffordError):
    code = "invalid_module"
