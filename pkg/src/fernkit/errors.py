"""Exception hierarchy shared by every fernkit module."""


class FernkitError(Exception):
    """Base class; the CLI turns these into structured error objects."""

    kind = "error"


class DimensionError(FernkitError, ValueError):
    kind = "dimension"


class InvertibilityError(FernkitError, ValueError):
    kind = "invertibility"


class DomainError(FernkitError, ValueError):
    kind = "domain"


class ValidationError(FernkitError, ValueError):
    kind = "validation"


class UnsupportedError(FernkitError, NotImplementedError):
    kind = "unsupported"


class PreconditionError(FernkitError, ValueError):
    kind = "precondition"


class SchemaError(FernkitError, ValueError):
    """Malformed JSON input. ``field`` names the offending key path."""

    kind = "schema"

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line


class GeneratorExhausted(FernkitError, RuntimeError):
    kind = "generator_exhausted"
