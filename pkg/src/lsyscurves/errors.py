"""Exception hierarchy shared by the whole package."""


class LsysError(Exception):
    """Base class for all errors raised by lsyscurves."""


class DimensionError(LsysError):
    """Mismatched or unsupported point/argument dimensions."""


class AffineError(LsysError):
    """Affine-combination coefficients do not sum to 1."""


class ProjectionError(LsysError):
    """Perspective projection attempted with a (near-)zero third coordinate."""


class WeightError(LsysError):
    """Non-positive control-point weight."""


class StateError(LsysError):
    """Vertex state outside {0, 1, 2}."""


class DomainError(LsysError):
    """A parameter is outside its valid domain."""


class DefinitionError(LsysError):
    """Structurally invalid L-system definition (unknown table, unbound variable, ...)."""


class EvalError(LsysError):
    """Type or binding error while evaluating an expression."""


class ExtractionError(LsysError):
    """Polyline extraction hit a malformed drawable module."""


class ParseError(LsysError):
    """Syntax or validation error in DSL source text, with a location."""

    def __init__(self, message, line, column, token=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        if token:
            where += f" (near {token!r})"
        super().__init__(f"{message} at {where}")
