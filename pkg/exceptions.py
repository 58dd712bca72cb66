"""Exception hierarchy. Each top-level branch maps to one CLI exit code."""
from typing import Optional, Tuple


class QCodesError(Exception):
    """Base class for all library errors."""
    exit_code = 1


class UsageError(QCodesError):
    """Bad invocation or unreadable input."""
    exit_code = 1


class SpecParseError(UsageError):
    """A spec or code file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 path: Optional[str] = None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class MathPreconditionError(QCodesError, ValueError):
    """A mathematical precondition of an operation does not hold."""
    exit_code = 2


class FieldParameterError(MathPreconditionError):
    pass


class FieldMismatchError(MathPreconditionError):
    pass


class SingularBasisError(MathPreconditionError):
    pass


class DimensionMismatchError(MathPreconditionError):
    pass


class DimensionParityError(MathPreconditionError):
    pass


class DependentGeneratorsError(MathPreconditionError):
    pass


class NotSelfOrthogonalError(MathPreconditionError):
    """C is not contained in (C^{p^m})^⊥; `pair` names two offending generator rows."""

    def __init__(self, message: str, pair: Tuple[int, int]):
        self.pair = pair
        super().__init__(message)


class NonAbelianError(MathPreconditionError):
    """Two symplectic generators have a nonzero alternating product."""

    def __init__(self, message: str, pair: Tuple[int, int]):
        self.pair = pair
        super().__init__(message)


class ResourceBoundError(QCodesError, RuntimeError):
    """A configured size bound would be exceeded."""
    exit_code = 3
